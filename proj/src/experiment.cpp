#include "pmc/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pmc/codes.hpp"
#include "pmc/tracker.hpp"

namespace pmc {

NoiseModel Experiment::noise(double p) const {
    NoiseModel m = NoiseModel::uniform(circuit, p, idle);
    m.exempt_meas = exempt_meas;
    m.exempt_step = exempt_step;
    m.idle_qubits = idle_qubits;
    return m;
}

std::size_t Experiment::location_round(const FaultLocation& l) const {
    if (l.kind == LocKind::idle) return std::min(step_round[l.step], n_rounds - 1);
    return meas_round[l.ref];
}

bool Experiment::failed(std::uint64_t logical) const {
    if (failure == FailureRule::any) return logical != 0;
    return 2 * std::popcount(logical) > int(logicals.size());
}

namespace {

const PauliString kLogicalX = PauliString::parse("ZXZII");
const PauliString kLogicalZ = PauliString::parse("YZYII");

void set_padding(Experiment& e) {
    const Circuit& c = e.circuit;
    e.exempt_meas.assign(c.n_meas(), false);
    e.exempt_step.assign(c.n_steps(), false);
    if (!c.has_annotation("padding")) return;
    for (auto i : c.annotation("padding")) e.exempt_meas[i] = true;
    for (std::size_t s = 0; s < c.n_steps(); ++s) {
        bool all = !c.steps()[s].meas.empty();
        for (std::size_t k = 0; k < c.steps()[s].meas.size(); ++k) all &= e.exempt_meas[c.first_index(s) + k];
        e.exempt_step[s] = all;
    }
}

// step_round must be set; wrap measurements close the previous round
void set_rounds(Experiment& e) {
    const Circuit& c = e.circuit;
    e.meas_round.assign(c.n_meas(), 0);
    std::vector<bool> wrap(c.n_meas(), false);
    if (c.has_annotation("wrap"))
        for (auto i : c.annotation("wrap")) wrap[i] = true;
    for (std::size_t i = 0; i < c.n_meas(); ++i) {
        std::size_t r = e.step_round[c.step_of(i)];
        if (wrap[i] && r > 0) --r;
        e.meas_round[i] = std::min(r, e.n_rounds - 1);
    }
}

void sort_detectors(Experiment& e) {
    DetectorSet& d = e.detectors;
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> r(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) r[k] = e.meas_round[d.detectors[k].latest()];
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return r[a] < r[b]; });
    DetectorSet out;
    out.n_meas = d.n_meas;
    out.basis_note = d.basis_note;
    e.det_round.clear();
    for (auto k : order) {
        out.detectors.push_back(d.detectors[k]);
        out.masks.push_back(d.masks[k]);
        e.det_round.push_back(r[k]);
    }
    d = std::move(out);
}

Circuit round_of(RoundKind kind) {
    switch (kind) {
        case RoundKind::five_three_square: return build_53_round(Layout::square);
        case RoundKind::five_three_straightline: return build_53_round(Layout::straightline);
        default: return build_52_round();
    }
}

std::vector<PauliString> patch_gens(int n, int offset, int n_aux) {
    auto gens = CodeSpec::five_qubit(n, offset).stabilizers;
    for (int a = 0; a < n_aux; ++a) gens.push_back(PauliString::single(n, offset + 5 + a, Pauli::Z));
    return gens;
}

Experiment from_round_sequence(std::string name, Circuit c, std::size_t period, std::size_t rounds,
                               IdleConvention idle) {
    Experiment e;
    e.name = std::move(name);
    e.idle = idle;
    e.circuit = std::move(c);
    const Circuit& cc = e.circuit;
    int n = cc.n_qubits();
    e.idle_qubits = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    set_padding(e);
    e.n_rounds = rounds;
    e.step_round.resize(cc.n_steps());
    for (std::size_t s = 0; s < cc.n_steps(); ++s) e.step_round[s] = s / period;
    set_rounds(e);

    TrackSetup setup;
    setup.gens = patch_gens(n, 0, n - 5);
    setup.rows = {embed(kLogicalX, n), embed(kLogicalZ, n)};
    TrackResult tr = track(cc, setup);
    if (!tr.row_alive[0] || !tr.row_alive[1]) throw UsageError(e.name + ": a logical operator was measured");
    e.detectors = detectors_from_relations(tr, true);
    e.logicals.observables = {make_logical("X", tr.rows[0], tr.row_tags[0], tr.n_meas),
                              make_logical("Z", tr.rows[1], tr.row_tags[1], tr.n_meas)};
    sort_detectors(e);
    e.whole_lookup = false;
    e.windowed = true;
    return e;
}

}  // namespace

RoundKind round_kind_from_string(const std::string& s) {
    if (s == "53-square") return RoundKind::five_three_square;
    if (s == "53-straightline") return RoundKind::five_three_straightline;
    if (s == "52") return RoundKind::five_two;
    throw UsageError("unknown round kind '" + s + "'");
}

Experiment make_window_experiment(RoundKind kind, int noisy_rounds, IdleConvention idle) {
    if (noisy_rounds < 1) throw UsageError("need at least one noisy round");
    Circuit round = round_of(kind);
    Circuit c = build_repeated(round, noisy_rounds, Boundary::ideal_padded);
    static const char* names[] = {"53-square", "53-straightline", "52"};
    return from_round_sequence(names[int(kind)], c, round.n_steps(), std::size_t(noisy_rounds) + 2, idle);
}

Experiment make_idle_experiment(RoundKind kind, int T, IdleConvention idle) {
    if (T < 1) throw UsageError("T must be at least 1");
    Experiment e = make_window_experiment(kind, 2 * T, idle);
    e.T = T;
    return e;
}

Experiment make_data_only_experiment() {
    Circuit round = build_53_round(Layout::square);
    // ideal round, idle step, ideal round, closing step
    Circuit seq = build_repeated(round, 1, Boundary::ideal_padded);
    Circuit c(round.n_qubits());
    std::size_t split = round.n_steps();
    for (std::size_t s = 0; s < seq.n_steps(); ++s) {
        if (s >= split && s < 2 * split) continue;
        if (s == 2 * split) c.add_step(Step{});
        c.add_step(seq.steps()[s]);
    }
    std::vector<std::size_t> all(c.n_meas());
    std::iota(all.begin(), all.end(), 0);
    c.annotate("padding", all);
    Experiment e = from_round_sequence("data-only", c, split, 3, IdleConvention::untouched);
    e.exempt_step.assign(c.n_steps(), true);
    e.exempt_step[split] = false;
    e.idle_qubits = kDataMask;
    e.whole_lookup = true;
    e.windowed = false;
    return e;
}

Experiment make_xx_experiment(int T, IdleConvention idle) {
    if (T < 1) throw UsageError("T must be at least 1");
    Experiment e;
    e.name = "xx";
    e.T = T;
    e.idle = idle;
    e.circuit = build_xx_sequence(T);
    const Circuit& c = e.circuit;
    const int n = c.n_qubits();
    e.idle_qubits = (std::uint64_t{1} << n) - 1;
    set_padding(e);

    const std::size_t period = build_53_round(Layout::square).n_steps();
    const std::size_t half = period + 2;
    e.n_rounds = std::size_t(2 * T) + 2;
    e.step_round.resize(c.n_steps());
    for (std::size_t s = 0; s < c.n_steps(); ++s) {
        if (s < period)
            e.step_round[s] = 0;
        else if (s < period + 2 * std::size_t(T) * half)
            e.step_round[s] = 1 + (s - period) / half;
        else if (s < 2 * period + 2 * std::size_t(T) * half)
            e.step_round[s] = e.n_rounds - 1;
        else
            e.step_round[s] = e.n_rounds;
    }
    set_rounds(e);

    TrackSetup setup;
    setup.gens = patch_gens(n, 0, 3);
    for (auto& g : patch_gens(n, 8, 3)) setup.gens.push_back(g);
    PauliString x1 = embed(kLogicalX, n), x2 = embed(kLogicalX, n, 8);
    PauliString z1 = embed(kLogicalZ, n), z2 = embed(kLogicalZ, n, 8);
    setup.rows = {z1 * z2, x1, x1 * x2};
    std::size_t m = c.n_meas();
    std::size_t zxz_step = c.step_of(c.annotation("zxz").front());
    BitVec xx_tag;
    TrackResult tr = track(c, setup, [&](std::size_t s, StabilizerTracker& t) {
        if (s != zxz_step) return;
        auto ex = t.express(t.row(2));
        if (!ex) throw UsageError("xx: seam step does not fix the logical XX");
        xx_tag = *ex ^ t.row_tag(2);
        if (!xx_tag.get(m + 2)) throw UsageError("xx: seam outcome does not involve the logical XX");
    });
    if (!tr.row_alive[0] || !tr.row_alive[1]) throw UsageError("xx: a tracked logical was measured");
    e.detectors = detectors_from_relations(tr, true);
    e.logicals.observables = {make_logical("XX", PauliString(n), xx_tag, m),
                              make_logical("X1", tr.rows[1], tr.row_tags[1], m),
                              make_logical("Z1Z2", tr.rows[0], tr.row_tags[0], m)};
    sort_detectors(e);
    e.whole_lookup = true;
    e.windowed = true;
    return e;
}

namespace {

// Restricts a set of relations to the span of those free of `cols`.
void eliminate_columns(std::vector<BitVec>& rows, const std::vector<std::size_t>& cols) {
    for (auto col : cols) {
        auto piv = std::find_if(rows.begin(), rows.end(), [&](const BitVec& r) { return r.get(col); });
        if (piv == rows.end()) continue;
        BitVec p = *piv;
        rows.erase(piv);
        for (auto& r : rows)
            if (r.get(col)) r ^= p;
    }
}

}  // namespace

Experiment make_closed_experiment(IdleConvention idle) {
    ClosedCircuit cc = build_prep_idle_measure_full();
    Experiment e;
    e.name = "closed";
    e.idle = idle;
    e.circuit = cc.circuit;
    e.rules = cc.rules;
    const Circuit& c = e.circuit;
    const int n = c.n_qubits();
    const std::size_t m = c.n_meas();
    e.idle_qubits = (std::uint64_t{1} << n) - 1;
    e.exempt_meas.assign(m, false);
    e.exempt_step.assign(c.n_steps(), false);
    e.n_rounds = 1;
    e.step_round.assign(c.n_steps(), 0);
    e.meas_round.assign(m, 0);

    const PauliString zbar = embed(kLogicalZ, n);
    const PauliString xbar = embed(kLogicalX, n);
    std::vector<PauliString> reps = CodeSpec::five_qubit(n).logical_z_reps;
    std::array<BitVec, 3> before, check;
    TrackSetup setup;
    setup.rules = cc.rules;
    setup.rows = {PauliString(n)};  // supplies one spare tag bit
    const std::size_t forget_step = cc.stage_step[2] - 1;
    auto express_or_throw = [&](const StabilizerTracker& t, const PauliString& p) {
        auto ex = t.express(p);
        if (!ex) throw UsageError("closed: representative not fixed");
        return *ex;
    };
    TrackResult tr = track(c, setup, [&](std::size_t s, StabilizerTracker& t) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (s + 1 == cc.check_blocks[k][0]) before[k] = express_or_throw(t, reps[k]);
            if (s == cc.check_blocks[k][1]) {
                check[k] = before[k];
                for (auto i : c.annotation("check-" + std::to_string(k + 1))) check[k].flip(i);
            }
        }
        if (s == forget_step) {
            if (!t.express(zbar)) throw UsageError("closed: logical Z not fixed after preparation");
            t.measure(xbar, m);
        }
    });

    // EC detectors: relations supported on stages (3)-(6)
    std::size_t first_ec = c.first_index(cc.stage_step[2]);
    std::vector<BitVec> rows = tr.relations;
    std::vector<std::size_t> bad;
    // the last single-qubit measurement of each auxiliary before stage (3)
    // prepares it for the syndrome rounds and stays usable
    std::vector<bool> keep(m, false);
    for (int q = kAuxA; q < n; ++q) {
        for (std::size_t s = cc.stage_step[2]; s-- > 0;) {
            const auto& ms = c.steps()[s].meas;
            auto it = std::find_if(ms.begin(), ms.end(), [&](const Measurement& x) { return x.support() >> q & 1; });
            if (it == ms.end()) continue;
            if (it->arity == 1) keep[c.first_index(s) + std::size_t(it - ms.begin())] = true;
            break;
        }
    }
    for (std::size_t i = 0; i < first_ec; ++i)
        if (!keep[i]) bad.push_back(i);
    bad.push_back(m);
    eliminate_columns(rows, bad);
    e.detectors.n_meas = m;
    e.detectors.basis_note = "relations within stages (3)-(6), greedy weight reduction";
    for (auto& r : rows)
        if (r.any()) e.detectors.add(r);
    reduce_weight(e.detectors);
    e.det_round.assign(e.detectors.size(), 0);

    e.pre_detectors.n_meas = m;
    e.pre_detectors.basis_note = "logical Z representatives in stage (2)";
    for (auto& k : check) {
        BitVec t = k;
        if (t.get(m)) throw UsageError("closed: check depends on the forgotten logical");
        e.pre_detectors.add(t);
    }
    // relations inside stages (1)-(2), such as repeated auxiliary readouts,
    // also reject: a readout error there mis-assigns a weight-2 by-product
    std::vector<BitVec> prep = tr.relations;
    std::vector<std::size_t> late;
    for (std::size_t i = first_ec; i <= m; ++i) late.push_back(i);
    eliminate_columns(prep, late);
    for (auto& r : prep)
        if (r.any()) e.pre_detectors.add(r.slice(0, m));
    // readout k = sign of its representative just before the block, which
    // picks up outcomes of the syndrome rounds, xor the block outcomes
    std::array<BitVec, 3> readout;
    TrackSetup plain;
    plain.rules = cc.rules;
    track(c, plain, [&](std::size_t s, StabilizerTracker& t) {
        for (std::size_t k = 0; k < 3; ++k)
            if (s + 1 == cc.readout_blocks[k][0]) readout[k] = express_or_throw(t, reps[k]);
    });
    for (std::size_t k = 0; k < 3; ++k) {
        BitVec tag = readout[k].slice(0, m);
        for (auto i : c.annotation("readout-" + std::to_string(k + 1))) tag.flip(i);
        e.logicals.observables.push_back(make_logical("readout-" + std::to_string(k + 1), PauliString(n), tag, m));
    }
    e.failure = FailureRule::majority;
    e.whole_lookup = true;
    e.windowed = false;
    return e;
}

Experiment make_circuit_experiment(const Circuit& c, IdleConvention idle) {
    if (c.n_qubits() > 64) throw UsageError("circuit experiment: at most 64 qubits");
    Experiment e;
    e.name = "file";
    e.circuit = c;
    e.idle = idle;
    e.exempt_meas.assign(c.n_meas(), false);
    e.exempt_step.assign(c.n_steps(), false);
    e.n_rounds = 1;
    e.step_round.assign(c.n_steps(), 0);
    e.meas_round.assign(c.n_meas(), 0);
    // logical bits: signs of the final stabilizer generators
    TrackSetup setup;
    std::vector<PauliString> gens;
    std::vector<BitVec> tags;
    TrackResult tr = track(c, setup, [&](std::size_t s, StabilizerTracker& t) {
        if (s + 1 != c.n_steps()) return;
        for (std::size_t i = 0; i < t.rank(); ++i) {
            gens.push_back(t.generator(i));
            tags.push_back(t.generator_tag(i));
        }
    });
    if (c.n_steps() == 0)
        for (int q = 0; q < c.n_qubits(); ++q) {
            gens.push_back(PauliString::single(c.n_qubits(), q, Pauli::Z));
            tags.push_back(BitVec(0));
        }
    e.detectors = detectors_from_relations(tr);
    for (std::size_t i = 0; i < gens.size(); ++i)
        e.logicals.observables.push_back(make_logical("g" + std::to_string(i), gens[i], tags[i], c.n_meas()));
    e.det_round.assign(e.detectors.size(), 0);
    e.pre_detectors.n_meas = c.n_meas();
    e.whole_lookup = true;
    e.windowed = false;
    return e;
}

Experiment make_experiment(const std::string& circuit, int T, IdleConvention idle) {
    if (circuit == "xx") return make_xx_experiment(T, idle);
    if (circuit == "closed") return make_closed_experiment(idle);
    if (circuit == "data-only") return make_data_only_experiment();
    return make_idle_experiment(round_kind_from_string(circuit), T, idle);
}

}  // namespace pmc
