#include "pmc/faults.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pmc {

NoiseModel NoiseModel::uniform(const Circuit& c, double p, IdleConvention idle) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("NoiseModel: p outside [0,1]");
    NoiseModel m;
    m.p = p;
    m.idle = idle;
    m.exempt_meas.assign(c.n_meas(), false);
    m.exempt_step.assign(c.n_steps(), false);
    return m;
}

std::string kind_name(LocKind k) {
    switch (k) {
        case LocKind::meas1: return "meas1";
        case LocKind::meas2: return "meas2";
        default: return "idle";
    }
}

std::vector<FaultLocation> fault_locations(const Circuit& c, const NoiseModel& m) {
    std::vector<FaultLocation> out;
    std::uint64_t all = c.n_qubits() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << c.n_qubits()) - 1;
    for (std::size_t s = 0; s < c.n_steps(); ++s) {
        std::size_t i0 = c.first_index(s);
        const auto& st = c.steps()[s];
        for (std::size_t k = 0; k < st.meas.size(); ++k) {
            std::size_t i = i0 + k;
            if (i < m.exempt_meas.size() && m.exempt_meas[i]) continue;
            out.push_back({st.meas[k].arity == 1 ? LocKind::meas1 : LocKind::meas2, s, i});
        }
        if (m.idle != IdleConvention::untouched) continue;
        if (s < m.exempt_step.size() && m.exempt_step[s]) continue;
        std::uint64_t idle = all & ~st.support() & m.idle_qubits;
        for (int q = 0; q < c.n_qubits(); ++q)
            if ((idle >> q) & 1) out.push_back({LocKind::idle, s, std::size_t(q)});
    }
    return out;
}

std::size_t variant_count(LocKind k) {
    switch (k) {
        case LocKind::meas1: return 7;
        case LocKind::meas2: return 31;
        default: return 3;
    }
}

ElementaryFault variant(const Circuit& c, const FaultLocation& loc, std::size_t v) {
    if (v >= variant_count(loc.kind)) throw UsageError("variant index out of range");
    int n = c.n_qubits();
    ElementaryFault f{loc, PauliString(n), false};
    if (loc.kind == LocKind::idle) {
        static const Pauli idle_set[3] = {Pauli::X, Pauli::Y, Pauli::Z};
        f.pauli.set(int(loc.ref), idle_set[v]);
        return f;
    }
    const Measurement& m = c.meas(loc.ref);
    std::size_t k = v + 1;  // skip (I, 0)
    f.flip = k & 1;
    f.pauli.set(m.q[0], Pauli((k >> 1) & 3));
    if (loc.kind == LocKind::meas2) f.pauli.set(m.q[1], Pauli((k >> 3) & 3));
    return f;
}

std::vector<ElementaryFault> enumerate_variants(const Circuit& c, const FaultLocation& loc) {
    std::vector<ElementaryFault> out;
    for (std::size_t v = 0; v < variant_count(loc.kind); ++v) out.push_back(variant(c, loc, v));
    return out;
}

FaultConfig sample_config(const Circuit& c, const NoiseModel& m, std::mt19937_64& rng) {
    FaultConfig f;
    if (m.p <= 0.0) return f;
    auto locs = fault_locations(c, m);
    if (m.p >= 1.0) {
        for (auto& l : locs) f.faults.push_back(variant(c, l, std::uniform_int_distribution<std::size_t>(0, variant_count(l.kind) - 1)(rng)));
        return f;
    }
    std::geometric_distribution<std::size_t> gap(m.p);
    for (std::size_t i = gap(rng); i < locs.size(); i += 1 + gap(rng)) {
        auto& l = locs[i];
        f.faults.push_back(variant(c, l, std::uniform_int_distribution<std::size_t>(0, variant_count(l.kind) - 1)(rng)));
    }
    return f;
}

FaultConfig sample_uniform_degree(const Circuit& c, const NoiseModel& m, std::size_t w, std::mt19937_64& rng) {
    auto locs = fault_locations(c, m);
    if (w > locs.size()) throw UsageError("sample_uniform_degree: degree exceeds location count");
    // Floyd's algorithm
    std::set<std::size_t> chosen;
    for (std::size_t j = locs.size() - w; j < locs.size(); ++j) {
        std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    FaultConfig f;
    for (auto i : chosen) {
        auto& l = locs[i];
        f.faults.push_back(variant(c, l, std::uniform_int_distribution<std::size_t>(0, variant_count(l.kind) - 1)(rng)));
    }
    return f;
}

void validate(const Circuit& c, const FaultConfig& f) {
    std::vector<FaultLocation> seen;
    for (auto& e : f.faults) {
        const auto& l = e.loc;
        if (e.pauli.n() != c.n_qubits()) throw UsageError("fault: Pauli length mismatch");
        std::uint64_t sup;
        if (l.kind == LocKind::idle) {
            if (l.step >= c.n_steps() || l.ref >= std::size_t(c.n_qubits()))
                throw UsageError("fault: idle location out of range");
            if (e.flip) throw UsageError("fault: idle fault with readout flip");
            if (e.pauli.is_identity()) throw UsageError("fault: trivial idle fault");
            sup = std::uint64_t{1} << l.ref;
        } else {
            if (l.ref >= c.n_meas()) throw UsageError("fault: measurement index out of range");
            if (c.step_of(l.ref) != l.step) throw UsageError("fault: step does not match measurement");
            int arity = l.kind == LocKind::meas1 ? 1 : 2;
            if (c.meas(l.ref).arity != arity) throw UsageError("fault: kind does not match measurement arity");
            if (e.pauli.is_identity() && !e.flip) throw UsageError("fault: trivial measurement fault");
            sup = c.meas(l.ref).support();
        }
        if (e.pauli.support() & ~sup) throw UsageError("fault: Pauli outside the location support");
        if (std::find(seen.begin(), seen.end(), l) != seen.end()) throw UsageError("fault: repeated location");
        seen.push_back(l);
    }
}

namespace {

template <class Push>
Propagation frame_loop(const Circuit& c, const FaultConfig& f, const std::vector<FrameRule>& rules, Push push) {
    validate(c, f);
    Propagation r{PauliString(c.n_qubits()), BitVec(c.n_meas())};
    if (f.faults.empty()) return r;
    std::vector<std::vector<const ElementaryFault*>> at_meas(c.n_meas()), at_step(c.n_steps());
    std::size_t start = c.n_steps();
    for (auto& e : f.faults) {
        (e.loc.kind == LocKind::idle ? at_step[e.loc.step] : at_meas[e.loc.ref]).push_back(&e);
        start = std::min(start, e.loc.step);
    }
    std::vector<std::vector<const FrameRule*>> rule_at(c.n_steps());
    for (auto& rule : rules) {
        if (rule.step >= c.n_steps()) throw UsageError("frame rule: step out of range");
        rule_at[rule.step].push_back(&rule);
    }
    PauliString& frame = r.residual;
    for (std::size_t s = start; s < c.n_steps(); ++s) {
        std::size_t i0 = c.first_index(s);
        std::size_t nm = c.steps()[s].meas.size();
        for (std::size_t k = 0; k < nm; ++k) {
            std::size_t i = i0 + k;
            PauliString obs = c.observable(i);
            bool fl = frame.anticommutes(obs);
            for (auto* e : at_meas[i]) {
                fl ^= e->flip;
                frame *= e->pauli;
            }
            if (fl) r.flips.set(i);
            push(frame, c.meas(i), obs);
        }
        for (auto* e : at_step[s]) frame *= e->pauli;
        for (auto* rule : rule_at[s]) {
            bool par = false;
            for (auto i : rule->group) par ^= r.flips.get(i);
            if (par) frame *= rule->pauli;
        }
    }
    return r;
}

}  // namespace

Propagation propagate(const Circuit& c, const FaultConfig& f, const std::vector<FrameRule>& rules) {
    return frame_loop(c, f, rules, [](PauliString&, const Measurement&, const PauliString&) {});
}

PauliString pushed_residual(const Circuit& c, const FaultConfig& f, std::uint64_t data_qubits) {
    auto push = [&](PauliString& frame, const Measurement& m, const PauliString& obs) {
        std::uint64_t aux = m.support() & ~data_qubits;
        if (aux == 0 || (aux == m.support() && m.arity == 2)) {
            // data-only or aux-aux measurement: nothing to push
            return;
        }
        if (frame.restricted(aux) == obs.restricted(aux)) frame *= obs;
    };
    auto r = frame_loop(c, f, {}, push);
    return r.residual.restricted(data_qubits);
}

std::string format_fault_config(const FaultConfig& f) {
    std::ostringstream out;
    for (auto& e : f.faults) {
        out << "F " << kind_name(e.loc.kind) << ' ';
        if (e.loc.kind == LocKind::idle)
            out << e.loc.ref << ' ' << e.loc.step;
        else
            out << e.loc.ref;
        out << ' ' << e.pauli.str() << ' ' << int(e.flip) << "\n";
    }
    return out.str();
}

FaultConfig parse_fault_config(const Circuit& c, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    FaultConfig f;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        try {
            if (tok[0] != "F" || tok.size() < 5) throw UsageError("expected 'F <kind> <ref...> <pauli> <flip>'");
            ElementaryFault e;
            std::size_t p;
            if (tok[1] == "idle") {
                if (tok.size() != 6) throw UsageError("expected 'F idle <qubit> <step> <pauli> <flip>'");
                e.loc = {LocKind::idle, std::stoul(tok[3]), std::stoul(tok[2])};
                p = 4;
            } else if (tok[1] == "meas1" || tok[1] == "meas2") {
                if (tok.size() != 5) throw UsageError("expected 'F <kind> <index> <pauli> <flip>'");
                std::size_t i = std::stoul(tok[2]);
                if (i >= c.n_meas()) throw UsageError("measurement index out of range");
                e.loc = {tok[1] == "meas1" ? LocKind::meas1 : LocKind::meas2, c.step_of(i), i};
                p = 3;
            } else {
                throw UsageError("unknown fault kind '" + tok[1] + "'");
            }
            e.pauli = PauliString::parse(tok[p]);
            if (tok[p + 1] != "0" && tok[p + 1] != "1") throw UsageError("flip must be 0 or 1");
            e.flip = tok[p + 1] == "1";
            f.faults.push_back(e);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ParseError(lineno, ex.what());
        }
    }
    validate(c, f);
    return f;
}

}  // namespace pmc
