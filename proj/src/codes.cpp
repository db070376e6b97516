#include "pmc/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pmc/tracker.hpp"

namespace pmc {

const std::array<const char*, 4> kSquareOrder = {"XZZXI", "IXZZX", "ZXIXZ", "XIXZZ"};
const std::array<const char*, 4> kClosedOrder = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};

namespace {

Pauli sigma(Pauli p) {
    switch (p) {
        case Pauli::X: return Pauli::Z;
        case Pauli::Z: return Pauli::Y;
        case Pauli::Y: return Pauli::X;
        default: return Pauli::I;
    }
}

PauliString cyclic_shift(const PauliString& p, int k) {
    PauliString r(p.n());
    for (int q = 0; q < p.n(); ++q) r.set((q + k) % p.n(), p.get(q));
    return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

Circuit without(const Circuit& c, const std::set<std::size_t>& drop) {
    Circuit out(c.n_qubits());
    for (std::size_t s = 0; s < c.n_steps(); ++s) {
        Step st;
        for (std::size_t k = 0; k < c.steps()[s].meas.size(); ++k)
            if (!drop.count(c.first_index(s) + k)) st.meas.push_back(c.steps()[s].meas[k]);
        out.add_step(st);
    }
    return out;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

// Builds sequences of cyclic rounds with ideal padding bookkeeping. A
// round's closing measurements go into the next round's first step, into
// the first of any steps appended after it, or into a final closing step.
struct Sequence {
    Circuit c;
    std::vector<std::size_t> padding, wrap;
    bool open = false;
    bool last_pad = false;
    Step close_step;

    explicit Sequence(int n) : c(n) {}

    void add_round(const Circuit& round, bool pad) {
        std::vector<std::size_t> w, cl;
        if (round.has_annotation("wrap")) w = round.annotation("wrap");
        if (round.has_annotation("close")) cl = round.annotation("close");
        std::set<std::size_t> wset(w.begin(), w.end());
        std::size_t off = c.n_meas();
        if (!open) {
            Circuit trimmed = without(round, wset);
            c.append(trimmed, false);
            for (std::size_t i = off; i < c.n_meas(); ++i)
                if (pad) padding.push_back(i);
        } else {
            c.append(round, false);
            for (std::size_t i = 0; i < round.n_meas(); ++i) {
                bool is_wrap = wset.count(i) > 0;
                if (is_wrap) wrap.push_back(off + i);
                if (is_wrap ? last_pad : pad) padding.push_back(off + i);
            }
        }
        close_step = Step{};
        for (auto i : cl) close_step.meas.push_back(round.meas(i));
        open = !cl.empty();
        last_pad = pad;
    }

    void add_steps(const Circuit& steps, bool pad) {
        std::size_t off = c.n_meas();
        std::size_t k = 0;
        if (open) {
            Step first = close_step;
            first.meas.insert(first.meas.end(), steps.steps()[0].meas.begin(), steps.steps()[0].meas.end());
            c.add_step(first);
            for (std::size_t i = off; i < off + close_step.meas.size(); ++i) {
                wrap.push_back(i);
                if (last_pad) padding.push_back(i);
            }
            for (std::size_t i = off + close_step.meas.size(); i < c.n_meas(); ++i)
                if (pad) padding.push_back(i);
            off = c.n_meas();
            k = 1;
            open = false;
        }
        for (; k < steps.n_steps(); ++k) c.add_step(steps.steps()[k]);
        if (pad)
            for (std::size_t i = off; i < c.n_meas(); ++i) padding.push_back(i);
    }

    void close() {
        if (!open) return;
        std::size_t off = c.n_meas();
        c.add_step(close_step);
        for (std::size_t i = off; i < c.n_meas(); ++i) {
            wrap.push_back(i);
            if (last_pad) padding.push_back(i);
        }
        open = false;
    }

    Circuit finish() {
        std::sort(padding.begin(), padding.end());
        std::sort(wrap.begin(), wrap.end());
        c.annotations().clear();
        if (!padding.empty()) c.annotate("padding", padding);
        if (!wrap.empty()) c.annotate("wrap", wrap);
        return c;
    }
};

struct TrackerRun {
    StabilizerTracker t;
    std::size_t n_meas;
    TrackerRun(int n, std::size_t m, std::size_t v) : t(n, m + v), n_meas(m) {}

    void run_steps(const Circuit& c, std::size_t s0, std::size_t s1) {
        for (std::size_t s = s0; s < s1; ++s)
            for (std::size_t k = 0; k < c.steps()[s].meas.size(); ++k) {
                std::size_t i = c.first_index(s) + k;
                t.measure(c.observable(i), i);
            }
    }
};

std::vector<std::size_t> meas_bits(const BitVec& tag, std::size_t n_meas) {
    std::vector<std::size_t> out;
    for (auto i : tag.ones())
        if (i < n_meas) out.push_back(i);
    return out;
}

// Measurement set whose parity is the value of `p` after circuit c, when
// started from the +1 eigenspace of `gens` with p unknown.
std::vector<std::size_t> outcome_set(const Circuit& c, const std::vector<PauliString>& gens, const PauliString& p) {
    std::size_t m = c.n_meas();
    TrackerRun r(c.n_qubits(), m, 1);
    for (auto& g : gens) r.t.add_generator(g, BitVec(m + 1));
    BitVec vt(m + 1);
    vt.set(m);
    r.t.add_row(p, vt);
    r.run_steps(c, 0, c.n_steps());
    if (!r.t.row_alive(0)) throw UsageError("logical measurement destroys the measured operator");
    auto e = r.t.express(r.t.row(0));
    if (!e) throw UsageError("circuit does not measure the requested operator");
    BitVec tag = *e ^ r.t.row_tag(0);
    if (!tag.get(m)) throw UsageError("outcome set does not fix the requested operator");
    for (auto& g : gens)
        if (!r.t.express(g)) throw UsageError("circuit disturbs the stabilizer group");
    return meas_bits(tag, m);
}

bool in_group(const std::vector<PauliString>& gens, const PauliString& p) {
    std::size_t k = gens.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        PauliString acc(p.n());
        for (std::size_t j = 0; j < k; ++j)
            if ((mask >> j) & 1) acc *= gens[j];
        if (acc == p) return true;
    }
    return false;
}

}  // namespace

PauliString embed(const PauliString& p, int n, int offset) {
    if (offset + p.n() > n) throw UsageError("embed: does not fit");
    PauliString r(n);
    for (int q = 0; q < p.n(); ++q) r.set(q + offset, p.get(q));
    return r;
}

CodeSpec CodeSpec::five_qubit(int n_qubits, int offset, int n_aux) {
    CodeSpec s;
    s.n_aux = n_aux;
    for (auto g : kClosedOrder) s.stabilizers.push_back(embed(PauliString::parse(g), n_qubits, offset));
    PauliString x = PauliString::parse("ZXZII");
    for (int k = 0; k < 5; ++k) s.logical_x_reps.push_back(embed(cyclic_shift(x, k), n_qubits, offset));
    for (auto z : {"YZYII", "YIIYZ", "IIYZY"}) s.logical_z_reps.push_back(embed(PauliString::parse(z), n_qubits, offset));
    return s;
}

void CodeSpec::validate() const {
    for (auto& a : stabilizers)
        for (auto& b : stabilizers)
            if (a.anticommutes(b)) throw UsageError("CodeSpec: generators do not commute");
    for (auto* reps : {&logical_x_reps, &logical_z_reps})
        for (auto& r : *reps)
            for (auto& g : stabilizers)
                if (r.anticommutes(g)) throw UsageError("CodeSpec: representative " + r.str() + " is not logical");
    for (auto& x : logical_x_reps)
        for (auto& z : logical_z_reps)
            if (!x.anticommutes(z)) throw UsageError("CodeSpec: " + x.str() + " commutes with " + z.str());
}

LabelMap patch_labels(int offset) {
    return [offset](const std::string& l) -> int {
        if (l.size() == 1 && l[0] >= '1' && l[0] <= '5') return offset + (l[0] - '1');
        if (l == "A") return offset + kAuxA;
        if (l == "B") return offset + kAuxB;
        if (l == "C") return offset + kAuxC;
        throw UsageError("unknown qubit label '" + l + "'");
    };
}

Circuit parse_block(int n, const std::string& desc, const LabelMap& label) {
    Circuit c(n);
    for (auto& stepdesc : split(desc, '|')) {
        std::istringstream in(stepdesc);
        Step st;
        for (std::string tok; in >> tok;) {
            auto parts = split(tok, '.');
            if (parts.size() > 2) throw UsageError("bad measurement token '" + tok + "'");
            Measurement m;
            m.arity = int(parts.size());
            for (std::size_t k = 0; k < parts.size(); ++k) {
                if (parts[k].size() < 2) throw UsageError("bad measurement token '" + tok + "'");
                m.b[k] = pauli_from_char(parts[k][0]);
                m.q[k] = label(parts[k].substr(1));
            }
            st.meas.push_back(m);
        }
        c.add_step(st);
    }
    return c;
}

Circuit overlay(const Circuit& a, const Circuit& b) {
    if (a.n_qubits() != b.n_qubits()) throw UsageError("overlay: qubit count mismatch");
    Circuit out(a.n_qubits());
    for (std::size_t s = 0; s < std::max(a.n_steps(), b.n_steps()); ++s) {
        Step st;
        if (s < a.n_steps()) st.meas = a.steps()[s].meas;
        if (s < b.n_steps()) st.meas.insert(st.meas.end(), b.steps()[s].meas.begin(), b.steps()[s].meas.end());
        out.add_step(st);
    }
    return out;
}

Circuit cyclic_round(const std::vector<Circuit>& blocks) {
    if (blocks.empty()) throw UsageError("cyclic_round: no blocks");
    Circuit lin = blocks[0];
    for (std::size_t k = 1; k < blocks.size(); ++k) lin.append(blocks[k], true);
    const Step& last = lin.steps().back();
    const Step& first = lin.steps().front();
    if (last.support() & first.support()) throw UsageError("cyclic_round: final step overlaps the first");
    Circuit out(lin.n_qubits());
    Step s0 = last;
    s0.meas.insert(s0.meas.end(), first.meas.begin(), first.meas.end());
    out.add_step(s0);
    for (std::size_t s = 1; s + 1 < lin.n_steps(); ++s) out.add_step(lin.steps()[s]);
    out.annotate("close", range(0, last.meas.size()));
    out.annotate("wrap", range(0, last.meas.size()));
    return out;
}

Circuit square_block(const std::string& stab, int n, int offset) {
    static const std::pair<const char*, const char*> table[] = {
        {"XZZXI", "ZB | XB.X4 ZA XC | XA.X1 ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA XB.Z3 | XC.Z2 XA ZB | ZC"},
        {"IXZZX", "ZB | XB.Z4 ZA XC | XA.X5 ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA XB.Z3 | XC.X2 XA ZB | ZC"},
        {"ZXIXZ", "ZA | XA.Z1 ZB XC | XB.X4 ZC.ZA | ZC.ZB | ZC.ZA | ZC.ZB XA.Z5 | XC.X2 ZA XB | ZC"},
        {"XIXZZ", "ZB | XB.Z4 ZA XC | XA.Z5 ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA XB.X3 | XA.X1 ZB XC | ZA"},
    };
    for (auto& [name, desc] : table)
        if (stab == name) return parse_block(n, desc, patch_labels(offset));
    throw UsageError("no square-layout block for '" + stab + "'");
}

Circuit straightline_block(int shift, int n, int offset) {
    auto base = patch_labels(offset);
    LabelMap shifted = [&](const std::string& l) {
        if (l.size() == 1 && l[0] >= '1' && l[0] <= '5')
            return offset + (l[0] - '1' + shift) % 5;
        return base(l);
    };
    return parse_block(n, "ZA | XA.X1 XC ZB | XB.X4 ZC.ZA | ZC.ZB | ZC.ZA | ZC.ZB XA.Z2 | XB.Z3 ZA XC | ZB", shifted);
}

Circuit build_53_round(Layout layout) {
    std::vector<Circuit> blocks;
    for (int k = 0; k < 4; ++k)
        blocks.push_back(layout == Layout::square ? square_block(kSquareOrder[std::size_t(k)]) : straightline_block(k));
    return cyclic_round(blocks);
}

Circuit build_52_round() {
    // data 0-4, A = 5, B = 6; step 1 closes the previous block and opens the next
    Circuit c(7);
    for (int k = 0; k < 4; ++k) {
        LabelMap lm = [k](const std::string& l) {
            if (l == "A") return 5;
            if (l == "B") return 6;
            return (l[0] - '1' + k) % 5;
        };
        c.append(parse_block(7, "ZA ZB | XA.X1 XB.X4 | ZB.ZA | XA.Z2 XB.Z3", lm), false);
    }
    c.annotate("close", {0, 1});
    return c;
}

Circuit build_repeated(const Circuit& round, int r, Boundary boundary) {
    if (r < 1) throw UsageError("build_repeated: need at least one round");
    bool cyclic = round.has_annotation("close");
    if (boundary == Boundary::bare) {
        Circuit out = round;
        for (int k = 1; k < r; ++k) out.append(round, !cyclic);
        return out;
    }
    if (!cyclic) {
        Circuit out = round;
        std::vector<std::size_t> pad = range(0, round.n_meas());
        for (int k = 1; k < r + 2; ++k) out.append(round, true);
        for (std::size_t i = out.n_meas() - round.n_meas(); i < out.n_meas(); ++i) pad.push_back(i);
        out.annotations().clear();
        out.annotate("padding", pad);
        return out;
    }
    Sequence seq(round.n_qubits());
    seq.add_round(round, true);
    for (int k = 0; k < r; ++k) seq.add_round(round, false);
    seq.add_round(round, true);
    seq.close();
    return seq.finish();
}

Circuit build_logical_measurement(const PauliString& rep_in, int n, int offset) {
    PauliString rep = rep_in.n() == 5 ? rep_in : rep_in.restricted(std::uint64_t{0x1f} << offset);
    if (rep_in.n() != 5) {
        PauliString d(5);
        for (int q = 0; q < 5; ++q) d.set(q, rep_in.get(offset + q));
        if (!(embed(d, rep_in.n(), offset) == rep_in)) throw UsageError("representative acts outside the data qubits");
        rep = d;
    }
    if (rep.weight() != 3) throw UsageError("representative must have weight 3");
    CodeSpec code = CodeSpec::five_qubit(5, 0);
    for (auto& g : code.stabilizers)
        if (rep.anticommutes(g)) throw UsageError("'" + rep.str() + "' is not a logical operator");
    if (in_group(code.stabilizers, rep)) throw UsageError("'" + rep.str() + "' is a stabilizer");
    static const std::pair<std::uint64_t, const char*> table[] = {
        {0b00111, "ZA XB XC | ?1.XA ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA | XC.?2 XB.?3 | XA ZB ZC"},
        {0b01110, "ZB | XB.?4 ZA XC | XA ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA XB.?3 | XC.?2 XA ZB | ZC"},
        {0b11100, "ZB | XB.?4 ZA XC | XA.?5 ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA XB.?3 | XA ZB XC | ZA"},
        {0b11001, "ZB | XB.?4 ZA XC | XA.?5 ZC.ZB | ZC.ZA | ZC.ZB | ZC.ZA XB | XA.?1 ZB XC | ZA"},
        {0b10011, "ZA | XA.?1 ZB XC | XB ZC.ZA | ZC.ZB | ZC.ZA | ZC.ZB XA.?5 | XC.?2 ZA XB | ZC"},
    };
    const char* tmpl = nullptr;
    for (auto& [sup, desc] : table)
        if (sup == rep.support()) tmpl = desc;
    if (!tmpl) throw UsageError("no measurement circuit for the support of '" + rep.str() + "'");
    std::string desc;
    for (const char* p = tmpl; *p; ++p) {
        if (*p == '?') {
            desc.push_back(pauli_char(rep.get(p[1] - '1')));
            desc.push_back(p[1]);
            ++p;
        } else {
            desc.push_back(*p);
        }
    }
    Circuit c = parse_block(n, desc, patch_labels(offset));
    auto gens = CodeSpec::five_qubit(n, offset).stabilizers;
    c.annotate("outcome", outcome_set(c, gens, embed(rep, n, offset)));
    return c;
}

std::uint64_t seam_qubits() { return 0b111 | (0b111 << 8); }

namespace {

Circuit two_patch_round() {
    std::vector<Circuit> blocks;
    for (auto name : kSquareOrder) blocks.push_back(overlay(square_block(name, 16, 0), square_block(name, 16, 8)));
    return cyclic_round(blocks);
}

Circuit zxz_block() {
    return parse_block(16, "Z1.Z1' X2.X2' Z3.Z3'", [](const std::string& l) {
        int q = l[0] - '1';
        return l.size() == 2 ? q + 8 : q;
    });
}

}  // namespace

Circuit build_xx_half_block() {
    Circuit c = zxz_block();
    c.append(zxz_block(), false);
    c.append(two_patch_round(), false);
    c.annotations().clear();
    return c;
}

Circuit build_xx_sequence(int T, bool three_repetitions) {
    if (T < 1) throw UsageError("build_xx_sequence: T must be at least 1");
    const int n = 16;
    Circuit round = two_patch_round();
    Circuit zxz = zxz_block();
    Sequence seq(n);
    std::vector<std::size_t> seam;
    auto add_zxz = [&] {
        seq.add_steps(zxz, false);
        for (std::size_t i = seq.c.n_meas() - zxz.n_meas(); i < seq.c.n_meas(); ++i) seam.push_back(i);
    };
    seq.add_round(round, true);
    if (three_repetitions) {
        add_zxz();
        add_zxz();
        seq.add_round(round, false);
        add_zxz();
        seq.add_round(round, false);
    } else {
        for (int h = 0; h < 2 * T; ++h) {
            add_zxz();
            add_zxz();
            seq.add_round(round, false);
        }
    }
    seq.add_round(round, true);
    seq.close();
    Circuit c = seq.finish();
    c.annotate("zxz", seam);
    return c;
}

ClosedCircuit build_prep_idle_measure_full() {
    const int n = kPatchQubits;
    CodeSpec code = CodeSpec::five_qubit();
    ClosedCircuit out;
    Circuit& c = out.circuit;
    c = Circuit(n);
    std::vector<std::vector<std::size_t>> rep_sets[2];
    std::vector<std::size_t> stage_first;
    auto add_round = [&] {
        Circuit r(n);
        for (auto name : kClosedOrder) r.append(square_block(name), true);
        c.append(r, false);
    };
    auto add_reps = [&](int which) {
        Circuit r(n);
        std::vector<std::vector<std::size_t>> sets;
        auto& ranges = which == 0 ? out.check_blocks : out.readout_blocks;
        for (std::size_t k = 0; k < code.logical_z_reps.size(); ++k) {
            Circuit b = build_logical_measurement(code.logical_z_reps[k]);
            std::size_t off = r.n_meas();
            r.append(b, true);
            ranges[k] = {c.n_steps() + r.n_steps() - b.n_steps(), c.n_steps() + r.n_steps() - 1};
            std::vector<std::size_t> s;
            for (auto i : b.annotation("outcome")) s.push_back(off + i);
            sets.push_back(s);
        }
        std::size_t off = c.n_meas();
        c.append(r, false);
        for (auto& s : sets) {
            for (auto& i : s) i += off;
            rep_sets[which].push_back(s);
        }
    };
    for (int stage = 1; stage <= 6; ++stage) {
        out.stage_step[std::size_t(stage - 1)] = c.n_steps();
        stage_first.push_back(c.n_meas());
        if (stage == 2)
            add_reps(0);
        else if (stage == 5)
            add_reps(1);
        else
            add_round();
    }
    out.stage_step[6] = c.n_steps();

    // Frame fix-ups at the end of stages (1) and (2): destabilizers that
    // commute with the other generators and with the logical Z, applied when
    // the sign of their generator depends on odd outcome parity.
    std::size_t m = c.n_meas();
    std::vector<PauliString> checks = code.stabilizers;
    checks.push_back(code.logical_z_reps[0]);
    std::vector<PauliString> fix(checks.size(), PauliString(n));
    for (std::size_t j = 0; j < checks.size(); ++j) {
        int best_w = 99;
        for (std::uint32_t word = 1; word < (1u << 10); ++word) {
            PauliString d(n, word & 0x1f, (word >> 5) & 0x1f);
            bool ok = true;
            for (std::size_t k = 0; k < checks.size() && ok; ++k) ok = d.anticommutes(checks[k]) == (k == j);
            if (ok && d.weight() < best_w) {
                fix[j] = d;
                best_w = d.weight();
            }
        }
    }
    for (std::size_t stage : {1, 2}) {
        std::size_t rule_step = out.stage_step[stage] - 1;
        TrackSetup setup;
        setup.rules = out.rules;
        setup.step_end = rule_step + 1;
        std::vector<FrameRule> added;
        track(c, setup, [&](std::size_t s, StabilizerTracker& t) {
            if (s != rule_step) return;
            for (std::size_t j = 0; j < checks.size(); ++j) {
                auto tag = t.express(checks[j]);
                if (!tag) throw UsageError("preparation does not fix a generator");
                if (tag->any()) added.push_back({rule_step, meas_bits(*tag, m), fix[j]});
            }
        });
        out.rules.insert(out.rules.end(), added.begin(), added.end());
    }

    c.annotate("stage-boundaries", stage_first);
    for (int k = 0; k < 3; ++k) {
        c.annotate("check-" + std::to_string(k + 1), rep_sets[0][std::size_t(k)]);
        c.annotate("readout-" + std::to_string(k + 1), rep_sets[1][std::size_t(k)]);
    }
    return out;
}

Circuit build_prep_idle_measure() { return build_prep_idle_measure_full().circuit; }

ShProtocol build_sh_protocol() {
    const int n = kPatchQubits;
    const int C = kAuxC;
    std::array<int, 5> holder = {0, 1, 2, 3, 4};
    std::array<bool, 5> rotated{};
    // per block: chain auxiliaries and whether each chain hands its X-coupled role over
    struct Plan {
        int a, b;
        bool swap_a, swap_b;
    };
    const Plan plans[4] = {{kAuxA, kAuxB, true, true}, {0, 3, true, true}, {1, 4, true, true}, {2, kAuxA, true, false}};
    const PauliString gen = PauliString::parse("XZZXI");
    Circuit c(n);
    for (int k = 0; k < 4; ++k) {
        const Plan& pl = plans[k];
        PauliString g = cyclic_shift(gen, k);
        int r1 = (0 + k) % 5, r2 = (1 + k) % 5, r3 = (2 + k) % 5, r4 = (3 + k) % 5;
        auto coupling = [&](int role) {
            Pauli p = g.get(role);
            return rotated[std::size_t(role)] ? sigma(p) : p;
        };
        auto aux = [&](bool conj, Pauli p) { return conj ? sigma(p) : p; };
        std::vector<Step> steps(8);
        auto one = [&](int s, Pauli b, int q) { steps[std::size_t(s - 1)].meas.push_back(Measurement::one(b, q)); };
        auto two = [&](int s, Pauli b0, int q0, Pauli b1, int q1) {
            steps[std::size_t(s - 1)].meas.push_back(Measurement::two(b0, q0, b1, q1));
        };
        // chain A couples r1 (X) and r2 (Z); chain B couples r4 (X) and r3 (Z)
        struct Chain {
            int aux, xrole, zrole;
            bool swap;
            int reset, first, second, close;
            std::array<int, 2> links;
        };
        Chain chains[2] = {{pl.a, r1, r2, pl.swap_a, 1, 2, 6, 7, {3, 5}}, {pl.b, r4, r3, pl.swap_b, 2, 3, 7, 8, {4, 6}}};
        one(2, Pauli::X, C);
        one(7, Pauli::X, C);
        for (auto& ch : chains) {
            bool conj = ch.swap;
            one(ch.reset, aux(conj, Pauli::Z), ch.aux);
            for (int s : ch.links) two(s, Pauli::Z, C, aux(conj, Pauli::Z), ch.aux);
            int early = ch.swap ? ch.zrole : ch.xrole;
            int late = ch.swap ? ch.xrole : ch.zrole;
            two(ch.first, aux(conj, Pauli::X), ch.aux, coupling(early), holder[std::size_t(early)]);
            two(ch.second, aux(conj, Pauli::X), ch.aux, coupling(late), holder[std::size_t(late)]);
            if (ch.swap) {
                int from = holder[std::size_t(ch.xrole)];
                one(ch.close, rotated[std::size_t(ch.xrole)] ? sigma(Pauli::Z) : Pauli::Z, from);
            } else {
                one(ch.close, Pauli::Z, ch.aux);
            }
        }
        Circuit block(n);
        for (auto& s : steps) block.add_step(s);
        c.append(block, true);
        for (auto& ch : chains)
            if (ch.swap) {
                holder[std::size_t(ch.xrole)] = ch.aux;
                rotated[std::size_t(ch.xrole)] = true;
            }
    }
    ShProtocol sh;
    sh.circuit = c;
    sh.role_holder = holder;
    for (int r = 0; r < 5; ++r) sh.relabel[std::size_t(r)] = holder[std::size_t(r)] + 1;
    return sh;
}

Circuit build_teleport() {
    Circuit c = parse_block(3, "ZA ZC | XC.XD | XA.XC | ZD ZC", [](const std::string& l) {
        if (l == "D") return 0;
        if (l == "C") return 1;
        if (l == "A") return 2;
        throw UsageError("unknown label " + l);
    });
    c.annotate("byproduct-x", {4, 5});
    c.annotate("byproduct-z", {2, 3});
    return c;
}

Circuit build_color832_x8() {
    LabelMap lm = [](const std::string& l) {
        if (l == "A") return 8;
        if (l == "B") return 9;
        if (l == "C") return 10;
        return l[0] - '1';
    };
    const std::string med = " | ZC.ZA | ZC.ZB | ZC.ZA | ZC.ZB | ";
    std::string desc = "ZA ZB | XA.X8 XB.X4 XC" + med + "XC XA.X1 XB.X5" + med + "XC XA.X2 XB.X6" + med +
                       "XC XA.X3 XB.X7 | ZA ZB";
    Circuit c = parse_block(11, desc, lm);
    std::vector<PauliString> gens;
    for (auto& z : color832_z_generators()) gens.push_back(embed(z, 11));
    c.annotate("outcome", outcome_set(c, gens, embed(color832_x_stabilizer(), 11)));
    return c;
}

std::vector<PauliString> color832_z_generators() {
    std::vector<PauliString> out;
    for (auto s : {"ZZZZIIII", "IIIIZZZZ", "ZZIIZZII", "ZIZIZIZI"}) out.push_back(PauliString::parse(s));
    return out;
}

PauliString color832_x_stabilizer() { return PauliString::parse("XXXXXXXX"); }

std::vector<std::string> circuit_names() {
    return {"53-square-round", "53-straightline-round", "52-round", "xx-half-block", "xx-sequence", "xx-three-repetition",
            "prep-idle-measure", "sh-protocol", "teleport", "color832-x8", "logical-x", "logical-z"};
}

Circuit build_by_name(const std::string& name) {
    if (name == "53-square-round") return build_53_round(Layout::square);
    if (name == "53-straightline-round") return build_53_round(Layout::straightline);
    if (name == "52-round") return build_52_round();
    if (name == "xx-half-block") return build_xx_half_block();
    if (name == "xx-sequence") return build_xx_sequence(1);
    if (name == "xx-three-repetition") return build_xx_sequence(1, true);
    if (name == "prep-idle-measure") return build_prep_idle_measure();
    if (name == "sh-protocol") return build_sh_protocol().circuit;
    if (name == "teleport") return build_teleport();
    if (name == "color832-x8") return build_color832_x8();
    if (name == "logical-x") return build_logical_measurement(PauliString::parse("ZXZII"));
    if (name == "logical-z") return build_logical_measurement(PauliString::parse("YZYII"));
    throw UsageError("unknown circuit '" + name + "'");
}

}  // namespace pmc
