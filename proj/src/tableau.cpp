#include "pmc/tableau.hpp"

#include "pmc/faults.hpp"

namespace pmc {

namespace {

// Phase exponent (mod 4) picked up by x1z1 * x2z2 on one qubit, Hermitian convention.
int g(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return int(z2) - int(x2);
    if (x1) return int(z2) * (2 * int(x2) - 1);
    return int(x2) * (1 - 2 * int(z2));
}

// Returns the sign bit of (-1)^sa a * (-1)^sb b for commuting a, b.
bool product_sign(const PauliString& a, bool sa, const PauliString& b, bool sb) {
    int e = 2 * int(sa) + 2 * int(sb);
    std::uint64_t sup = a.support() & b.support();
    for (int q = 0; q < a.n(); ++q)
        if ((sup >> q) & 1) e += g((a.xs() >> q) & 1, (a.zs() >> q) & 1, (b.xs() >> q) & 1, (b.zs() >> q) & 1);
    e = ((e % 4) + 4) % 4;
    return e == 2;
}

}  // namespace

Tableau Tableau::init_zero(int n) {
    if (n < 1) throw UsageError("init_zero: need at least one qubit");
    Tableau t;
    t.n_ = n;
    for (int q = 0; q < n; ++q) {
        t.stab_.push_back(PauliString::single(n, q, Pauli::Z));
        t.destab_.push_back(PauliString::single(n, q, Pauli::X));
    }
    t.sign_.assign(std::size_t(n), false);
    t.dsign_.assign(std::size_t(n), false);
    return t;
}

MeasureResult Tableau::measure(const PauliString& obs, std::mt19937_64& rng, std::optional<bool> forced) {
    if (obs.n() != n_) throw UsageError("measure: length mismatch");
    if (obs.is_identity()) throw UsageError("measure: identity observable");
    int p = -1;
    for (int i = 0; i < n_; ++i)
        if (stab_[std::size_t(i)].anticommutes(obs)) {
            p = i;
            break;
        }
    if (p < 0) return {*peek(obs), true};

    auto P = std::size_t(p);
    for (std::size_t i = 0; i < std::size_t(n_); ++i) {
        if (i != P && stab_[i].anticommutes(obs)) {
            sign_[i] = product_sign(stab_[i], sign_[i], stab_[P], sign_[P]);
            stab_[i] *= stab_[P];
        }
        if (i != P && destab_[i].anticommutes(obs)) destab_[i] *= stab_[P];
    }
    destab_[P] = stab_[P];
    dsign_[P] = sign_[P];
    bool out = forced ? *forced : bool(rng() & 1);
    stab_[P] = obs;
    sign_[P] = out;
    return {out, false};
}

std::optional<bool> Tableau::peek(const PauliString& obs) const {
    for (int i = 0; i < n_; ++i)
        if (stab_[std::size_t(i)].anticommutes(obs)) return std::nullopt;
    PauliString acc(n_);
    bool s = false;
    for (std::size_t i = 0; i < std::size_t(n_); ++i)
        if (destab_[i].anticommutes(obs)) {
            s = product_sign(acc, s, stab_[i], sign_[i]);
            acc *= stab_[i];
        }
    if (!(acc == obs)) return std::nullopt;  // mixed states are not represented
    return s;
}

void Tableau::apply_pauli(const PauliString& p) {
    if (p.n() != n_) throw UsageError("apply_pauli: length mismatch");
    for (std::size_t i = 0; i < std::size_t(n_); ++i)
        if (stab_[i].anticommutes(p)) sign_[i] = !sign_[i];
}

bool Tableau::same_state(const Tableau& o) const {
    if (o.n_ != n_) return false;
    for (int i = 0; i < n_; ++i) {
        auto v = peek(o.stab_[std::size_t(i)]);
        if (!v || *v != o.sign_[std::size_t(i)]) return false;
    }
    return true;
}

bool Tableau::valid() const {
    for (std::size_t i = 0; i < std::size_t(n_); ++i)
        for (std::size_t j = 0; j < std::size_t(n_); ++j) {
            if (stab_[i].anticommutes(stab_[j])) return false;
            if (destab_[i].anticommutes(destab_[j])) return false;
            if (destab_[i].anticommutes(stab_[j]) != (i == j)) return false;
        }
    return true;
}

OutcomeRecord run(Tableau& t, const Circuit& c, const FaultConfig& fault, std::mt19937_64& rng, const RunOptions& opt) {
    validate(c, fault);
    if (t.n() != c.n_qubits()) throw UsageError("run: tableau size does not match circuit");
    std::size_t M = c.n_meas();
    std::vector<std::vector<const ElementaryFault*>> at_meas(M), at_step(c.n_steps());
    for (auto& f : fault.faults) {
        if (f.loc.kind == LocKind::idle)
            at_step[f.loc.step].push_back(&f);
        else
            at_meas[f.loc.ref].push_back(&f);
    }
    OutcomeRecord rec;
    rec.outcome.assign(M, false);
    rec.deterministic.assign(M, false);
    for (std::size_t s = 0; s < c.n_steps(); ++s) {
        std::size_t i0 = c.first_index(s);
        for (std::size_t k = 0; k < c.steps()[s].meas.size(); ++k) {
            std::size_t i = i0 + k;
            std::optional<bool> forced;
            if (opt.forced) forced = (*opt.forced)[i];
            auto r = t.measure(c.observable(i), rng, forced);
            bool out = r.outcome;
            for (auto* f : at_meas[i]) {
                out ^= f->flip;
                t.apply_pauli(f->pauli);
            }
            rec.outcome[i] = out;
            rec.deterministic[i] = r.deterministic;
        }
        for (auto* f : at_step[s]) t.apply_pauli(f->pauli);
        if (opt.rules)
            for (auto& rule : *opt.rules) {
                if (rule.step != s) continue;
                bool par = false;
                for (auto i : rule.group) par ^= rec.outcome[i];
                if (par) t.apply_pauli(rule.pauli);
            }
    }
    if (opt.final_state) *opt.final_state = t;
    return rec;
}

}  // namespace pmc
