#include "pmc/tracker.hpp"

namespace pmc {

std::optional<std::uint64_t> StabilizerTracker::combo(const PauliString& p, bool with_rows) const {
    struct Row {
        std::uint64_t x, z, c;
    };
    std::vector<Row> m;
    for (std::size_t i = 0; i < gens_.size(); ++i) m.push_back({gens_[i].xs(), gens_[i].zs(), std::uint64_t{1} << i});
    if (with_rows)
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (alive_[r]) m.push_back({rows_[r].xs(), rows_[r].zs(), std::uint64_t{1} << (gens_.size() + r)});
    if (m.size() > 64) throw UsageError("tracker: too many generators");
    Row t{p.xs(), p.zs(), 0};
    // Gaussian elimination on the 2n-bit symplectic vectors
    std::size_t used = 0;
    for (int col = 0; col < 2 * n_ && used < m.size(); ++col) {
        auto bit = [&](const Row& r) { return col < n_ ? (r.x >> col) & 1 : (r.z >> (col - n_)) & 1; };
        std::size_t piv = used;
        while (piv < m.size() && !bit(m[piv])) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[used]);
        for (std::size_t k = used + 1; k < m.size(); ++k)
            if (bit(m[k])) {
                m[k].x ^= m[used].x;
                m[k].z ^= m[used].z;
                m[k].c ^= m[used].c;
            }
        if (bit(t)) {
            t.x ^= m[used].x;
            t.z ^= m[used].z;
            t.c ^= m[used].c;
        }
        ++used;
    }
    if (t.x || t.z) return std::nullopt;
    return t.c;
}

std::optional<BitVec> StabilizerTracker::express(const PauliString& p) const {
    auto c = combo(p, false);
    if (!c) return std::nullopt;
    BitVec tag(bits_);
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if ((*c >> i) & 1) tag ^= gtags_[i];
    return tag;
}

std::optional<BitVec> StabilizerTracker::express_with_rows(const PauliString& p) const {
    auto c = combo(p, true);
    if (!c) return std::nullopt;
    BitVec tag(bits_);
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if ((*c >> i) & 1) tag ^= gtags_[i];
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if ((*c >> (gens_.size() + r)) & 1) tag ^= rtags_[r];
    return tag;
}

void StabilizerTracker::add_generator(const PauliString& p, BitVec tag) {
    if (p.n() != n_ || tag.size() != bits_) throw UsageError("tracker: shape mismatch");
    for (auto& g : gens_)
        if (g.anticommutes(p)) throw UsageError("tracker: generator does not commute with the group");
    if (combo(p, false)) throw UsageError("tracker: dependent generator");
    gens_.push_back(p);
    gtags_.push_back(std::move(tag));
}

std::size_t StabilizerTracker::add_row(const PauliString& p, BitVec tag) {
    if (p.n() != n_ || tag.size() != bits_) throw UsageError("tracker: shape mismatch");
    rows_.push_back(p);
    rtags_.push_back(std::move(tag));
    alive_.push_back(true);
    return rows_.size() - 1;
}

std::optional<BitVec> StabilizerTracker::measure(const PauliString& obs, std::size_t bit) {
    std::size_t p = gens_.size();
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].anticommutes(obs)) {
            p = i;
            break;
        }
    BitVec own(bits_);
    own.set(bit);
    if (p < gens_.size()) {
        for (std::size_t i = p + 1; i < gens_.size(); ++i)
            if (gens_[i].anticommutes(obs)) {
                gens_[i] *= gens_[p];
                gtags_[i] ^= gtags_[p];
            }
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (alive_[r] && rows_[r].anticommutes(obs)) {
                rows_[r] *= gens_[p];
                rtags_[r] ^= gtags_[p];
            }
        gens_[p] = obs;
        gtags_[p] = own;
        return std::nullopt;
    }
    if (auto t = express(obs)) return *t ^ own;
    std::optional<BitVec> rel;
    if (auto t = express_with_rows(obs)) rel = *t ^ own;
    std::size_t first = rows_.size();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!alive_[r] || !rows_[r].anticommutes(obs)) continue;
        if (first == rows_.size()) {
            first = r;
            continue;
        }
        rows_[r] *= rows_[first];
        rtags_[r] ^= rtags_[first];
    }
    if (first < rows_.size()) alive_[first] = false;
    gens_.push_back(obs);
    gtags_.push_back(own);
    return rel;
}

void StabilizerTracker::apply_rule(const PauliString& p, const BitVec& group) {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].anticommutes(p)) gtags_[i] ^= group;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (alive_[r] && rows_[r].anticommutes(p)) rtags_[r] ^= group;
}

TrackResult track(const Circuit& c, const TrackSetup& setup, const StepHook& after_step) {
    TrackResult res;
    res.n_meas = c.n_meas();
    res.n_virtual = setup.rows.size();
    std::size_t bits = res.n_meas + res.n_virtual;
    int n = c.n_qubits();
    StabilizerTracker t(n, bits);
    if (setup.gens.empty()) {
        for (int q = 0; q < n; ++q) t.add_generator(PauliString::single(n, q, Pauli::Z), BitVec(bits));
    } else {
        for (auto& g : setup.gens) t.add_generator(g, BitVec(bits));
    }
    for (std::size_t r = 0; r < setup.rows.size(); ++r) {
        BitVec tag(bits);
        tag.set(res.n_meas + r);
        t.add_row(setup.rows[r], tag);
    }
    std::vector<std::vector<const FrameRule*>> rule_at(c.n_steps());
    for (auto& r : setup.rules) {
        if (r.step >= c.n_steps()) throw UsageError("track: rule step out of range");
        rule_at[r.step].push_back(&r);
    }
    std::size_t end = std::min(setup.step_end, c.n_steps());
    for (std::size_t s = setup.step_begin; s < end; ++s) {
        std::size_t i0 = c.first_index(s);
        for (std::size_t k = 0; k < c.steps()[s].meas.size(); ++k) {
            std::size_t i = i0 + k;
            if (auto rel = t.measure(c.observable(i), i)) res.relations.push_back(std::move(*rel));
        }
        for (auto* r : rule_at[s]) {
            BitVec g(bits);
            for (auto i : r->group) g.flip(i);
            t.apply_rule(r->pauli, g);
        }
        if (after_step) after_step(s, t);
    }
    for (std::size_t r = 0; r < setup.rows.size(); ++r) {
        res.rows.push_back(t.row(r));
        res.row_tags.push_back(t.row_tag(r));
        res.row_alive.push_back(t.row_alive(r));
    }
    return res;
}

}  // namespace pmc
