#include "pmc/gf2.hpp"

#include "pmc/pauli.hpp"

namespace pmc {

void BitMatrix::add_row(BitVec row) {
    if (rows.empty() && cols == 0) cols = row.size();
    if (row.size() != cols) throw UsageError("BitMatrix: row width mismatch");
    rows.push_back(std::move(row));
}

std::size_t rank_gf2(BitMatrix m) {
    for (auto& r : m.rows)
        if (r.size() != m.cols) throw UsageError("rank_gf2: row width mismatch");
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols && rank < m.rows.size(); ++c) {
        std::size_t p = rank;
        while (p < m.rows.size() && !m.rows[p].get(c)) ++p;
        if (p == m.rows.size()) continue;
        std::swap(m.rows[p], m.rows[rank]);
        for (std::size_t r = 0; r < m.rows.size(); ++r)
            if (r != rank && m.rows[r].get(c)) m.rows[r] ^= m.rows[rank];
        ++rank;
    }
    return rank;
}

std::optional<BitVec> solve_gf2(const BitMatrix& m, const BitVec& rhs) {
    if (rhs.size() != m.cols) throw UsageError("solve_gf2: shape mismatch");
    Gf2Basis b(m.cols, m.rows.size());
    for (auto& r : m.rows) {
        if (r.size() != m.cols) throw UsageError("solve_gf2: row width mismatch");
        b.add(r);
    }
    return b.express(rhs);
}

bool Gf2Basis::add(const BitVec& v) {
    BitVec r = v;
    BitVec c(inputs_);
    if (inputs_) c.set(added_);
    ++added_;
    for (std::size_t k = 0; k < rows_.size(); ++k)
        if (r.get(pivot_[k])) {
            r ^= rows_[k];
            if (inputs_) c ^= combo_[k];
        }
    long p = r.first();
    if (p < 0) return false;
    // keep the basis fully reduced on pivot columns
    for (std::size_t k = 0; k < rows_.size(); ++k)
        if (rows_[k].get(std::size_t(p))) {
            rows_[k] ^= r;
            if (inputs_) combo_[k] ^= c;
        }
    rows_.push_back(std::move(r));
    combo_.push_back(std::move(c));
    pivot_.push_back(std::size_t(p));
    return true;
}

BitVec Gf2Basis::reduce(const BitVec& v) const {
    BitVec r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k)
        if (r.get(pivot_[k])) r ^= rows_[k];
    return r;
}

std::optional<BitVec> Gf2Basis::express(const BitVec& v) const {
    BitVec r = v;
    BitVec c(inputs_);
    for (std::size_t k = 0; k < rows_.size(); ++k)
        if (r.get(pivot_[k])) {
            r ^= rows_[k];
            if (inputs_) c ^= combo_[k];
        }
    if (r.any()) return std::nullopt;
    return c;
}

}  // namespace pmc
