#pragma once

#include <optional>
#include <vector>

#include "pmc/bits.hpp"

namespace pmc {

struct BitMatrix {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    BitMatrix() = default;
    BitMatrix(std::size_t r, std::size_t c) : cols(c), rows(r, BitVec(c)) {}
    void add_row(BitVec row);
};

std::size_t rank_gf2(BitMatrix m);

// Solves x·M = rhs, i.e. finds a subset of rows whose xor is rhs.
// The result has one bit per row.
std::optional<BitVec> solve_gf2(const BitMatrix& m, const BitVec& rhs);

// Incremental row-echelon basis. Each stored row remembers which input rows
// it combines, so membership queries return a certificate.
class Gf2Basis {
public:
    explicit Gf2Basis(std::size_t cols, std::size_t max_inputs = 0) : cols_(cols), inputs_(max_inputs) {}

    // returns true if v was independent and has been added
    bool add(const BitVec& v);
    // reduces v against the basis; returns the combination of inputs used
    // when v lies in the span
    std::optional<BitVec> express(const BitVec& v) const;
    bool contains(const BitVec& v) const { return reduce(v).none(); }
    BitVec reduce(const BitVec& v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t cols_, inputs_, added_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> combo_;
    std::vector<std::size_t> pivot_;
};

}  // namespace pmc
