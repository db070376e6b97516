#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pmc/bits.hpp"
#include "pmc/circuit.hpp"
#include "pmc/faults.hpp"
#include "pmc/pauli.hpp"

namespace pmc {

// Stabilizer group whose generators carry the set of measurement outcomes
// (and virtual inputs) that fix their sign. Mixed states are allowed.
class StabilizerTracker {
public:
    StabilizerTracker(int n, std::size_t tag_bits) : n_(n), bits_(tag_bits) {}

    int n() const { return n_; }
    std::size_t tag_bits() const { return bits_; }
    std::size_t rank() const { return gens_.size(); }
    const PauliString& generator(std::size_t i) const { return gens_[i]; }
    const BitVec& generator_tag(std::size_t i) const { return gtags_[i]; }

    // throws if p does not commute with the group or is already in it
    void add_generator(const PauliString& p, BitVec tag);
    // a tracked operator (typically a logical) that is carried along
    std::size_t add_row(const PauliString& p, BitVec tag);
    const PauliString& row(std::size_t r) const { return rows_[r]; }
    const BitVec& row_tag(std::size_t r) const { return rtags_[r]; }
    bool row_alive(std::size_t r) const { return alive_[r]; }

    // Measures obs, recording outcome bit `bit`. Returns the relation
    // (a tag with `bit` set) when the outcome is fixed by the group or by
    // the group together with live rows.
    std::optional<BitVec> measure(const PauliString& obs, std::size_t bit);
    // conditional Pauli p applied when the parity of `group` is odd
    void apply_rule(const PauliString& p, const BitVec& group);
    // tag of p as a product of generators, if p is in the group
    std::optional<BitVec> express(const PauliString& p) const;
    // same, allowing live rows as extra generators
    std::optional<BitVec> express_with_rows(const PauliString& p) const;

private:
    std::optional<std::uint64_t> combo(const PauliString& p, bool with_rows) const;

    int n_;
    std::size_t bits_;
    std::vector<PauliString> gens_, rows_;
    std::vector<BitVec> gtags_, rtags_;
    std::vector<bool> alive_;
};

struct TrackSetup {
    std::vector<PauliString> gens;  // known +1 stabilizers at the start (empty: all-|0>)
    std::vector<PauliString> rows;  // tracked operators, virtual input j for row j
    std::vector<FrameRule> rules;
    std::size_t step_begin = 0;
    std::size_t step_end = std::size_t(-1);
};

struct TrackResult {
    std::size_t n_meas = 0, n_virtual = 0;
    std::vector<BitVec> relations;  // over n_meas + n_virtual bits, emission order
    std::vector<PauliString> rows;  // final operators
    std::vector<BitVec> row_tags;
    std::vector<bool> row_alive;
};

using StepHook = std::function<void(std::size_t step, StabilizerTracker&)>;

// Runs the tracker over the circuit; `after_step` fires once each step and
// its rules are done.
TrackResult track(const Circuit& c, const TrackSetup& setup, const StepHook& after_step = {});

}  // namespace pmc
