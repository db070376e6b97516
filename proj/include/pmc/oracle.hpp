#pragma once

#include <cstdint>
#include <vector>

#include "pmc/circuit.hpp"
#include "pmc/faults.hpp"

namespace pmc {

// Frame prediction checked against a signed tableau. The noiseless run and
// the faulty run share a seed; random branches of the faulty run are forced
// to the noiseless outcome xor the predicted flip (before readout error), so
// both runs sit in the same gauge.
struct OracleReport {
    std::size_t deterministic = 0;  // outcomes compared
    std::size_t mismatches = 0;
    bool state_ok = true;           // faulty final state == noiseless final state * residual
    bool ok() const { return mismatches == 0 && state_ok; }
};

OracleReport compare_with_oracle(const Circuit& c, const FaultConfig& f, const std::vector<FrameRule>& rules,
                                 std::uint64_t seed);

}  // namespace pmc
