#pragma once

#include <cstdint>
#include <vector>

#include "pmc/bits.hpp"
#include "pmc/detectors.hpp"
#include "pmc/experiment.hpp"
#include "pmc/faults.hpp"

namespace pmc {

// Syndrome, pre-selection bits and logical action of every elementary
// fault variant. Syndromes of configs are xors of these (frame linearity).
struct ErrorModel {
    std::vector<FaultLocation> locations;
    std::vector<std::size_t> first;   // first variant of each location, plus end
    std::vector<std::size_t> loc_of;  // variant -> location
    std::vector<std::size_t> round;   // location -> round
    std::vector<BitVec> syndrome, pre;
    std::vector<std::uint64_t> logical;
    std::size_t n_detectors = 0;

    std::size_t n_locations() const { return locations.size(); }
    std::size_t n_variants() const { return loc_of.size(); }
    std::size_t variants_at(std::size_t loc) const { return first[loc + 1] - first[loc]; }
    ElementaryFault fault(const Circuit& c, std::size_t v) const {
        return variant(c, locations[loc_of[v]], v - first[loc_of[v]]);
    }
    FaultConfig config(const Circuit& c, const std::vector<std::size_t>& vs) const;
};

ErrorModel build_error_model(const Circuit& c, const NoiseModel& m, const DetectorSet& d, const DetectorSet& pre,
                             const LogicalActionMap& map, const std::vector<FrameRule>& rules = {},
                             int workers = 0);
ErrorModel build_error_model(const Experiment& e, int workers = 0);

}  // namespace pmc
