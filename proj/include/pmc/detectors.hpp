#pragma once

#include <string>
#include <vector>

#include "pmc/bits.hpp"
#include "pmc/circuit.hpp"
#include "pmc/faults.hpp"
#include "pmc/tracker.hpp"

namespace pmc {

struct Detector {
    std::vector<std::size_t> members;  // sorted measurement indices
    std::size_t latest() const { return members.back(); }
};

struct DetectorSet {
    std::size_t n_meas = 0;
    std::vector<Detector> detectors;
    std::vector<BitVec> masks;  // indicator vectors over measurements
    std::string basis_note;

    std::size_t size() const { return detectors.size(); }
    void add(const BitVec& mask);
};

// One logical bit: parity of the flips on `members`, xor whether the final
// residual anticommutes with `obs`.
struct LogicalObservable {
    std::string name;
    PauliString obs;
    std::vector<std::size_t> members;
    BitVec mask;
};

LogicalObservable make_logical(std::string name, const PauliString& obs, const BitVec& tag, std::size_t n_meas);

struct LogicalActionMap {
    std::vector<LogicalObservable> observables;
    std::size_t size() const { return observables.size(); }
};

// Splits tracker relations into detectors (no virtual inputs) and keeps
// the remainder for the caller.
DetectorSet detectors_from_relations(const TrackResult& r, bool reduce = true);

// Detectors of a circuit started in |0...0> (or from `setup`).
DetectorSet find_detectors(const Circuit& c, const TrackSetup& setup = {}, bool reduce = true);

// Lowers member counts by xoring in detectors whose latest member is earlier.
void reduce_weight(DetectorSet& d);

BitVec syndrome_of(const DetectorSet& d, const BitVec& flips);
BitVec syndrome_of(const Circuit& c, const DetectorSet& d, const FaultConfig& f,
                   const std::vector<FrameRule>& rules = {});
std::uint64_t logical_bits(const LogicalActionMap& map, const Propagation& p);
BitVec logical_action_of(const Circuit& c, const LogicalActionMap& map, const FaultConfig& f,
                         const std::vector<FrameRule>& rules = {});

std::string dump_detectors(const DetectorSet& d);

}  // namespace pmc
