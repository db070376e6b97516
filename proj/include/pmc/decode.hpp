#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmc/bits.hpp"
#include "pmc/dem.hpp"
#include "pmc/experiment.hpp"

namespace pmc {

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LookupEntry {
    std::uint64_t logical = 0;
    std::vector<std::size_t> rep;  // variant ids of the representative config
};

struct Collision {
    BitVec syndrome;
    std::uint64_t logical_a = 0, logical_b = 0;
    std::vector<std::size_t> rep_a, rep_b;
};

struct LookupTable {
    int degree = 1;
    std::unordered_map<BitVec, LookupEntry, BitVecHash> entries;
    std::vector<Collision> collisions;  // one per conflicting syndrome

    const LookupEntry* find(const BitVec& s) const {
        auto it = entries.find(s);
        return it == entries.end() ? nullptr : &it->second;
    }
};

// Table over all configs of degree <= `degree` (first preimage wins, lower
// degree first). `budget` bounds the number of configs visited;
// `accepted_only` skips faults that fire a pre-selection detector.
LookupTable build_lookup(const ErrorModel& dem, int degree = 1, std::size_t budget = 200'000'000,
                         bool accepted_only = false);
// Convenience form that builds the error model first.
LookupTable build_lookup(const Circuit& c, const DetectorSet& d, const LogicalActionMap& map, int degree,
                         const NoiseModel& noise, const std::vector<FrameRule>& rules = {});

struct DistanceResult {
    int d_f = 0;              // 0 when no logical fault up to max_degree
    int searched = 0;         // highest degree fully searched
    std::vector<std::size_t> witness;  // variant ids
};
// Minimum degree of a zero-syndrome config with nontrivial logical action.
DistanceResult fault_distance(const ErrorModel& dem, int max_degree, std::size_t budget = 2'000'000'000);

enum class Status { corrected, rejected };
struct DecodeOutcome {
    Status status = Status::corrected;
    std::uint64_t flips = 0;
};
DecodeOutcome decode_with_postselection(const LookupTable& table, const BitVec& syndrome);
bool majority_vote(const std::vector<bool>& bits);

// `S <hex syndrome> L <hex flips>` lines, then the collisions.
std::string export_table(const LookupTable& t);

struct WindowPlan {
    int length = 4;
};

// Round-by-round degree-1 decoding over a window of `length` detector rounds.
class WindowDecoder {
public:
    WindowDecoder(const ErrorModel& dem, const std::vector<std::size_t>& det_round, std::size_t n_rounds,
                  WindowPlan plan = {});
    struct Result {
        BitVec residual;
        std::uint64_t correction = 0;
    };
    Result decode(const BitVec& syndrome) const;

private:
    BitVec key(const BitVec& s, std::size_t lo, std::size_t hi) const;

    const ErrorModel* dem_;
    std::size_t n_rounds_;
    WindowPlan plan_;
    std::vector<std::size_t> start_;
    std::vector<std::unordered_map<BitVec, std::size_t, BitVecHash>> long_, short_;
};

enum class DecoderMode { ec, ec_postselect };
DecoderMode decoder_from_string(const std::string& s);
std::string to_string(DecoderMode m);

struct ShotOutcome {
    bool pre_rejected = false, post_rejected = false, failed = false;
};

// Decoding strategy of an experiment: pre-selection, whole-circuit lookup,
// then windowed decoding.
class ExperimentDecoder {
public:
    ExperimentDecoder(const Experiment& e, const ErrorModel& dem);
    ShotOutcome decode(const BitVec& syndrome, const BitVec& pre, std::uint64_t logical, DecoderMode mode) const;
    const LookupTable& table() const { return table_; }

private:
    const Experiment* e_;
    LookupTable table_;
    std::optional<WindowDecoder> window_;
};

}  // namespace pmc
