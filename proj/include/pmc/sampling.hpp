#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "pmc/decode.hpp"
#include "pmc/dem.hpp"
#include "pmc/experiment.hpp"

namespace pmc {

// Shots are split into fixed chunks; chunk k draws from seed_seq{seed, k},
// so totals do not depend on the number of workers.
inline constexpr std::uint64_t kChunkShots = 1u << 14;
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t chunk);

struct Tally {
    std::uint64_t shots = 0, failures = 0, pre_rejected = 0, post_rejected = 0;
    std::uint64_t accepted() const { return shots - pre_rejected - post_rejected; }
    std::uint64_t rejections() const { return pre_rejected + post_rejected; }
    Tally& operator+=(const Tally& o);
};

// Draws configs from an error model and decodes them.
class ShotRunner {
public:
    ShotRunner(const Experiment& e, const ErrorModel& dem, const ExperimentDecoder& dec, DecoderMode mode)
        : e_(&e), dem_(&dem), dec_(&dec), mode_(mode) {}
    // i.i.d. faults with probability p per location
    ShotOutcome iid(double p, std::mt19937_64& rng) const;
    // exactly w faults on distinct uniform locations
    ShotOutcome degree(std::size_t w, std::mt19937_64& rng) const;
    ShotOutcome variants(const std::vector<std::size_t>& vs) const;
    const ErrorModel& dem() const { return *dem_; }

private:
    const Experiment* e_;
    const ErrorModel* dem_;
    const ExperimentDecoder* dec_;
    DecoderMode mode_;
};

struct DirectEstimate {
    Tally tally;
    double median = 0, ci_lo = 0, ci_hi = 0;
};

// Beta(0.5 + failures, 0.5 + accepted - failures) posterior summary.
DirectEstimate beta_summary(const Tally& t);
DirectEstimate run_direct(const ShotRunner& r, double p, std::uint64_t shots, std::uint64_t seed, int workers = 1);

struct StratifiedOptions {
    std::vector<double> p_grid;
    int w_max = 16;
    double epsilon = 0.1;
    std::uint64_t initial = 2000;           // shots per stratum to start
    std::uint64_t batch = 20000;            // shots per refinement round
    std::uint64_t budget = 50'000'000;      // total sampled shots
    int workers = 1;
};

struct Stratum {
    std::uint64_t shots = 0, failures = 0, rejections = 0;
    bool exact = false;
    double f = 0, reject = 0;  // failure and rejection fractions
    double variance() const;    // of f
};

struct CurvePoint {
    double p = 0, mean = 0, sigma = 0, upper_bound = 0;
};

struct StratifiedEstimate {
    std::size_t n = 0;              // noisy locations
    std::vector<Stratum> strata;    // index = degree, 0..w_max
    std::vector<CurvePoint> curve;  // raw, at the grid
    bool converged = false;
    Tally totals() const;
    CurvePoint at(double p) const;
};

double eval_polynomial(const std::vector<double>& f, std::size_t n, double p);
// P(Binomial(n, p) > w_max)
double truncation_tail(std::size_t n, double p, int w_max);
StratifiedEstimate run_stratified(const ShotRunner& r, const StratifiedOptions& opt, std::uint64_t seed);

double normalize_idle(double raw, int T);
double combinatorial_pseudothreshold(std::size_t n_per_round);
// Solves f(p) = p by bisection on [lo, hi]; f(p) - p must change sign.
double crossing(const std::function<double(double)>& f, double lo, double hi);
// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct CsvRow {
    std::string circuit;
    double p = 0;
    int T = 0;
    std::string idle;
    bool postselect = false;
    std::uint64_t shots = 0, failures = 0, rejections = 0;
    double p_logical = 0, sigma = 0, upper_bound = 0, ci_lo = 0, ci_hi = 0;
};
std::string csv_header();
void write_csv_row(std::ostream& out, const CsvRow& r);

}  // namespace pmc
