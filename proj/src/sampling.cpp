#include "pmc/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <thread>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>

namespace pmc {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq s{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(chunk), std::uint32_t(chunk >> 32)};
    return std::mt19937_64(s);
}

Tally& Tally::operator+=(const Tally& o) {
    shots += o.shots;
    failures += o.failures;
    pre_rejected += o.pre_rejected;
    post_rejected += o.post_rejected;
    return *this;
}

namespace {

void count(Tally& t, const ShotOutcome& o) {
    ++t.shots;
    if (o.pre_rejected)
        ++t.pre_rejected;
    else if (o.post_rejected)
        ++t.post_rejected;
    else if (o.failed)
        ++t.failures;
}

// Runs chunk ids [0, n) on `workers` threads and folds the tallies.
Tally run_chunks(std::uint64_t n, int workers, const std::function<Tally(std::uint64_t)>& chunk) {
    unsigned nw = workers > 0 ? unsigned(workers) : std::max(1u, std::thread::hardware_concurrency());
    nw = unsigned(std::min<std::uint64_t>(nw, std::max<std::uint64_t>(n, 1)));
    std::vector<Tally> part(nw);
    std::atomic<std::uint64_t> next{0};
    auto work = [&](unsigned w) {
        for (std::uint64_t k; (k = next++) < n;) part[w] += chunk(k);
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    Tally total;
    for (auto& t : part) total += t;
    return total;
}

}  // namespace

ShotOutcome ShotRunner::variants(const std::vector<std::size_t>& vs) const {
    BitVec syn(dem_->n_detectors), pre(dem_->pre.empty() ? 0 : dem_->pre[0].size());
    std::uint64_t logical = 0;
    for (auto v : vs) {
        syn ^= dem_->syndrome[v];
        pre ^= dem_->pre[v];
        logical ^= dem_->logical[v];
    }
    return dec_->decode(syn, pre, logical, mode_);
}

ShotOutcome ShotRunner::iid(double p, std::mt19937_64& rng) const {
    std::vector<std::size_t> vs;
    const std::size_t n = dem_->n_locations();
    auto pick = [&](std::size_t l) {
        std::uniform_int_distribution<std::size_t> u(0, dem_->variants_at(l) - 1);
        vs.push_back(dem_->first[l] + u(rng));
    };
    if (p >= 1.0) {
        for (std::size_t l = 0; l < n; ++l) pick(l);
    } else if (p > 0.0) {
        std::geometric_distribution<std::size_t> gap(p);
        for (std::size_t l = gap(rng); l < n; l += 1 + gap(rng)) pick(l);
    }
    return variants(vs);
}

ShotOutcome ShotRunner::degree(std::size_t w, std::mt19937_64& rng) const {
    const std::size_t n = dem_->n_locations();
    if (w > n) throw UsageError("degree exceeds the number of locations");
    std::set<std::size_t> chosen;  // Floyd's algorithm
    for (std::size_t j = n - w; j < n; ++j) {
        std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::size_t> vs;
    for (auto l : chosen) vs.push_back(dem_->first[l] + std::uniform_int_distribution<std::size_t>(0, dem_->variants_at(l) - 1)(rng));
    return variants(vs);
}

DirectEstimate beta_summary(const Tally& t) {
    DirectEstimate d;
    d.tally = t;
    double a = 0.5 + double(t.failures), b = 0.5 + double(t.accepted() - t.failures);
    boost::math::beta_distribution<> dist(a, b);
    d.median = boost::math::quantile(dist, 0.5);
    d.ci_lo = boost::math::quantile(dist, 0.025);
    d.ci_hi = boost::math::quantile(dist, 0.975);
    return d;
}

DirectEstimate run_direct(const ShotRunner& r, double p, std::uint64_t shots, std::uint64_t seed, int workers) {
    if (shots < 1) throw UsageError("run_direct: need at least one shot");
    std::uint64_t chunks = (shots + kChunkShots - 1) / kChunkShots;
    Tally t = run_chunks(chunks, workers, [&](std::uint64_t k) {
        auto rng = substream(seed, k);
        std::uint64_t m = std::min(kChunkShots, shots - k * kChunkShots);
        Tally c;
        for (std::uint64_t i = 0; i < m; ++i) count(c, r.iid(p, rng));
        return c;
    });
    return beta_summary(t);
}

double Stratum::variance() const {
    if (exact || shots == 0) return exact ? 0.0 : 0.25;
    double nn = double(shots);
    double q = double(failures) / nn;
    double fl = (double(failures) + 0.5) / (nn + 1.0);
    return std::max(q * (1 - q), fl * (1 - fl)) / nn;
}

double eval_polynomial(const std::vector<double>& f, std::size_t n, double p) {
    if (p < 0 || p > 1) throw UsageError("eval_polynomial: p must lie in [0, 1]");
    boost::math::binomial_distribution<> b(double(n), p);
    double s = 0;
    for (std::size_t w = 0; w < f.size() && w <= n; ++w)
        if (f[w] != 0) s += f[w] * boost::math::pdf(b, double(w));
    return s;
}

double truncation_tail(std::size_t n, double p, int w_max) {
    if (w_max < 0) return 1.0;
    if (std::size_t(w_max) >= n) return 0.0;
    boost::math::binomial_distribution<> b(double(n), p);
    return boost::math::cdf(boost::math::complement(b, double(w_max)));
}

namespace {

CurvePoint evaluate(const std::vector<Stratum>& s, std::size_t n, double p, int w_max) {
    boost::math::binomial_distribution<> b(double(n), p);
    double fail = 0, var = 0, rej = 0;
    for (std::size_t w = 0; w < s.size(); ++w) {
        double bw = boost::math::pdf(b, double(w));
        fail += s[w].f * bw;
        rej += s[w].reject * bw;
        var += bw * bw * s[w].variance();
    }
    double acc = std::max(1.0 - rej, 1e-300);
    CurvePoint c;
    c.p = p;
    c.mean = fail / acc;
    c.sigma = std::sqrt(var) / acc;
    c.upper_bound = c.mean + truncation_tail(n, p, w_max);
    return c;
}

}  // namespace

Tally StratifiedEstimate::totals() const {
    Tally t;
    for (auto& s : strata) {
        t.shots += s.shots;
        t.failures += s.failures;
        t.post_rejected += s.rejections;
    }
    return t;
}

CurvePoint StratifiedEstimate::at(double p) const { return evaluate(strata, n, p, int(strata.size()) - 1); }

StratifiedEstimate run_stratified(const ShotRunner& r, const StratifiedOptions& opt, std::uint64_t seed) {
    if (opt.w_max < 2) throw UsageError("run_stratified: w_max must be at least 2");
    if (opt.epsilon <= 0) throw UsageError("run_stratified: epsilon must be positive");
    if (opt.p_grid.empty()) throw UsageError("run_stratified: empty p grid");
    const ErrorModel& dem = r.dem();
    StratifiedEstimate est;
    est.n = dem.n_locations();
    const std::size_t wm = std::min<std::size_t>(std::size_t(opt.w_max), est.n);
    est.strata.resize(wm + 1);

    // degrees 0 and 1 exactly: uniform location, then uniform variant
    auto& s0 = est.strata[0];
    ShotOutcome o0 = r.variants({});
    s0.exact = true;
    s0.shots = 1;
    s0.f = o0.failed ? 1.0 : 0.0;
    s0.reject = (o0.pre_rejected || o0.post_rejected) ? 1.0 : 0.0;
    if (wm >= 1) {
        auto& s1 = est.strata[1];
        s1.exact = true;
        double f = 0, rej = 0;
        for (std::size_t l = 0; l < dem.n_locations(); ++l) {
            double k = double(dem.variants_at(l));
            for (std::size_t v = dem.first[l]; v < dem.first[l + 1]; ++v) {
                ShotOutcome o = r.variants({v});
                ++s1.shots;
                if (o.pre_rejected || o.post_rejected) {
                    ++s1.rejections;
                    rej += 1 / k;
                } else if (o.failed) {
                    ++s1.failures;
                    f += 1 / k;
                }
            }
        }
        s1.f = f / double(dem.n_locations());
        s1.reject = rej / double(dem.n_locations());
    }

    const std::uint64_t chunk = 1024;
    std::vector<std::uint64_t> next_chunk(wm + 1, 0);
    std::uint64_t used = 0;
    auto sample = [&](std::size_t w, std::uint64_t n_chunks) {
        std::uint64_t base = next_chunk[w];
        Tally t = run_chunks(n_chunks, opt.workers, [&](std::uint64_t k) {
            auto rng = substream(seed ^ (std::uint64_t(w) << 56), base + k);
            Tally c;
            for (std::uint64_t i = 0; i < chunk; ++i) count(c, r.degree(w, rng));
            return c;
        });
        next_chunk[w] += n_chunks;
        used += t.shots;
        auto& s = est.strata[w];
        s.shots += t.shots;
        s.failures += t.failures;
        s.rejections += t.rejections();
        s.f = double(s.failures) / double(s.shots);
        s.reject = double(s.rejections) / double(s.shots);
    };
    for (std::size_t w = 2; w <= wm; ++w) sample(w, (opt.initial + chunk - 1) / chunk);

    const double p_max = *std::max_element(opt.p_grid.begin(), opt.p_grid.end());
    boost::math::binomial_distribution<> bmax(double(est.n), p_max);
    for (;;) {
        bool ok = true;
        for (double p : opt.p_grid) {
            CurvePoint c = est.at(p);
            if (!(c.mean > 0 && c.sigma <= opt.epsilon * c.mean)) ok = false;
        }
        if (ok) {
            est.converged = true;
            break;
        }
        if (used >= opt.budget) break;
        std::vector<double> contrib(wm + 1, 0.0);
        double total = 0;
        for (std::size_t w = 2; w <= wm; ++w) {
            double bw = boost::math::pdf(bmax, double(w));
            contrib[w] = bw * bw * est.strata[w].variance();
            total += contrib[w];
        }
        if (total <= 0) break;
        std::uint64_t batch_chunks = std::max<std::uint64_t>(1, std::min(opt.batch, opt.budget - used) / chunk);
        bool any = false;
        for (std::size_t w = 2; w <= wm; ++w) {
            auto k = std::uint64_t(std::llround(double(batch_chunks) * contrib[w] / total));
            if (k == 0) continue;
            sample(w, k);
            any = true;
        }
        if (!any) {
            auto w = std::size_t(std::max_element(contrib.begin(), contrib.end()) - contrib.begin());
            sample(w, 1);
        }
    }
    for (double p : opt.p_grid) est.curve.push_back(est.at(p));
    return est;
}

double normalize_idle(double raw, int T) {
    if (T < 1) throw UsageError("normalize_idle: T must be at least 1");
    return raw / T;
}

double combinatorial_pseudothreshold(std::size_t n_per_round) {
    if (n_per_round < 1) throw UsageError("combinatorial_pseudothreshold: n must be positive");
    double m = 2.0 * double(n_per_round);
    return 1.0 / (m * (m - 1) / 2);
}

double crossing(const std::function<double(double)>& f, double lo, double hi) {
    double glo = f(lo) - lo, ghi = f(hi) - hi;
    if ((glo > 0) == (ghi > 0)) throw UsageError("crossing: no sign change on the interval");
    for (int it = 0; it < 200 && hi / lo > 1 + 1e-12; ++it) {
        double mid = std::sqrt(lo * hi);
        double g = f(mid) - mid;
        if ((g > 0) == (glo > 0)) {
            lo = mid;
            glo = g;
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw UsageError("loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string csv_header() {
    return "circuit,p_physical,T,idle,postselect,shots,failures,rejections,p_logical,sigma,upper_bound,ci_lo,ci_hi";
}

void write_csv_row(std::ostream& out, const CsvRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%.6g,%d,%s,%d,%llu,%llu,%llu,%.6g,%.6g,%.6g,%.6g,%.6g", r.circuit.c_str(), r.p, r.T,
                  r.idle.c_str(), r.postselect ? 1 : 0, (unsigned long long)r.shots, (unsigned long long)r.failures,
                  (unsigned long long)r.rejections, r.p_logical, r.sigma, r.upper_bound, r.ci_lo, r.ci_hi);
    out << buf << "\n";
}

}  // namespace pmc
