// One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "pmc/codes.hpp"
#include "pmc/decode.hpp"
#include "pmc/oracle.hpp"
#include "pmc/sampling.hpp"
#include "pmc/tableau.hpp"

using namespace pmc;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(name, ok, detail);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// uncorrected accepted degree-1 variants
std::size_t uncorrected(const Experiment& e, const ErrorModel& dem, const LookupTable& t) {
    std::size_t bad = 0;
    for (std::size_t v = 0; v < dem.n_variants(); ++v) {
        if (dem.pre[v].any()) continue;
        auto* hit = t.find(dem.syndrome[v]);
        if (!hit || e.failed(hit->logical ^ dem.logical[v])) ++bad;
    }
    return bad;
}

// minimal weight of p times any element of the group generated by gens
int coset_min_weight(const PauliString& p, const std::vector<PauliString>& gens) {
    int best = p.weight();
    for (std::uint32_t s = 1; s < (1u << gens.size()); ++s) {
        PauliString q = p;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (s >> j & 1) q *= gens[j];
        best = std::min(best, q.weight());
    }
    return best;
}

bool in_span(const PauliString& p, const std::vector<PauliString>& gens) {
    return coset_min_weight(p, gens) == 0;
}

struct IdleCurve {
    double slope = 0, cross = 0;
    bool converged = false;
};

IdleCurve idle_curve(IdleConvention idle) {
    const int T = 4;
    Experiment e = make_idle_experiment(RoundKind::five_three_square, T, idle);
    ErrorModel dem = build_error_model(e);
    ExperimentDecoder dec(e, dem);
    ShotRunner r(e, dem, dec, DecoderMode::ec);
    StratifiedOptions o;
    o.p_grid = {3e-5, 1e-4, 3e-4};
    o.workers = 0;
    StratifiedEstimate est = run_stratified(r, o, 1);
    std::vector<double> x, y;
    for (auto& c : est.curve) {
        x.push_back(c.p);
        y.push_back(c.mean);
    }
    IdleCurve out;
    out.converged = est.converged;
    out.slope = loglog_slope(x, y);
    out.cross = crossing([&](double p) { return normalize_idle(est.at(p).mean, T); }, 1e-7, 1e-2);
    return out;
}

}  // namespace

int main() {
    check("structural counts", [](std::string& d) {
        Circuit sq = build_53_round(Layout::square), r52 = build_52_round(), xx = build_xx_half_block();
        d = fmt("53-square %g steps %g meas, ", double(sq.n_steps()), double(sq.n_meas())) +
            fmt("52 %g steps, xx half-block %g meas", double(r52.n_steps()), double(xx.n_meas()));
        return sq.n_steps() == 28 && sq.n_meas() == 56 && r52.n_steps() == 16 && xx.n_meas() == 118;
    });

    check("noiseless detectors even", [](std::string& d) {
        auto t0 = std::chrono::steady_clock::now();
        Circuit c = build_repeated(build_53_round(Layout::square), 2, Boundary::bare);
        DetectorSet dets = find_detectors(c);
        std::size_t odd = 0;
        for (std::uint64_t s = 0; s < 1000; ++s) {
            std::mt19937_64 rng(s);
            Tableau t = Tableau::init_zero(c.n_qubits());
            OutcomeRecord rec = run(t, c, FaultConfig{}, rng);
            for (auto& det : dets.detectors) {
                bool par = false;
                for (auto i : det.members) par ^= rec.outcome[i];
                odd += par;
            }
        }
        double secs = seconds_since(t0);
        d = fmt("%g detectors, %g odd parities over 1000 runs, %.2f s", double(dets.size()), double(odd), secs);
        return dets.size() > 0 && odd == 0 && secs < 30;
    });

    check("degree-1 lookup, 3 noisy rounds", [](std::string& d) {
        Experiment e = make_window_experiment(RoundKind::five_three_square, 3, IdleConvention::none);
        ErrorModel dem = build_error_model(e);
        LookupTable t = build_lookup(dem, 1);
        std::size_t bad = uncorrected(e, dem, t);
        d = fmt("%g variants, %g collisions, %g uncorrected", double(dem.n_variants()), double(t.collisions.size()),
                double(bad));
        return t.collisions.empty() && bad == 0;
    });

    check("fault distance, 2 noisy rounds", [](std::string& d) {
        Experiment e = make_window_experiment(RoundKind::five_three_square, 2, IdleConvention::none);
        ErrorModel dem = build_error_model(e);
        DistanceResult r = fault_distance(dem, 3);
        d = fmt("d_f = %g (searched to %g)", double(r.d_f), double(r.searched));
        return r.d_f == 3;
    });

    check("5+2 negative control", [](std::string& d) {
        Experiment e = make_window_experiment(RoundKind::five_two, 2, IdleConvention::none);
        ErrorModel dem = build_error_model(e);
        LookupTable t = build_lookup(dem, 1);

        Circuit c = build_52_round();
        const int n = c.n_qubits();
        FaultConfig f;
        f.faults.push_back({{LocKind::meas2, 2, c.first_index(2)}, PauliString::pair(n, kAuxA, Pauli::X, kAuxB, Pauli::X),
                            false});
        PauliString res = pushed_residual(c, f, kDataMask);
        PauliString z23 = PauliString::pair(n, 1, Pauli::Z, 2, Pauli::Z);
        bool equiv = in_span(res * z23, CodeSpec::five_qubit(n, 0, 2).stabilizers);
        d = fmt("%g degree-1 collisions, ", double(t.collisions.size())) + "pushed residual " + res.str();
        return !t.collisions.empty() && equiv;
    });

    check("combinatorial pseudothresholds", [](std::string& d) {
        double a = combinatorial_pseudothreshold(56), b = combinatorial_pseudothreshold(118),
               c = combinatorial_pseudothreshold(236);
        d = fmt("%.3g %.3g %.3g", a, b, c);
        auto near = [](double x, double want) { return std::abs(x - want) <= 0.05 * want; };
        return near(a, 1.6e-4) && near(b, 3.6e-5) && near(c, 9e-6);
    });

    check("stratified idle, no idle noise", [](std::string& d) {
        IdleCurve c = idle_curve(IdleConvention::none);
        d = fmt("slope %.3f, crossing %.3g, converged %g", c.slope, c.cross, double(c.converged));
        return std::abs(c.slope - 2.0) <= 0.3 && c.cross >= 1e-4 && c.cross <= 4e-4;
    });

    check("stratified idle, untouched idle noise", [](std::string& d) {
        IdleCurve c = idle_curve(IdleConvention::untouched);
        d = fmt("slope %.3f, crossing %.3g, converged %g", c.slope, c.cross, double(c.converged));
        return c.cross >= 3e-6 && c.cross <= 3e-5;
    });

    check("closed circuit, EC vs post-selection", [](std::string& d) {
        bool ok = true;
        for (auto idle : {IdleConvention::none, IdleConvention::untouched}) {
            Experiment e = make_closed_experiment(idle);
            ErrorModel dem = build_error_model(e);
            ExperimentDecoder dec(e, dem);
            double rate[2];
            for (auto mode : {DecoderMode::ec, DecoderMode::ec_postselect}) {
                ShotRunner r(e, dem, dec, mode);
                rate[mode == DecoderMode::ec] = run_direct(r, 1e-3, 1'000'000, 7, 0).median;
            }
            double ratio = rate[1] / rate[0];
            d += to_string(idle) + fmt(": EC %.3g, post %.3g, ratio %.2f; ", rate[1], rate[0], ratio);
            ok &= idle == IdleConvention::none ? ratio >= 5 && ratio <= 20 : ratio >= 2 && ratio <= 8;
        }
        return ok;
    });

    check("[[8,3,2]] residuals detected", [](std::string& d) {
        Circuit c = build_color832_x8();
        const int n = c.n_qubits();
        std::vector<PauliString> zgens, group;
        for (auto& g : color832_z_generators()) zgens.push_back(embed(g, n));
        group = zgens;
        group.push_back(embed(color832_x_stabilizer(), n));
        const std::uint64_t data = 0xff;
        std::size_t nontrivial = 0, missed = 0;
        for (auto& l : fault_locations(c, NoiseModel::uniform(c, 0, IdleConvention::untouched)))
            for (auto& v : enumerate_variants(c, l)) {
                PauliString res = pushed_residual(c, FaultConfig{{v}}, data);
                if (coset_min_weight(res, group) < 2) continue;
                ++nontrivial;
                bool seen = false;
                for (auto& g : zgens) seen |= res.anticommutes(g);
                missed += !seen;
            }
        d = fmt("%g nontrivial residuals, %g undetected", double(nontrivial), double(missed));
        return missed == 0;
    });

    check("frame vs tableau", [](std::string& d) {
        Circuit c = build_53_round(Layout::square);
        NoiseModel m = NoiseModel::uniform(c, 0, IdleConvention::untouched);
        std::size_t configs = 0, bad = 0, compared = 0;
        std::uint64_t seed = 0;
        for (auto& l : fault_locations(c, m))
            for (auto& v : enumerate_variants(c, l)) {
                OracleReport r = compare_with_oracle(c, FaultConfig{{v}}, {}, ++seed);
                ++configs;
                compared += r.deterministic;
                bad += !r.ok();
            }
        std::mt19937_64 rng(2024);
        for (int k = 0; k < 10000; ++k) {
            std::size_t w = 1 + rng() % 4;
            FaultConfig f = sample_uniform_degree(c, m, w, rng);
            OracleReport r = compare_with_oracle(c, f, {}, ++seed);
            ++configs;
            compared += r.deterministic;
            bad += !r.ok();
        }
        d = fmt("%g configs, %g deterministic outcomes compared, %g disagreements", double(configs), double(compared),
                double(bad));
        return bad == 0;
    });

    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
