#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pmc/sampling.hpp"

using namespace pmc;

TEST_CASE("failure polynomial") {
    std::vector<double> f2(3, 0.0);
    f2[2] = 1;
    double want = 112.0 * 111 / 2 * 1e-8 * std::pow(1 - 1e-4, 110);
    CHECK(eval_polynomial(f2, 112, 1e-4) == doctest::Approx(want).epsilon(1e-9));
    CHECK(eval_polynomial(f2, 112, 1e-4) == doctest::Approx(6.21e-5).epsilon(2e-3));
    CHECK(eval_polynomial(std::vector<double>(113, 1.0), 112, 3e-3) == doctest::Approx(1.0));
    CHECK(eval_polynomial(std::vector<double>(10, 0.0), 112, 3e-3) == 0.0);
    CHECK_THROWS_AS(eval_polynomial(f2, 112, 1.5), UsageError);
    CHECK(truncation_tail(112, 1e-4, 200) == 0.0);
    CHECK(truncation_tail(112, 0.5, 2) == doctest::Approx(1.0));
}

TEST_CASE("idle normalization") {
    CHECK(normalize_idle(0, 3) == 0);
    CHECK(normalize_idle(0.25, 1) == 0.25);
    CHECK_THROWS_AS(normalize_idle(0.1, 0), UsageError);
    // raw(2T) = a 2T + b normalizes toward 2a
    const double a = 1e-4, b = 3e-4;
    double prev = 1;
    for (int T : {1, 10, 100, 1000}) {
        double err = std::abs(normalize_idle(a * 2 * T + b, T) - 2 * a);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("combinatorial pseudothresholds") {
    CHECK(combinatorial_pseudothreshold(56) == doctest::Approx(1.0 / (112.0 * 111 / 2)));
    CHECK(combinatorial_pseudothreshold(56) == doctest::Approx(1.61e-4).epsilon(0.01));
    CHECK(combinatorial_pseudothreshold(118) == doctest::Approx(3.6e-5).epsilon(0.01));
    CHECK(combinatorial_pseudothreshold(236) == doctest::Approx(9e-6).epsilon(0.01));
}

TEST_CASE("crossing and slope helpers") {
    auto quad = [](double p) { return 1e4 * p * p; };
    CHECK(crossing(quad, 1e-7, 1e-2) == doctest::Approx(1e-4).epsilon(1e-6));
    CHECK_THROWS_AS(crossing(quad, 1e-7, 1e-5), UsageError);
    CHECK(loglog_slope({1e-5, 1e-4, 1e-3}, {1e-6, 1e-4, 1e-2}) == doctest::Approx(2.0));
}

TEST_CASE("beta posterior summary") {
    Tally t;
    t.shots = 1000;
    DirectEstimate d = beta_summary(t);
    CHECK(d.ci_lo < 1e-6);
    CHECK(d.median > 0);
    CHECK(d.median < d.ci_hi);
    CHECK(d.ci_hi < 5e-3);
    t.failures = 100;
    d = beta_summary(t);
    CHECK(d.median == doctest::Approx(0.1).epsilon(0.01));
    CHECK(d.ci_lo < 0.1);
    CHECK(d.ci_hi > 0.1);
}

TEST_CASE("csv output") {
    CHECK(csv_header() ==
          "circuit,p_physical,T,idle,postselect,shots,failures,rejections,p_logical,sigma,upper_bound,ci_lo,ci_hi");
    CsvRow r;
    r.circuit = "53-square";
    r.p = 1e-4;
    r.T = 2;
    r.idle = "none";
    r.shots = 10;
    r.p_logical = 2.5e-6;
    std::ostringstream out;
    write_csv_row(out, r);
    CHECK(out.str() == "53-square,0.0001,2,none,0,10,0,0,2.5e-06,0,0,0,0\n");
}

TEST_CASE("sampling reproducibility and sanity") {
    Experiment e = make_idle_experiment(RoundKind::five_three_square, 2, IdleConvention::none);
    ErrorModel dem = build_error_model(e);
    ExperimentDecoder dec(e, dem);
    ShotRunner runner(e, dem, dec, DecoderMode::ec);

    SUBCASE("noiseless shots never fail") {
        DirectEstimate d = run_direct(runner, 0.0, 5000, 1, 2);
        CHECK(d.tally.failures == 0);
        CHECK(d.tally.shots == 5000);
        CHECK_THROWS_AS(run_direct(runner, 1e-3, 0, 1), UsageError);
    }
    SUBCASE("direct totals do not depend on workers") {
        DirectEstimate a = run_direct(runner, 3e-3, 40000, 9, 1), b = run_direct(runner, 3e-3, 40000, 9, 4);
        CHECK(a.tally.failures == b.tally.failures);
        CHECK(a.tally.failures > 0);
        CHECK(a.median == b.median);
    }
    SUBCASE("stratified estimates") {
        StratifiedOptions o;
        o.p_grid = {1e-5, 1e-4, 3e-4, 1e-3};
        o.budget = 400000;
        o.workers = 1;
        StratifiedEstimate a = run_stratified(runner, o, 4);
        o.workers = 3;
        StratifiedEstimate b = run_stratified(runner, o, 4);
        REQUIRE(a.strata.size() == b.strata.size());
        for (std::size_t w = 0; w < a.strata.size(); ++w) {
            CHECK(a.strata[w].shots == b.strata[w].shots);
            CHECK(a.strata[w].failures == b.strata[w].failures);
        }
        CHECK(a.strata[0].f == 0);
        CHECK(a.strata[1].exact);
        CHECK(a.strata[1].f == 0);
        double prev = 0;
        for (auto& c : a.curve) {
            CHECK(c.upper_bound >= c.mean);
            CHECK(c.mean >= prev);
            prev = c.mean;
        }
        o.w_max = 1;
        CHECK_THROWS_AS(run_stratified(runner, o, 4), UsageError);
    }
    SUBCASE("stratified and direct bands overlap") {
        StratifiedOptions o;
        o.p_grid = {3e-4};
        o.workers = 0;
        CurvePoint s = run_stratified(runner, o, 21).curve.front();
        DirectEstimate d = run_direct(runner, 3e-4, 2'000'000, 22, 0);
        CHECK(s.mean - 1.96 * s.sigma <= d.ci_hi);
        CHECK(s.mean + 1.96 * s.sigma >= d.ci_lo);
    }
}
