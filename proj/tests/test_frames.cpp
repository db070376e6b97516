#include <doctest.h>

#include <random>

#include "pmc/codes.hpp"
#include "pmc/detectors.hpp"
#include "pmc/oracle.hpp"
#include "pmc/tableau.hpp"

using namespace pmc;

TEST_CASE("tableau measurements") {
    std::mt19937_64 rng(3);
    Tableau t = Tableau::init_zero(2);
    auto z0 = PauliString::single(2, 0, Pauli::Z), x0 = PauliString::single(2, 0, Pauli::X);
    MeasureResult r = t.measure(z0, rng);
    CHECK(r.deterministic);
    CHECK(!r.outcome);
    MeasureResult rx = t.measure(x0, rng, true);
    CHECK(!rx.deterministic);
    CHECK(rx.outcome);
    CHECK(t.peek(x0) == std::optional<bool>(true));
    t.apply_pauli(PauliString::single(2, 0, Pauli::Z));
    CHECK(t.peek(x0) == std::optional<bool>(false));
    CHECK(!t.peek(z0));
    CHECK(t.valid());
    MeasureResult xx = t.measure(PauliString::parse("XX"), rng);
    CHECK(!xx.deterministic);
    CHECK(t.measure(PauliString::parse("XX"), rng).outcome == xx.outcome);
}

TEST_CASE("frame propagation") {
    Circuit c = parse_circuit("qubits 2\nM Z 0\ntick\nM2 X 0 X 1\ntick\nM Z 1\n");
    FaultConfig f = parse_fault_config(c, "F meas1 0 XI 0\n");
    Propagation p = propagate(c, f);
    CHECK(p.flips.ones() == std::vector<std::size_t>{});
    CHECK(p.residual.str() == "XI");
    FaultConfig g = parse_fault_config(c, "F meas1 0 ZI 1\nF idle 1 1 IX 0\n");
    Propagation q = propagate(c, g);
    CHECK(q.flips.ones() == std::vector<std::size_t>{0, 1, 2});
    CHECK(parse_fault_config(c, format_fault_config(g)).faults.size() == 2);
    CHECK_THROWS(parse_fault_config(c, "F meas1 0 IX 0\n"));
}

TEST_CASE("pushed residual of an aux pair fault in the 5+2 round") {
    Circuit c = build_52_round();
    const int n = c.n_qubits();
    FaultConfig f;
    f.faults.push_back({{LocKind::meas2, 2, c.first_index(2)}, PauliString::pair(n, kAuxA, Pauli::X, kAuxB, Pauli::X),
                        false});
    CHECK(pushed_residual(c, f, kDataMask) == PauliString::pair(n, 1, Pauli::Z, 2, Pauli::Z));
}

TEST_CASE("[[8,3,2]] single-qubit X residuals are detected") {
    Circuit c = build_color832_x8();
    const int n = c.n_qubits();
    std::size_t seen = 0;
    for (auto& l : fault_locations(c, NoiseModel::uniform(c, 0, IdleConvention::untouched)))
        for (auto& v : enumerate_variants(c, l)) {
            PauliString r = pushed_residual(c, FaultConfig{{v}}, 0xff);
            CHECK(r.weight() <= 1);
            if (r.x_part().is_identity()) continue;
            bool hit = false;
            for (auto& g : color832_z_generators()) hit |= r.anticommutes(embed(g, n));
            CHECK(hit);
            ++seen;
        }
    CHECK(seen > 0);
}

TEST_CASE("noiseless detectors have even parity") {
    for (auto layout : {Layout::square, Layout::straightline}) {
        Circuit c = build_repeated(build_53_round(layout), 2, Boundary::bare);
        DetectorSet d = find_detectors(c);
        REQUIRE(d.size() > 0);
        for (std::uint64_t s = 0; s < 50; ++s) {
            std::mt19937_64 rng(s);
            Tableau t = Tableau::init_zero(c.n_qubits());
            OutcomeRecord r = run(t, c, FaultConfig{}, rng);
            for (auto& det : d.detectors) {
                bool p = false;
                for (auto i : det.members) p ^= r.outcome[i];
                CHECK(!p);
            }
        }
    }
}

TEST_CASE("syndromes are linear in faults") {
    Circuit c = build_repeated(build_53_round(Layout::square), 2, Boundary::bare);
    DetectorSet d = find_detectors(c);
    NoiseModel m = NoiseModel::uniform(c, 0, IdleConvention::untouched);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        FaultConfig f = sample_uniform_degree(c, m, 3, rng);
        BitVec acc(d.size());
        for (auto& e : f.faults) acc ^= syndrome_of(c, d, FaultConfig{{e}});
        CHECK(acc == syndrome_of(c, d, f));
    }
}

TEST_CASE("frame agrees with the tableau") {
    Circuit c = build_53_round(Layout::straightline);
    NoiseModel m = NoiseModel::uniform(c, 0, IdleConvention::untouched);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        FaultConfig f = sample_uniform_degree(c, m, 1 + k % 4, rng);
        OracleReport r = compare_with_oracle(c, f, {}, std::uint64_t(k));
        CHECK(r.mismatches == 0);
        CHECK(r.state_ok);
    }
}

TEST_CASE("frame agrees with the tableau under feed-forward") {
    ClosedCircuit cc = build_prep_idle_measure_full();
    REQUIRE(!cc.rules.empty());
    NoiseModel m = NoiseModel::uniform(cc.circuit, 0, IdleConvention::untouched);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        FaultConfig f = sample_uniform_degree(cc.circuit, m, 1 + k % 3, rng);
        OracleReport r = compare_with_oracle(cc.circuit, f, cc.rules, std::uint64_t(k));
        CHECK(r.mismatches == 0);
        CHECK(r.state_ok);
    }
}
