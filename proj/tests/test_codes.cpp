#include <doctest.h>

#include <random>

#include "pmc/codes.hpp"
#include "pmc/tableau.hpp"

using namespace pmc;

TEST_CASE("round sizes") {
    Circuit sq = build_53_round(Layout::square);
    CHECK(sq.n_steps() == 28);
    CHECK(sq.n_meas() == 56);
    Circuit sl = build_53_round(Layout::straightline);
    CHECK(sl.n_meas() == 56);
    Circuit r52 = build_52_round();
    CHECK(r52.n_steps() == 16);
    CHECK(r52.n_meas() == 28);
    CHECK(build_xx_half_block().n_meas() == 118);
}

TEST_CASE("repetition") {
    Circuit sq = build_53_round(Layout::square);
    CHECK(build_repeated(sq, 1, Boundary::bare) == sq);
    Circuit r3 = build_repeated(sq, 3, Boundary::bare);
    CHECK(r3.n_steps() == 84);
    CHECK(r3.n_meas() == 168);
    // two ideal pad rounds around the noisy ones, plus the closing step
    CHECK(build_repeated(sq, 3, Boundary::ideal_padded).n_steps() == 28 * 5 + 1);
    Circuit padded = build_repeated(sq, 2, Boundary::ideal_padded);
    CHECK(padded.annotation("padding").size() == 2 * 56);
    CHECK_THROWS_AS(build_repeated(sq, 0, Boundary::bare), UsageError);
}

TEST_CASE("five-qubit code spec") {
    CodeSpec s = CodeSpec::five_qubit();
    CHECK(s.stabilizers.size() == 4);
    CHECK_NOTHROW(s.validate());
    CodeSpec broken = s;
    broken.stabilizers.push_back(embed(PauliString::parse("XIIII"), kPatchQubits));
    CHECK_THROWS_AS(broken.validate(), UsageError);
}

TEST_CASE("named circuits build and round-trip") {
    for (auto& name : circuit_names()) {
        CAPTURE(name);
        Circuit c = build_by_name(name);
        CHECK(c.n_meas() > 0);
        CHECK(parse_circuit(serialize_circuit(c)) == c);
    }
    CHECK_THROWS_AS(build_by_name("nope"), UsageError);
}

TEST_CASE("teleportation byproducts") {
    Circuit c = build_teleport();
    auto parity = [](const OutcomeRecord& r, const std::vector<std::size_t>& idx) {
        bool p = false;
        for (auto i : idx) p ^= r.outcome[i];
        return p;
    };
    const PauliString zA = PauliString::single(3, 2, Pauli::Z), xA = PauliString::single(3, 2, Pauli::X);
    for (std::uint64_t s = 0; s < 50; ++s) {
        std::mt19937_64 rng(s);
        // |0> on D arrives as a Z eigenstate with sign set by the X byproduct
        Tableau t = Tableau::init_zero(3);
        OutcomeRecord r = run(t, c, FaultConfig{}, rng);
        REQUIRE(t.peek(zA));
        CHECK(*t.peek(zA) == parity(r, c.annotation("byproduct-x")));
        // |+> on D arrives as an X eigenstate with sign set by the Z byproduct
        Tableau u = Tableau::init_zero(3);
        u.measure(PauliString::single(3, 0, Pauli::X), rng, false);
        OutcomeRecord q = run(u, c, FaultConfig{}, rng);
        REQUIRE(u.peek(xA));
        CHECK(*u.peek(xA) == parity(q, c.annotation("byproduct-z")));
    }
}

TEST_CASE("SH protocol permutes data roles") {
    ShProtocol sh = build_sh_protocol();
    CHECK(sh.role_holder == std::array<int, 5>{4, 0, 1, 2, 3});
}

TEST_CASE("[[8,3,2]] generators") {
    auto z = color832_z_generators();
    PauliString x = color832_x_stabilizer();
    CHECK(z.size() == 4);
    CHECK(x.weight() == 8);
    for (auto& g : z) CHECK(g.commutes_with(x));
    CHECK(build_color832_x8().annotation("outcome").size() > 0);
}
