#include <doctest.h>

#include "pmc/bits.hpp"
#include "pmc/circuit.hpp"
#include "pmc/gf2.hpp"
#include "pmc/pauli.hpp"

using namespace pmc;

TEST_CASE("pauli strings multiply and commute") {
    PauliString a = PauliString::parse("XZZXI"), b = PauliString::parse("IXZZX");
    CHECK(a.commutes_with(b));
    CHECK(PauliString::parse("XI").anticommutes(PauliString::parse("ZI")));
    CHECK(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
    CHECK((PauliString::parse("XZ") * PauliString::parse("ZZ")).str() == "YI");
    CHECK(a.weight() == 4);
    CHECK(PauliString::parse(a.str()) == a);
    CHECK_THROWS(PauliString::parse("XQ"));
    CHECK_THROWS(PauliString::parse("XX").commutes_with(PauliString::parse("XXX")));
}

TEST_CASE("bit vectors") {
    BitVec v(130);
    v.set(0);
    v.set(129);
    CHECK(v.count() == 2);
    CHECK(v.first() == 0);
    CHECK(v.last() == 129);
    CHECK(v.ones() == std::vector<std::size_t>{0, 129});
    CHECK(!v.parity());
    BitVec w = v;
    w.flip(64);
    CHECK((v ^ w).ones() == std::vector<std::size_t>{64});
    CHECK(v.slice(120, 130).ones() == std::vector<std::size_t>{9});
}

TEST_CASE("gf2 rank and solve") {
    BitMatrix m(3, 4);
    m.rows[0].set(0);
    m.rows[0].set(1);
    m.rows[1].set(1);
    m.rows[1].set(2);
    m.rows[2] = m.rows[0] ^ m.rows[1];
    CHECK(rank_gf2(m) == 2);

    BitVec rhs(4);
    rhs.set(0);
    rhs.set(2);
    auto x = solve_gf2(m, rhs);
    REQUIRE(x);
    BitVec acc(4);
    for (auto r : x->ones()) acc ^= m.rows[r];
    CHECK(acc == rhs);
    BitVec bad(4);
    bad.set(3);
    CHECK(!solve_gf2(m, bad));

    Gf2Basis basis(4, 3);
    CHECK(basis.add(m.rows[0]));
    CHECK(basis.add(m.rows[1]));
    CHECK(!basis.add(m.rows[2]));
    CHECK(basis.contains(rhs));
    CHECK(basis.rank() == 2);
}

TEST_CASE("circuit text format") {
    Circuit c = parse_circuit("qubits 2\nM Z 0\ntick\nM2 X 0 X 1\n");
    CHECK(c.n_qubits() == 2);
    CHECK(c.n_steps() == 2);
    CHECK(c.n_meas() == 2);
    CHECK(c.observable(1).str() == "XX");
    CHECK(parse_circuit(serialize_circuit(c)) == c);

    Circuit trailing = parse_circuit("qubits 1\nM Z 0\ntick\n");
    CHECK(trailing.n_steps() == 1);
    Circuit gap = parse_circuit("qubits 1\nM Z 0\ntick\ntick\nM X 0\n");
    CHECK(gap.n_steps() == 3);
    CHECK(parse_circuit(serialize_circuit(gap)) == gap);
}

TEST_CASE("circuit parse errors") {
    CHECK_THROWS_AS(parse_circuit("M Z 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nM Q 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nM Z 5\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nM Z 0\nM Z 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nM2 X 0 X 0\n"), ParseError);
}

TEST_CASE("location counts") {
    Circuit c = parse_circuit("qubits 3\nM Z 0\ntick\nM2 X 0 X 1\n");
    LocationCounts none = count_locations(c, IdleConvention::none);
    CHECK(none.n_meas == 2);
    CHECK(none.n_idle == 0);
    LocationCounts idle = count_locations(c, IdleConvention::untouched);
    CHECK(idle.n_idle == 3);
    CHECK(idle.n_total == 5);
}
