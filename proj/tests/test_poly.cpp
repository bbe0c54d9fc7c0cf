#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bracketeer/poly.hpp"

using namespace bracketeer;

namespace {

MultiPoly A(int k = 1) { return MultiPoly::variable(Var::A, k); }
MultiPoly B(int k = 1) { return MultiPoly::variable(Var::B, k); }
MultiPoly D(int k = 1) { return MultiPoly::variable(Var::d, k); }

MultiPoly edgeless_factor() { return A() * D() + B(); }  // Ad + B

}  // namespace

TEST_CASE("binomial expansion of (Ad+B)^2") {
  MultiPoly p = edgeless_factor().pow(2);
  MultiPoly expected = A(2) * D(2) + A() * B() * D() * Coeff(2) + B(2);
  CHECK(p == expected);
  CHECK(p.to_string() == "A^2*d^2 + 2*A*B*d + B^2");
}

TEST_CASE("p plus its negation is the empty polynomial") {
  MultiPoly p = A(3) - B() * D(2) * Coeff(7) + MultiPoly::constant(5);
  CHECK((p - p).is_zero());
  CHECK((p + (-p)).to_string() == "0");
}

TEST_CASE("exact division by d") {
  SECTION("factor out one d") {
    MultiPoly p = A() * B() * D() * Coeff(2) + B(2) * D(2);
    CHECK(p.divide_by_d() == A() * B() * Coeff(2) + B(2) * D());
  }
  SECTION("difference then division") {
    MultiPoly p = edgeless_factor().swap_vars(Var::A, Var::B);  // A + Bd, via swap of Ad+B
    MultiPoly q = (p.pow(2) - A(2)).divide_by_d();
    CHECK(q == A() * B() * Coeff(2) + B(2) * D());
  }
  SECTION("terms without d are rejected") {
    CHECK_THROWS_AS((A() + B()).divide_by_d(), input_error);
  }
}

TEST_CASE("reduce_single specializes B and d") {
  SECTION("edgeless graphs reduce to (-A^3)^n") {
    for (int n = 0; n <= 6; ++n) {
      OnePoly expected = OnePoly::term(3, -1).pow(n);
      CHECK(reduce_single(edgeless_factor().pow(n)) == expected);
    }
  }
  SECTION("A + Bd reduces to -A^-3") {
    MultiPoly loop_vertex = A() + B() * D();
    CHECK(reduce_single(loop_vertex) == OnePoly::term(-3, -1));
  }
  SECTION("A^2 + 2AB + B^2 d") {
    MultiPoly p = A(2) + A() * B() * Coeff(2) + B(2) * D();
    OnePoly expected = OnePoly::term(2, 1) + OnePoly::term(0, 1) + OnePoly::term(-4, -1);
    CHECK(reduce_single(p) == expected);
  }
}

TEST_CASE("to_jones") {
  SECTION("edgeless factors cancel to 1") {
    for (int n = 0; n <= 5; ++n) {
      QuarterPoly v = to_jones(reduce_single(edgeless_factor().pow(n)), n, 0);
      CHECK(v.is_one());
    }
  }
  SECTION("two-vertex path") {
    MultiPoly p2 = A(2) + A() * B() * Coeff(2) + B(2) * D();
    QuarterPoly v = to_jones(reduce_single(p2), 2, 0);
    QuarterPoly expected;  // t + t^(3/2) - t^(5/2)
    expected.add_term(4, 1);
    expected.add_term(6, 1);
    expected.add_term(10, -1);
    CHECK(v == expected);
    CHECK(v.to_string() == "-t^(5/2) + t^(3/2) + t");
  }
  SECTION("triangle via its reduced bracket") {
    OnePoly k3 = OnePoly::term(-7, 1) + OnePoly::term(-3, -1) + OnePoly::term(5, -1);
    QuarterPoly v = to_jones(k3, 3, 0);
    QuarterPoly expected;  // -t^4 + t^3 + t
    expected.add_term(16, -1);
    expected.add_term(12, 1);
    expected.add_term(4, 1);
    CHECK(v == expected);
    CHECK(v.to_string() == "-t^4 + t^3 + t");
  }
  SECTION("odd exponents violate half-integrality") {
    CHECK_THROWS_AS(to_jones(OnePoly::term(2, 1), 1, 0), invariant_error);
  }
}

TEST_CASE("derivative and evaluation") {
  SECTION("A^6 differentiates to 6 at 1") {
    OnePoly p = OnePoly::term(6, 1);
    CHECK(p.derivative_at_one() == 6);
  }
  SECTION("[K_2](1,1,1) = 4") {
    MultiPoly p = A(2) + A() * B() * Coeff(2) + B(2) * D();
    CHECK(p.eval({1, 1, 1, 1, 1, 1}) == 4);
  }
  SECTION("derivative of a constant vanishes") {
    CHECK(MultiPoly::constant(42).derivative(Var::A).is_zero());
    CHECK(OnePoly::constant(42).derivative_at_one() == 0);
  }
  SECTION("zero at a negative exponent is rejected") {
    CHECK_THROWS_AS(A(-1).eval({0, 1, 1, 1, 1, 1}), input_error);
  }
}

TEST_CASE("canonical text form") {
  MultiPoly p = A(2) * D() + A() * B() * Coeff(2) + B(2) * D();
  CHECK(p.to_string() == "A^2*d + 2*A*B + B^2*d");
  CHECK(A(-3).to_string() == "A^-3");
  CHECK((-A(5) - MultiPoly::constant(1)).to_string() == "-A^5 - 1");
  OnePoly k3 = OnePoly::term(-7, 1) + OnePoly::term(-3, -1) + OnePoly::term(5, -1);
  CHECK(k3.to_string() == "-A^5 - A^-3 + A^-7");
}

TEST_CASE("parse round-trips the canonical form") {
  std::mt19937 rng(99);
  auto random_poly = [&]() {
    MultiPoly p;
    int terms = 1 + static_cast<int>(rng() % 6);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      m.exp(Var::A) = static_cast<int>(rng() % 9) - 4;
      m.exp(Var::B) = static_cast<int>(rng() % 4);
      m.exp(Var::d) = static_cast<int>(rng() % 4);
      if (rng() % 3 == 0) m.exp(Var::x) = static_cast<int>(rng() % 3);
      if (rng() % 3 == 0) m.exp(Var::z) = static_cast<int>(rng() % 5) - 2;
      long c = static_cast<long>(rng() % 2001) - 1000;
      p.add_term(m, Coeff(c));
    }
    return p;
  };
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly p = random_poly();
    CHECK(parse_multipoly(p.to_string()) == p);
  }
  CHECK(parse_multipoly("0").is_zero());
  CHECK_THROWS_AS(parse_multipoly("A +"), input_error);
  CHECK_THROWS_AS(parse_multipoly("w^2"), input_error);
}

TEST_CASE("quarter polynomial text round-trips") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    QuarterPoly p;
    int terms = 1 + static_cast<int>(rng() % 5);
    for (int t = 0; t < terms; ++t) {
      int quarters = 2 * (static_cast<int>(rng() % 21) - 10);  // even quarters only
      long c = static_cast<long>(rng() % 41) - 20;
      p.add_term(quarters, Coeff(c));
    }
    CHECK(parse_quarterpoly(p.to_string()) == p);
  }
  QuarterPoly v;
  v.add_term(16, -1);
  v.add_term(12, 1);
  v.add_term(4, 1);
  CHECK(parse_quarterpoly("-t^4 + t^3 + t") == v);
  CHECK(parse_quarterpoly("1").is_one());
}

TEST_CASE("one-variable parse accepts only A") {
  OnePoly p = parse_onepoly("-A^5 - A^-3 + A^-7");
  CHECK(p == OnePoly::term(-7, 1) + OnePoly::term(-3, -1) + OnePoly::term(5, -1));
  CHECK_THROWS_AS(parse_onepoly("A + B"), input_error);
}
