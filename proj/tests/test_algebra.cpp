#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "asinv/rational.hpp"

using namespace asinv;

TEST_CASE("ext_field modulus and validation") {
  CHECK(ext_field(5, 1).q() == 5);
  CHECK(ext_field(5, 1).modulus_string() == "t");
  CHECK(ext_field(3, 2).modulus_string() == "t^2+1");
  CHECK_THROWS_AS(ext_field(4, 1), InputError);
  CHECK_THROWS_AS(ext_field(2, 1), InputError);
  CHECK(&ext_field(3, 2) == &ext_field(3, 2));
}

TEST_CASE("pth_root examples") {
  const auto& f3 = ext_field(3, 1);
  CHECK(f3.from_int(2).pth_root() == f3.from_int(2));
  CHECK(f3.zero().pth_root() == f3.zero());
  const auto& f9 = ext_field(3, 2);
  const Fq t = f9.gen();
  CHECK(t.pth_root() == f9.from_int(2) * t);
}

TEST_CASE("pth_root is exhaustive inverse of Frobenius for q <= 81") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}}) {
    const auto& F = ext_field(p, k);
    for (const Fq& x : F.elements()) CHECK(x.pth_root().frobenius() == x);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}}) {
    const auto& F = ext_field(p, k);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const Fq a = F.random(rng), b = F.random(rng), c = F.random(rng);
      if ((a + b) + c != a + (b + c)) ++bad;
      if ((a * b) * c != a * (b * c)) ++bad;
      if (a * (b + c) != a * b + a * c) ++bad;
      if (!a.is_zero() && !(a * a.inv()).is_one()) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("polynomial parse, render and arithmetic") {
  const auto& F = ext_field(3, 1);
  auto v = make_vars({"a", "b"});
  MultiPoly f = parse_poly("a*b + 2*a^4 + b^4", F, v);
  CHECK(f.to_string() == "2*a^4+b^4+a*b");
  CHECK(parse_poly(f.to_string(), F, v) == f);
  MultiPoly g = parse_poly("a + b", F, v);
  CHECK((g * g).to_string() == "a^2+2*a*b+b^2");
  CHECK(g.pow(3) == parse_poly("a^3+b^3", F, v));
  CHECK_THROWS_AS(parse_poly("a + ", F, v), ParseError);
  CHECK_THROWS_AS(parse_poly("c", F, v), ParseError);
  const auto& F9 = ext_field(3, 2);
  MultiPoly h = parse_poly("(2*t+1)*a + t", F9, v);
  CHECK(parse_poly(h.to_string(), F9, v) == h);
}

TEST_CASE("gcd and exact division") {
  const auto& F = ext_field(5, 1);
  auto v = make_vars({"x", "y", "z"});
  auto P = [&](const char* s) { return parse_poly(s, F, v); };
  MultiPoly a = P("x^2*y + z^3 + 1"), b = P("x - y*z + 3"), c = P("x*z + y^2");
  CHECK(gcd(a * b, a * c) == a.monic());
  CHECK(gcd(a * b * b, b * c) == b.monic());
  CHECK(gcd(a, c).is_constant());
  CHECK(exact_div(a * c, c) == a);
  CHECK_THROWS_AS(exact_div(a, b), VerificationError);
  CHECK(gcd(P("x^3*y^2"), P("x*y^5 + x^2*y^2")) == P("x*y^2"));
}

TEST_CASE("rational normal form and equality") {
  const auto& F = ext_field(5, 1);
  auto v = make_vars({"x", "theta"});
  RationalFn r = parse_rational("(x^2-1)/(x-1)", F, v);
  CHECK(r.to_string() == "x+1");
  CHECK(rational_equal(parse_rational("x/x", F, v), parse_rational("1", F, v)));
  CHECK_FALSE(rational_equal(parse_rational("1/theta", F, v), parse_rational("theta", F, v)));
  RationalFn a = parse_rational("(2*x+2)/(3*theta*x+3*theta)", F, v);
  RationalFn b = parse_rational("4/theta", F, v);
  CHECK(a == b);  // canonical representation
  CHECK_THROWS_AS(parse_rational("x/(theta-theta)", F, v), ParseError);
}

TEST_CASE("substitute respects ring structure") {
  const auto& F = ext_field(7, 1);
  auto v = make_vars({"a", "b", "c"});
  auto w = make_vars({"u", "s"});
  Assignment asg{{"a", parse_rational("u/(s+1)", F, w)},
                 {"b", parse_rational("u*s - 2", F, w)},
                 {"c", parse_rational("1/(u-s)", F, w)}};
  std::mt19937_64 rng(3);
  auto random_poly = [&]() {
    MultiPoly f(F, v);
    for (int i = 0; i < 4; ++i) {
      Exponents e{std::uint32_t(rng() % 3), std::uint32_t(rng() % 3), std::uint32_t(rng() % 3)};
      f.add_term(e, F.random(rng));
    }
    return f;
  };
  for (int i = 0; i < 20; ++i) {
    MultiPoly f = random_poly(), g = random_poly();
    CHECK(substitute(f * g, asg) == substitute(f, asg) * substitute(g, asg));
    CHECK(substitute(f + g, asg) == substitute(f, asg) + substitute(g, asg));
  }
  // renaming
  auto xv = make_vars({"b", "x"});
  auto uv = make_vars({"b", "u"});
  Assignment ren{{"b", RationalFn::variable(F, xv, "b")}, {"u", RationalFn::variable(F, xv, "x")}};
  CHECK(substitute(parse_poly("b*u", F, uv), ren).to_string() == "b*x");
}

TEST_CASE("echelon") {
  const auto& F = ext_field(3, 1);
  auto v = make_vars({"a", "b"});
  Echelon E;
  CHECK(E.insert(parse_poly("a^2+b^2", F, v)));
  CHECK(E.insert(parse_poly("a^2+a*b", F, v)));
  CHECK(E.contains(parse_poly("a*b+2*b^2", F, v)));
  CHECK_FALSE(E.contains(parse_poly("a*b", F, v)));
  CHECK(E.rank() == 2);
}
