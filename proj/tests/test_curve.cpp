#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asinv/curve.hpp"
#include "asinv/errors.hpp"
#include "test_util.hpp"

using namespace asinv;
using asinv::testing::random_curve;
using asinv::testing::random_lambda;
using asinv::testing::random_mobius;

namespace {

ASCurve C(const std::string& s) { return parse_curve(s); }

IsomorphismData iso(const Mobius& M, const Fq& lambda) { return {M, lambda, {}, {}}; }

}  // namespace

TEST_CASE("eliminate_p_powers examples") {
  const FieldCtx& F = ext_field(3, 1);
  auto mk = [&](std::vector<std::int64_t> c) {
    Pole p;
    for (auto x : c) p.tail.push_back(F.from_int(x));
    return ASCurve(F, {p});
  };
  std::vector<Pole> h;
  CHECK(render_curve(eliminate_p_powers(mk({0, 0, 1}), h)) == "p=3; x");
  REQUIRE(h.size() == 1);
  CHECK(h[0].tail.size() == 1);
  CHECK(render_curve(eliminate_p_powers(mk({0, 0, 0, 0, 0, 0, 0, 0, 1}))) == "p=3; x");
  CHECK_THROWS_AS(eliminate_p_powers(mk({0, 1, 0, 0, 0, 2})), DomainError);
  // finite pole: 1/x^3 -> 1/x
  CHECK(render_curve(eliminate_p_powers(C("p=3; x + 1/x^3"))) == "p=3; x + 1/x");
}

TEST_CASE("eliminate_p_powers is idempotent") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u}) {
    const FieldCtx& F = ext_field(p, 2);
    for (int it = 0; it < 200; ++it) {
      std::vector<Pole> poles(2);
      poles[0].tail.resize(2 * p + 1);
      for (auto& x : poles[0].tail) x = F.random(rng);
      poles[0].tail.back() = F.one();
      poles[1].at_infinity = false;
      poles[1].location = F.one();
      poles[1].tail = {F.random(rng), F.random(rng), F.random(rng), F.one()};
      ASCurve c(F, poles);
      const ASCurve once = eliminate_p_powers(c);
      CHECK(eliminate_p_powers(once) == once);
    }
  }
}

TEST_CASE("parse and render") {
  std::vector<std::string> w;
  ASCurve c = parse_curve("p=3; x^2 + 1*x + 1/x", &w);
  CHECK(w.empty());
  CHECK(c.orders() == std::vector<std::uint32_t>{2, 1});
  CHECK(c.pole_at_infinity()->coeff(1).is_one());
  CHECK(c.pole_at(c.ctx().zero())->coeff(1).is_one());
  CHECK(render_curve(c) == "p=3; x^2 + x + 1/x");

  c = parse_curve("p=3; ext=2; x^2 + t*x");
  CHECK(c.ctx().q() == 9);
  CHECK(c.pole_at_infinity()->coeff(1) == c.ctx().gen());

  w.clear();
  c = parse_curve("p=3; x^3", &w);
  CHECK(render_curve(c) == "p=3; x");
  CHECK(w.size() == 1);
  CHECK_THROWS_AS(parse_curve("p=3; x^3", nullptr, true), InputError);

  c = parse_curve("p=5; ext=2; 2*x^3 - x + (t+1)/(x-t)^2 + 3/(x-(2*t+1)) + 4");
  const std::string r = render_curve(c);
  CHECK(parse_curve(r) == c);
  CHECK(render_curve(parse_curve(r)) == r);

  try {
    parse_curve("p=3; x^2 + * x");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
  CHECK_THROWS_AS(parse_curve("p=4; x"), ParseError);
  CHECK_THROWS_AS(parse_curve("p=3; t*x"), ParseError);
  CHECK_THROWS_AS(parse_curve("p=3; 2"), DomainError);
}

TEST_CASE("render/parse round trip on random curves") {
  std::mt19937_64 rng(5);
  for (auto [p, k] : {std::pair{3u, 2u}, {5u, 1u}, {7u, 2u}}) {
    const FieldCtx& F = FieldCtx::get(p, k);
    for (int it = 0; it < 100; ++it) {
      ASCurve c = random_curve(F, {4, 2, 1}, rng, it % 2 == 0);
      CHECK(parse_curve(render_curve(c)) == c);
    }
  }
}

TEST_CASE("solve_h examples") {
  const ASCurve c = C("p=3; x^4 + 2*x^2 + x");
  CHECK(solve_h(c, Mobius::identity(c.ctx()), c.ctx().one()).empty());

  // one pole, d != 1 mod p, M = alpha x: h = 0
  const ASCurve c5 = C("p=3; ext=2; x^5 + t*x^2 + x");
  for (const Fq& a : c5.ctx().elements())
    if (!a.is_zero()) CHECK(solve_h(c5, Mobius::scale(a), c5.ctx().one()).empty());

  // d = 7, M = x + beta: h has degree 2 and h_2^3 = beta (alpha = 1)
  const ASCurve c7 = C("p=3; ext=2; x^7 + t*x^5 + 2*x^2 + x");
  for (const Fq& beta : c7.ctx().elements()) {
    if (beta.is_zero()) continue;
    auto h = solve_h(c7, Mobius::translate(beta), c7.ctx().one());
    REQUIRE(h.size() == 1);
    REQUIRE(h[0].at_infinity);
    CHECK(h[0].order() == 2);
    CHECK(h[0].coeff(2).pow(3) == beta);
  }
  // with alpha: M = alpha x + beta, lambda = alpha^7 gives h_2^3 = alpha^6 beta
  const FieldCtx& F = c7.ctx();
  for (const Fq& alpha : F.elements()) {
    if (alpha.is_zero() || !alpha.pow(14).is_one() || !alpha.pow(7 * 2).is_one()) continue;
    const Fq lam = alpha.pow(7);
    if (!lam.in_prime_field()) continue;
    const Fq beta = F.gen() + F.one();
    auto h = solve_h(c7, Mobius::affine(alpha, beta), lam);
    REQUIRE(h.size() == 1);
    CHECK(h[0].coeff(2).pow(3) == alpha.pow(6) * beta);
  }
}

TEST_CASE("apply_isomorphism examples") {
  // {2,1}: x -> -x sends a -> -a, b -> -b
  const ASCurve c = C("p=3; x^2 + x + 1/x");
  const ASCurve img = apply_isomorphism(c, iso(Mobius::scale(c.ctx().from_int(-1)), c.ctx().one()));
  CHECK(render_curve(img) == "p=3; x^2 + 2*x + 2/x");
  CHECK(apply_isomorphism(c, iso(Mobius::identity(c.ctx()), c.ctx().one())) == c);
  CHECK_THROWS_AS(apply_isomorphism(c, iso({c.ctx().one(), c.ctx().one(), c.ctx().one(), c.ctx().one()},
                                           c.ctx().one())),
                  DomainError);

  // equal orders, M(x) = 1/(alpha x): (a_i, b_i) -> (alpha^i b_i / lambda, a_i / (lambda alpha^i))
  std::mt19937_64 rng(3);
  const FieldCtx& F = FieldCtx::get(5, 2);
  for (int it = 0; it < 50; ++it) {
    const ASCurve e = random_curve(F, {2, 2}, rng);
    const Pole* at0 = nullptr;
    const Pole* fin = &e.poles()[1];
    // move the finite pole to 0 first
    const ASCurve e0 = apply_isomorphism(e, iso(Mobius::translate(fin->location), F.one()));
    at0 = e0.pole_at(F.zero());
    REQUIRE(at0);
    const Fq alpha = F.random_nonzero(rng);
    const Fq lam = random_lambda(F, rng);
    const Mobius M{F.zero(), F.one(), alpha, F.zero()};
    const ASCurve s = apply_isomorphism(e0, iso(M, lam));
    const Pole* ainf = e0.pole_at_infinity();
    for (std::uint32_t i = 1; i <= 2; ++i) {
      CHECK(s.pole_at_infinity()->coeff(i) == alpha.pow(i) * at0->coeff(i) / lam);
      CHECK(s.pole_at(F.zero())->coeff(i) == ainf->coeff(i) / (lam * alpha.pow(i)));
    }
  }
}

TEST_CASE("supplied h must match") {
  const ASCurve c = C("p=3; ext=2; x^7 + x^5 + x");
  const Fq beta = c.ctx().gen();
  IsomorphismData d = iso(Mobius::translate(beta), c.ctx().one());
  d.h = solve_h(c, d.M, d.lambda);
  CHECK_NOTHROW(apply_isomorphism(c, d));
  d.h[0].tail[0] += c.ctx().one();
  CHECK_THROWS_AS(apply_isomorphism(c, d), VerificationError);
}

TEST_CASE("inverse isomorphism round trip and genus invariance") {
  std::mt19937_64 rng(17);
  const std::vector<std::vector<std::uint32_t>> families{{4}, {5}, {2, 1}, {2, 2}, {4, 2, 1}, {1, 1, 1, 1}, {7}};
  for (const auto& orders : families) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
      bool ok = true;
      for (auto d : orders) ok &= d % p != 0;
      if (!ok) continue;
      const FieldCtx& F = FieldCtx::get(p, 2);
      for (int it = 0; it < 500; ++it) {
        const ASCurve c = random_curve(F, orders, rng, it % 3 != 0);
        const IsomorphismData i = iso(random_mobius(F, rng), random_lambda(F, rng));
        const ASCurve img = apply_isomorphism(c, i);
        CHECK(img.component() == c.component());
        const IsomorphismData j = inverse_isomorphism(c, i);
        CHECK(apply_isomorphism(img, j) == c);
      }
    }
  }
}

TEST_CASE("standard forms: examples") {
  auto r = to_standard_form(C("p=3; x^5 + x^4"), StandardFormVariant::farnell);
  CHECK(render_curve(r.curve) == "p=3; x^5 + x^2 + 2*x");
  CHECK(r.witness.M.b == r.curve.ctx().one());

  const ASCurve already = C("p=3; x^5 + 2*x^2 + x");
  r = to_standard_form(already, StandardFormVariant::farnell);
  CHECK(r.curve == already);
  CHECK(r.witness.M.a.is_one());
  CHECK(r.witness.M.b.is_zero());
  CHECK(r.witness.M.c.is_zero());
  CHECK(r.witness.lambda.is_one());

  r = to_standard_form(C("p=3; 2*x^4 + x^2 + x"), StandardFormVariant::p3depressed);
  const Pole* inf = r.curve.pole_at_infinity();
  REQUIRE(inf);
  CHECK(r.curve.poles().size() == 1);
  CHECK(inf->order() == 4);
  CHECK(inf->coeff(4).is_one());
  CHECK(inf->coeff(3).is_zero());
  CHECK(inf->coeff(1).is_zero());

  CHECK_THROWS_AS(to_standard_form(C("p=3; x^10 + x"), StandardFormVariant::p3depressed), InputError);
  CHECK_THROWS_AS(to_standard_form(C("p=3; x^4 + x"), StandardFormVariant::farnell), InputError);
  CHECK_THROWS_AS(to_standard_form(C("p=3; x^2 + x + 1/x"), StandardFormVariant::farnell), InputError);
  CHECK_THROWS_AS(to_standard_form(C("p=3; x + 1/x + 1/(x-1)"), StandardFormVariant::twoPoleGeneral), InputError);
}

TEST_CASE("standard forms pass their checkers on random curves") {
  std::mt19937_64 rng(29);
  struct Case {
    std::uint32_t p;
    std::vector<std::uint32_t> orders;
    StandardFormVariant v;
  };
  using V = StandardFormVariant;
  const std::vector<Case> cases{
      {3, {4}, V::theorem33},       {3, {5}, V::theorem33},        {5, {3}, V::theorem33},
      {3, {2, 1}, V::theorem33},    {3, {4, 2, 1}, V::theorem33},  {3, {1, 1, 1, 1}, V::theorem33},
      {3, {5}, V::farnell},         {3, {8}, V::farnell},          {5, {4}, V::farnell},
      {3, {4}, V::p3depressed},     {3, {7}, V::p3depressed},      {3, {2, 1}, V::twoPoleGeneral},
      {5, {2, 2}, V::twoPoleGeneral}, {3, {2, 2, 1}, V::twoPoleGeneral}, {3, {4, 2, 1}, V::threePlus},
      {3, {2, 1, 1, 1}, V::threePlus}, {3, {5, 4, 2, 1}, V::threePlus}, {3, {5, 4, 2, 1, 1}, V::threePlus},
  };
  for (const auto& cs : cases) {
    CAPTURE(cs.p);
    CAPTURE(to_string(cs.v));
    // one-pole searches may need F_{p^12}; start from the prime field there
    const FieldCtx& F = FieldCtx::get(cs.p, cs.orders.size() == 1 ? 1 : 2);
    for (int it = 0; it < 20; ++it) {
      const ASCurve c = random_curve(F, cs.orders, rng, it % 2 == 0);
      const auto res = to_standard_form(c, cs.v);
      CHECK(is_standard_form(res.curve, cs.v));
      CHECK(res.curve.component() == c.component());
      CHECK(apply_isomorphism(c.lift(res.curve.ctx()), res.witness) == res.curve);
    }
  }
}
