#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "asinv/errors.hpp"
#include "asinv/invgen.hpp"
#include "test_util.hpp"

using namespace asinv;

namespace {

std::set<std::string> rendered_set(const InvariantSet& S) {
  auto v = S.rendered();
  return {v.begin(), v.end()};
}

std::set<std::string> canonical(const std::vector<std::string>& texts, const FieldCtx& F, const VarTable& vars) {
  std::set<std::string> out;
  for (const auto& t : texts) out.insert(parse_rational(t, F, vars).num().monic().to_string());
  return out;
}

// dim of the span of all products of the generators of total degree d
std::vector<std::size_t> algebra_dims(const std::vector<MultiPoly>& gens, std::uint32_t top) {
  const auto& F = gens.front().ctx();
  const auto& vars = gens.front().vars();
  std::vector<std::vector<MultiPoly>> B(top + 1);
  B[0] = {MultiPoly::constant(F, vars, 1)};
  std::vector<std::size_t> dims(top + 1, 0);
  for (std::uint32_t d = 1; d <= top; ++d) {
    Echelon E;
    for (const auto& g : gens) {
      const auto gd = g.total_degree();
      if (gd > d) continue;
      for (const auto& v : B[d - gd]) E.insert(g * v);
    }
    B[d] = E.basis();
    dims[d] = E.rank();
  }
  return dims;
}

// Number of column-permutation orbits of monomials of degree d in an m x n grid.
std::size_t multisym_orbits(std::uint32_t m, std::uint32_t n, std::uint32_t d) {
  std::set<std::vector<std::vector<std::uint32_t>>> seen;
  std::vector<std::uint32_t> e(m * n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == e.size()) {
      e[i] = left;
      std::vector<std::vector<std::uint32_t>> cols(n, std::vector<std::uint32_t>(m));
      for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t c = 0; c < n; ++c) cols[c][r] = e[r * n + c];
      std::sort(cols.begin(), cols.end());
      seen.insert(cols);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  return seen.size();
}

}  // namespace

TEST_CASE("congruence generators: {8}, p = 3 matches the reference list of 24") {
  const Family fam = standard_family(3, {8});
  const ActionSet A = stabilizer_actions(fam);
  const InvariantSet S = diagonal_generators(3, fam.vars, A.weights, A.modulus);
  const std::vector<std::string> ref = {
      "a1*a2*a5",          "a2^2*a4",       "a1*a5^3",      "a2*a4*a5^2", "a4^4",        "a1^4*a4",
      "a1^2*a2^3",         "a4*a5^4",       "a1^3*a4^2*a5", "a1^2*a2*a4^3", "a1^6*a2",   "a1^2*a4^3*a5^2",
      "a1^6*a5^2",         "a2^8",          "a2^7*a5^2",    "a2^6*a5^4",  "a2^5*a5^6",   "a1^11*a5",
      "a2^4*a5^8",         "a2^3*a5^10",    "a2^2*a5^12",   "a2*a5^14",   "a1^16",       "a5^16"};
  CHECK(S.size() == 24);
  CHECK(rendered_set(S) == canonical(ref, FieldCtx::get(3), fam.vars));
  CHECK(invariance_failures(S, A).empty());
  // sorted by degree
  for (std::size_t i = 1; i < S.size(); ++i)
    CHECK(S.generators[i - 1].num().total_degree() <= S.generators[i].num().total_degree());
}

TEST_CASE("congruence generators: small cases") {
  CHECK(rendered_set(two_pole_distinct_generators(3, 2, 1)) ==
        canonical({"a*b", "a^4", "b^4"}, FieldCtx::get(3), standard_family(3, {2, 1}).vars));
  {
    const Family fam = standard_family(3, {5});
    const ActionSet A = stabilizer_actions(fam);
    const InvariantSet S = diagonal_generators(3, fam.vars, A.weights, A.modulus);
    CHECK(S.size() == 3);
    CHECK(invariance_failures(S, A).empty());
  }
  {
    const Family fam = standard_family(5, {3});
    const ActionSet A = stabilizer_actions(fam);
    const InvariantSet S = diagonal_generators(5, fam.vars, A.weights, A.modulus);
    CHECK(S.rendered() == std::vector<std::string>{"a^6"});
  }
  // weight 0 variable: the variable itself
  const VarTable v = make_vars({"x", "y"});
  CHECK(rendered_set(diagonal_generators(3, v, {0, 1}, 2)) == std::set<std::string>{"x", "y^2"});
  CHECK_THROWS_AS(diagonal_generators(3, v, {0}, 2), InputError);
}

TEST_CASE("congruence generators: degrees below the bound cover the monoid (property)") {
  // every invariant monomial of degree <= m is a product of generators
  const VarTable v = make_vars({"x", "y", "z"});
  for (std::int64_t m : {3, 4, 6}) {
    const std::vector<std::int64_t> w = {1, 2, m - 1};
    const InvariantSet S = diagonal_generators(7, v, w, m);
    const auto gens = S.polynomials();
    std::vector<Exponents> ge;
    for (const auto& g : gens) ge.push_back(g.leading_exponents());
    for (std::uint32_t a = 0; a <= static_cast<std::uint32_t>(m); ++a)
      for (std::uint32_t b = 0; a + b <= static_cast<std::uint32_t>(m); ++b)
        for (std::uint32_t c = 0; a + b + c <= static_cast<std::uint32_t>(m); ++c) {
          if (a + b + c == 0 || (a * w[0] + b * w[1] + c * w[2]) % m) continue;
          // greedy check by reachability over generator exponents
          std::set<Exponents> reach{{0, 0, 0}};
          bool ok = false;
          for (int round = 0; round < 3 * m && !ok; ++round) {
            std::set<Exponents> next = reach;
            for (const auto& r : reach)
              for (const auto& g : ge) {
                Exponents s = {r[0] + g[0], r[1] + g[1], r[2] + g[2]};
                if (s[0] <= a && s[1] <= b && s[2] <= c) next.insert(s);
              }
            reach = next;
            ok = reach.count({a, b, c}) > 0;
          }
          CHECK_MESSAGE(ok, "m=" << m << " " << a << "," << b << "," << c);
        }
  }
}

TEST_CASE("equal orders: invariance, grading, and the {2,2} p = 3 count") {
  const Family fam = standard_family(3, {2, 2});
  const ActionSet A = stabilizer_actions(fam);
  const InvariantSet S = two_pole_equal_generators(3, 2);
  CHECK(S.size() == 3);
  CHECK(invariance_failures(S, A).empty());
  CHECK(std::any_of(S.flags.begin(), S.flags.end(), [](auto& f) { return f.rfind("bound-limited", 0) == 0; }));
  const InvariantSet P = two_pole_equal_candidate_set(3, 2);
  CHECK(invariance_failures(P, A).empty());
}

TEST_CASE("equal orders: the candidate list reduces to the same generators") {
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {3, 4}, {7, 2}}) {
    const InvariantSet P = two_pole_equal_candidate_set(p, d);
    std::vector<std::int64_t> w;
    for (const auto& n : *P.vars) {
      const std::int64_t i = n.size() > 1 ? std::stoi(n.substr(1)) : 1;
      w.push_back(n[0] == 'a' ? static_cast<std::int64_t>(d) - i : static_cast<std::int64_t>(d) + i);
    }
    const InvariantSet S = two_pole_equal_generators(p, d);
    CHECK_MESSAGE(rendered_set(minimalize(P, w)) == rendered_set(S), "p=" << p << " d=" << d);
    CHECK(invariance_failures(S, stabilizer_actions(standard_family(p, {d, d}))).empty());
  }
}

TEST_CASE("equal orders, p = 5: full group versus alpha^4 = 1") {
  const Family fam = standard_family(5, {2, 2});
  const auto& F = FieldCtx::get(5);
  CHECK(rendered_set(two_pole_equal_generators(5, 2)) ==
        canonical({"a^2*b1^2", "a*b1*b2", "b2^2", "a^5*b1*b2^2+a*b1^5", "a^4*b2^3+b1^4*b2", "a^8*b2^4+b1^8"}, F,
                  fam.vars));
  CHECK(rendered_set(two_pole_equal_generators_mod(5, 2, 4)) ==
        canonical({"a*b1", "b2", "a^4*b2^2+b1^4"}, F, fam.vars));
  CHECK_THROWS_AS(two_pole_equal_generators_mod(5, 2, 3), InputError);
}

TEST_CASE("multisymmetric generators") {
  const auto& F = FieldCtx::get(3);
  SUBCASE("n = 1 gives the coordinates") {
    CHECK(rendered_set(multisym_generators(2, 1)) == std::set<std::string>{"x1", "y1"});
  }
  SUBCASE("(2,2) gives five generators") {
    const InvariantSet S = multisym_generators(2, 2);
    CHECK(S.size() == 5);
    CHECK(rendered_set(S) ==
          canonical({"x1+x2", "y1+y2", "x1*x2", "y1*y2", "x1*y1+x2*y2"}, F, multisym_vars(2, 2)));
  }
  SUBCASE("graded dimensions match the column-permutation orbit count") {
    for (auto [m, n, p] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
             {2, 2, 3}, {2, 3, 3}, {3, 2, 3}, {2, 3, 5}, {3, 2, 5}}) {
      const InvariantSet S = multisym_generators(m, n, p);
      const auto dims = algebra_dims(S.polynomials(), 6);
      for (std::uint32_t d = 1; d <= 6; ++d)
        CHECK_MESSAGE(dims[d] == multisym_orbits(m, n, d), "m=" << m << " n=" << n << " p=" << p << " d=" << d);
    }
  }
  CHECK_THROWS_AS(multisym_generators(1, 2), InputError);
}

TEST_CASE("primitive monomials and elementary symmetric functions") {
  const auto mu = primitive_monomials(2, 2);
  CHECK(mu.size() == 3);  // x, y, xy  (x^2, y^2 are not primitive)
  CHECK(elementary_symmetric<int>({1, 2, 3}, 2, 1, 0) == 11);
  CHECK(elementary_symmetric<int>({1, 2, 3}, 3, 1, 0) == 6);
  CHECK(elementary_symmetric<int>({1, 2, 3}, 4, 1, 0) == 0);
}

TEST_CASE("minimalize drops redundant generators") {
  const auto& F = FieldCtx::get(5);
  const VarTable v = make_vars({"x", "y"});
  InvariantSet S;
  S.vars = v;
  S.ctx = &F;
  for (const char* t : {"x", "y", "x*y", "x^2+y^2", "x^2", "x^3+x*y^2"}) S.add(RationalFn(parse_poly(t, F, v)), t);
  const InvariantSet M = minimalize(S);
  CHECK(rendered_set(M) == std::set<std::string>{"x", "y"});
  // weighted: y of weight 2 makes x^2 + y homogeneous
  InvariantSet T;
  T.vars = v;
  T.ctx = &F;
  for (const char* t : {"x^2+y", "x", "x^2"}) T.add(RationalFn(parse_poly(t, F, v)), t);
  CHECK(minimalize(T, {1, 2}).size() == 2);
  // inhomogeneous input is returned unchanged and flagged
  CHECK(minimalize(T).size() == 3);
  CHECK(!minimalize(T).flags.empty());
}

TEST_CASE("three distinct orders: closed form") {
  const InvariantSet S = three_distinct_generators(3, {4, 2, 1});
  CHECK(S.size() == 6);
  const Family fam = standard_family(3, {4, 2, 1});
  CHECK(rendered_set(S) ==
        canonical({"a4^2", "a4*a1", "a4*a2", "a4*b1", "a4*b2", "a4*c"}, FieldCtx::get(3), fam.vars));
  CHECK(invariance_failures(S, stabilizer_actions(fam)).empty());
}

TEST_CASE("linear groups: orbit sums, Reynolds and kernel routes") {
  SUBCASE("three distinct orders, ring generators") {
    const Family fam = standard_family(3, {4, 2, 1});
    const ActionSet A = stabilizer_actions(fam);
    const InvariantSet S = orbit_sum_generators(A);
    CHECK(S.size() == 21);
    CHECK(invariance_failures(S, A).empty());
  }
  SUBCASE("{2,2,1,1} first stage: the 13 reference generators") {
    const Family fam = standard_family(3, {2, 2, 1, 1});
    const ActionSet A = stabilizer_actions(fam);
    const StagedResult R = staged_generators(A);
    CHECK(rendered_set(R.stage1) ==
          canonical({"a1^2", "a1*b1", "a1*e1", "a1*e3", "b1^2", "b1*e1", "b1*e3", "b2", "e1^2", "e1*e3", "e2",
                     "e3^2", "e4"},
                    FieldCtx::get(3), fam.vars));
    CHECK(R.residual_images.size() == 2);
    CHECK(invariance_failures(R.stage2, A).empty());
    CHECK(R.stage2.size() > 0);
  }
}

TEST_CASE("extra poles: closed form reproduces the fourteen reference invariants") {
  const Family fam = standard_family(3, {1, 1, 2, 4, 5});
  const ActionSet A = stabilizer_actions(fam);
  const InvariantSet S = extra_pole_generators(fam, A, true);
  CHECK(S.size() == 14);
  CHECK(rendered_set(S) == canonical({"a5*a1", "a5*a2", "a5*a4", "a5^2", "a5*b1", "a5*b2", "a5*b4", "a5*c1",
                                      "a5*c2", "a5*(e1+e2)", "theta1+theta2", "a5*(e1*theta1+e2*theta2)",
                                      "a5^2*e1*e2", "theta1*theta2"},
                                     FieldCtx::get(3), fam.vars));
  CHECK(invariance_failures(S, A).empty());
}

TEST_CASE("four poles: J's and j are fixed by all 24 maps") {
  CHECK(verify_four_pole(3) == 6 * 24);
  CHECK(verify_four_pole(5) == 6 * 24);
  const InvariantSet S = four_pole_invariants(3);
  CHECK(S.size() == 5);
}

TEST_CASE("{1,1,1,2}: every reported generator is invariant") {
  const Family fam = standard_family(3, {1, 1, 1, 2});
  const ActionSet A = stabilizer_actions(fam);
  const InvariantSet S = one_one_one_two_invariants(3, A);
  CHECK(S.size() == 7);
  CHECK(invariance_failures(S, A).empty());
}

TEST_CASE("five poles: specializations agree on isomorphic curves") {
  const FivePoleSpecializations P = five_pole_specializations(3, 2);
  CHECK(P.specs.size() == 35);
  CHECK(P.labels().size() == 35);
  std::mt19937_64 rng(7);
  const auto& F = FieldCtx::get(3, 4);
  int done = 0;
  for (int trial = 0; trial < 30 && done < 2; ++trial) {
    std::vector<Fq> x;
    for (std::size_t i = 0; i < P.family.vars->size(); ++i) x.push_back(F.random(rng));
    std::vector<Fq> v;
    try {
      v = P.evaluate(x);
    } catch (const DomainError&) {
      continue;
    }
    const ASCurve C = curve_from_point(P.family, x);
    const Mobius M = testing::random_mobius(C.ctx(), rng);
    ASCurve D;
    try {
      D = apply_isomorphism(C, {M, testing::random_lambda(C.ctx(), rng), {}, {}});
    } catch (const DomainError&) {
      continue;
    }
    const auto y = point_from_curve(P.family, family_standard_form(P.family, D).curve);
    const auto w = P.evaluate(y);
    REQUIRE(w.size() == v.size());
    const auto& G = w.front().ctx().contains(v.front().ctx()) ? w.front().ctx() : v.front().ctx();
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(G.embed(v[i]) == G.embed(w[i]));
    ++done;
  }
  CHECK(done == 2);
}

TEST_CASE("one pole, d = 1 mod p") {
  const Family fam = standard_family(3, {4});
  const ActionSet A = stabilizer_actions(fam);
  const InvariantSet S = one_pole_d1_generators(fam, A);
  CHECK(S.rendered() == std::vector<std::string>{"a^4"});
  CHECK(S.complete);
}

TEST_CASE("json output") {
  const std::string j = invariant_set_json(two_pole_distinct_generators(3, 2, 1));
  CHECK(j.find("\"generators\"") != std::string::npos);
  CHECK(j.find("a*b") != std::string::npos);
}
