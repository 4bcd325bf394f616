#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "asinv/errors.hpp"
#include "asinv/verify.hpp"

using namespace asinv;

namespace {

std::vector<Fq> pt(const FieldCtx& F, std::initializer_list<std::int64_t> v) {
  std::vector<Fq> out;
  for (auto x : v) out.push_back(F.from_int(x));
  return out;
}

}  // namespace

TEST_CASE("fingerprints") {
  const auto& F = FieldCtx::get(3);
  const InvariantSet S = two_pole_distinct_generators(3, 2, 1);
  const Fingerprint fp = fingerprint(pt(F, {1, 1}), S);
  CHECK(fp.rendered() == std::vector<std::string>{"1", "1", "1"});
  const Fingerprint z = fingerprint(pt(F, {0, 0}), S);
  CHECK(z.rendered() == std::vector<std::string>{"0", "0", "0"});
  // theta = 0 makes a denominator vanish
  const Family four = standard_family(3, {1, 1, 1, 1});
  const InvariantSet J = reconstructing_set(four);
  CHECK_THROWS_AS(fingerprint(pt(F, {1, 1, 1, 1, 0}), J), DomainError);
  // a point over a larger field
  const auto& F9 = FieldCtx::get(3, 2);
  const Fingerprint g = fingerprint(std::vector<Fq>{F9.gen(), F9.one()}, S);
  CHECK(g.ctx == &F9);
}

TEST_CASE("same_orbit on the {2,1} family") {
  const auto& F = FieldCtx::get(3);
  const ActionSet A = stabilizer_actions(standard_family(3, {2, 1}));
  CHECK(same_orbit(pt(F, {1, 1}), pt(F, {2, 2}), A));
  CHECK(!same_orbit(pt(F, {1, 1}), pt(F, {1, 2}), A));
  CHECK(same_orbit(pt(F, {1, 2}), pt(F, {1, 2}), A));
  const ActionSet five = stabilizer_actions(standard_family(3, {1, 1, 1, 1, 1}));
  CHECK_THROWS_AS(same_orbit(pt(F, {1, 1, 1, 1, 1, 1, 1}), pt(F, {1, 1, 1, 1, 1, 1, 1}), five), InputError);
}

TEST_CASE("separation: {2,1} p = 3 exhaustive over F_9") {
  const Family fam = standard_family(3, {2, 1});
  const ActionSet A = stabilizer_actions(fam);
  const InvariantSet S = two_pole_distinct_generators(3, 2, 1);
  SampleSpec spec;
  spec.field_degree = 2;
  const SeparationReport R = separating_check(fam, A, S, spec);
  CHECK(R.sample_size == 81);
  CHECK(R.skipped == 0);
  CHECK(R.violations == 0);
  CHECK(R.soundness_failures == 0);
  CHECK(R.orbit_equal_pairs == R.fingerprint_equal_pairs);

  // dropping a^4 loses separation
  InvariantSet T = S;
  T.generators.clear();
  T.provenance.clear();
  for (std::size_t i = 0; i < S.size(); ++i)
    if (S.rendered()[i] != "a^4") T.add(S.generators[i], S.provenance[i]);
  const SeparationReport V = separating_check(fam, A, T, spec);
  CHECK(V.violations > 0);
  CHECK(!V.witnesses.empty());
  CHECK(V.soundness_failures == 0);

  const SeparationReport E = separating_check(fam, A, S, std::vector<std::vector<Fq>>{});
  CHECK(E.sample_size == 0);
  CHECK(E.fingerprint_equal_pairs == 0);
  CHECK(E.to_json().find("\"violations\":0") != std::string::npos);
}

TEST_CASE("separation: {4,2,1} and {2,2} p = 3 exhaustive over F_3") {
  {
    const Family fam = standard_family(3, {4, 2, 1});
    const ActionSet A = stabilizer_actions(fam);
    const SeparationReport R = separating_check(fam, A, orbit_sum_generators(A), SampleSpec{});
    CHECK(R.sample_size == 729);
    CHECK(R.violations == 0);
    CHECK(R.soundness_failures == 0);
  }
  {
    const Family fam = standard_family(3, {2, 2});
    const ActionSet A = stabilizer_actions(fam);
    SampleSpec spec;
    spec.admissible_only = true;
    const SeparationReport R = separating_check(fam, A, two_pole_equal_generators(3, 2), spec);
    CHECK(R.sample_size > 0);
    CHECK(R.violations == 0);
    CHECK(R.soundness_failures == 0);
  }
}

TEST_CASE("reconstruction round trips") {
  SUBCASE("{4,2,1} p = 3, 100 random points") {
    const Family fam = standard_family(3, {4, 2, 1});
    const InvariantSet S = reconstructing_set(fam);
    SampleSpec spec;
    spec.kind = SampleSpec::Kind::random;
    spec.count = 100;
    spec.field_degree = 2;
    spec.admissible_only = true;
    spec.seed = 11;
    for (const auto& x : sample_points(fam, spec)) {
      const Fingerprint fp = fingerprint(x, S);
      const Reconstruction r = reconstruct(fam, fp);
      CHECK(fingerprint(r.point, S) == fp);
    }
    // I with a4 = 0
    Fingerprint bad = fingerprint(sample_points(fam, spec).front(), S);
    for (auto& v : bad.values) v = bad.ctx->zero();
    CHECK_THROWS_AS(reconstruct(fam, bad), DomainError);
  }
  SUBCASE("four simple poles, 100 random points") {
    const Family fam = standard_family(3, {1, 1, 1, 1});
    const InvariantSet S = reconstructing_set(fam);
    CHECK(S.size() == 6);
    SampleSpec spec;
    spec.kind = SampleSpec::Kind::random;
    spec.count = 100;
    spec.field_degree = 3;
    spec.admissible_only = true;
    spec.seed = 5;
    int done = 0;
    for (const auto& x : sample_points(fam, spec)) {
      Fingerprint fp;
      try {
        fp = fingerprint(x, S);
      } catch (const DomainError&) {
        continue;  // theta^2 - theta + 1 = 0
      }
      const Reconstruction r = reconstruct(fam, fp);
      CHECK(fingerprint(r.point, S) == fp);
      ++done;
    }
    CHECK(done > 80);
  }
  SUBCASE("{1,1,1,2} p = 3") {
    const Family fam = standard_family(3, {1, 1, 1, 2});
    const InvariantSet S = reconstructing_set(fam);
    SampleSpec spec;
    spec.kind = SampleSpec::Kind::random;
    spec.count = 10;
    spec.field_degree = 2;
    spec.admissible_only = true;
    for (const auto& x : sample_points(fam, spec)) {
      const Fingerprint fp = fingerprint(x, S);
      CHECK(fingerprint(reconstruct(fam, fp).point, S) == fp);
    }
  }
  CHECK_THROWS_AS(reconstructing_set(standard_family(3, {2, 2})), InputError);
}
