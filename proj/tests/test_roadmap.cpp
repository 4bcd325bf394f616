#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asinv/errors.hpp"
#include "asinv/roadmap.hpp"
#include "json.hpp"

using namespace asinv;

TEST_CASE("roadmap: dispatch and report") {
  RoadmapOptions opt;
  opt.timing = false;
  const RoadmapReport r = run_roadmap(3, {1, 2}, opt);
  CHECK(r.info.branch == 2);
  CHECK(r.count() == 3);
  CHECK(r.complete);
  CHECK(r.is_group);
  const auto j = nlohmann::json::parse(r.to_json());
  for (const char* k : {"input", "case", "component", "standard_form", "action", "generators", "count", "flags",
                        "elapsed_ms"})
    CHECK(j.contains(k));
  CHECK(j["component"]["g"] == 3);
  CHECK(j["elapsed_ms"] == 0);
  // byte-identical on repeat
  CHECK(run_roadmap(3, {1, 2}, opt).to_json() == r.to_json());
  CHECK(r.to_text().find("3 generators") != std::string::npos);
}

TEST_CASE("roadmap: ring option and defaults") {
  CHECK(run_roadmap(3, {4, 2, 1}).count() == 6);
  RoadmapOptions ring;
  ring.ring = true;
  CHECK(run_roadmap(3, {4, 2, 1}, ring).count() == 21);
  CHECK(run_roadmap(7, {2}).count() == 0);
}

TEST_CASE("roadmap: input errors") {
  CHECK_THROWS_AS(run_roadmap(3, {3}), InputError);
  CHECK_THROWS_AS(run_roadmap(4, {2}), InputError);
}

TEST_CASE("roadmap: non-group cases carry flags") {
  const RoadmapReport r = run_roadmap(3, {7});
  CHECK_FALSE(r.complete);
  CHECK(std::find(r.flags.begin(), r.flags.end(), "non-group") != r.flags.end());
  const RoadmapReport f = run_roadmap(3, {1, 1, 1, 1, 1});
  CHECK(f.count() == 35);
  CHECK_FALSE(f.complete);
}

TEST_CASE("table 1: annotations and counts") {
  RoadmapOptions opt;
  opt.timing = false;
  const auto rows = run_table1(opt);
  CHECK(rows.size() == 36);
  std::size_t annotated = 0;
  for (const auto& r : rows) {
    if (!r.annotation.empty()) ++annotated;
    CHECK(r.error.empty());
  }
  CHECK(annotated == 6);
  CHECK(table1_json(rows) == table1_json(run_table1(opt)));
  const auto j = nlohmann::json::parse(table1_json(rows));
  CHECK(j.size() == 36);
}

TEST_CASE("isomorphism verdicts") {
  CHECK(compare_curves("p=3; x^2+1*x+1/x", "p=3; x^2+2*x+2/x").verdict == IsoVerdict::isomorphic);
  CHECK(compare_curves("p=3; x^2+1*x+1/x", "p=3; x^2+1*x+2/x").verdict == IsoVerdict::not_isomorphic);
  CHECK(compare_curves("p=5; x^2+1*x+1/x", "p=5; x^3+x").verdict == IsoVerdict::not_isomorphic);
  CHECK(compare_curves("p=3; x^2+1*x+1/x", "p=5; x^2+1*x+1/x").verdict == IsoVerdict::not_isomorphic);
  // a curve and its image under a Mobius change of variable
  const IsoResult self = compare_curves("p=3; x^4+x^2+1/x", "p=3; x^4+x^2+1/x");
  CHECK(self.verdict == IsoVerdict::isomorphic);
}

TEST_CASE("suites") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("nope"), InputError);
  for (const char* s : {"separation-21p3", "fourpole-J", "multisym", "partial"}) {
    CAPTURE(s);
    CHECK(run_suite(s).passed);
  }
}
