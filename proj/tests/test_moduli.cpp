#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asinv/errors.hpp"
#include "asinv/moduli.hpp"

using namespace asinv;

TEST_CASE("describe examples") {
  auto c = describe(3, {4});
  CHECK(c.D == 3);
  CHECK(c.g == 3);
  CHECK(c.s == 0);
  CHECK(c.dim == 1);
  c = describe(5, {2, 2});
  CHECK(c.D == 4);
  CHECK(c.g == 8);
  CHECK(c.s == 4);
  CHECK(c.dim == 3);
  c = describe(3, {7});
  CHECK(c.D == 6);
  CHECK(c.g == 6);
  CHECK(c.dim == 3);
  CHECK(describe(3, {1, 2, 4}).partition_string() == "{4,2,1}");
  CHECK_THROWS_AS(describe(3, {3}), InputError);
  CHECK_THROWS_AS(describe(3, {1}), InputError);
  CHECK_THROWS_AS(describe(4, {1, 1}), InputError);
}

TEST_CASE("enumerate_components examples") {
  auto v = enumerate_components(5, 8);
  REQUIRE(v.size() == 3);
  CHECK(v[0].partition_string() == "{3,1}");
  CHECK(v[1].partition_string() == "{2,2}");
  CHECK(v[2].partition_string() == "{1,1,1}");
  CHECK(v[0].s == 4);
  CHECK(v[2].s == 8);
  for (auto& c : v) CHECK(c.dim == 3);

  v = enumerate_components(3, 3);
  REQUIRE(v.size() == 2);
  CHECK(v[0].partition_string() == "{4}");
  CHECK(v[0].dim == 1);
  CHECK(v[1].partition_string() == "{2,1}");
  CHECK(v[1].s == 2);
  CHECK(v[1].dim == 2);

  v = enumerate_components(7, 3);
  REQUIRE(v.size() == 1);
  CHECK(v[0].partition_string() == "{2}");
  CHECK(v[0].dim == 0);

  CHECK_THROWS_AS(enumerate_components(5, 3), InputError);
}

TEST_CASE("table1 rows") {
  const auto rows = table1();
  CHECK(rows.size() == 36);
  bool seen222 = false, seen17 = false;
  for (const auto& r : rows) {
    if (r.p == 3 && r.partition_string() == "{2,2,2}") {
      seen222 = true;
      CHECK(r.g == 7);
      CHECK(r.D == 7);
      CHECK(r.s == 4);
      CHECK(r.dim == 6);
    }
    if (r.p == 17) {
      seen17 = true;
      CHECK(r.g == 8);
      CHECK(r.D == 1);
      CHECK(r.dim == 0);
    }
  }
  CHECK(seen222);
  CHECK(seen17);
}

TEST_CASE("component properties") {
  for (const auto& r : table1()) {
    CHECK(r.s <= r.g);
    CHECK(r.dim >= 0);
    CHECK(r.dim <= r.D - 1);
    std::int64_t sum = 0;
    for (auto d : r.orders) {
      CHECK(d % r.p != 0);
      sum += d;
    }
    CHECK(sum == r.D + 1 - static_cast<std::int64_t>(r.r));
    CHECK(describe(r.p, r.orders) == r);
  }
  for (std::uint32_t p : {3u, 5u, 7u})
    for (std::int64_t g = 1; g <= 12; ++g) {
      if ((2 * g) % (p - 1)) continue;
      for (const auto& c : enumerate_components(p, g)) {
        CHECK(c.g == g);
        CHECK(describe(p, c.orders) == c);
      }
    }
}

TEST_CASE("parse_orders") {
  CHECK(parse_orders("4,2,1") == std::vector<std::uint32_t>{4, 2, 1});
  CHECK(parse_orders("{1, 2,4}") == std::vector<std::uint32_t>{4, 2, 1});
  CHECK(parse_orders("[2]") == std::vector<std::uint32_t>{2});
  CHECK_THROWS_AS(parse_orders("4,,1"), InputError);
}
