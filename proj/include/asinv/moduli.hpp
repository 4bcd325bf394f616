#pragma once

// Irreducible components of the moduli of Artin-Schreier curves with given
// genus and p-rank, indexed by pole-order partitions.

#include <cstdint>
#include <string>
#include <vector>

namespace asinv {

struct ComponentDescriptor {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> orders;  // descending
  std::uint32_t r = 0;                // number of poles minus one
  std::int64_t D = 0;
  std::int64_t g = 0;
  std::int64_t s = 0;
  std::int64_t dim = 0;

  std::string partition_string() const;  // "{4,2,1}"
  bool operator==(const ComponentDescriptor&) const = default;
};

ComponentDescriptor describe(std::uint32_t p, std::vector<std::uint32_t> orders);

// Components of AS_{g,s} over all s, sorted by s then partition descending.
std::vector<ComponentDescriptor> enumerate_components(std::uint32_t p, std::int64_t g);

// Structural rows for every (g, p) with 3 <= g <= 8 and p an odd prime with
// (p-1) | 2g.
std::vector<ComponentDescriptor> table1();

// Parses "4,2,1", "{4,2,1}" or "[4, 2, 1]".
std::vector<std::uint32_t> parse_orders(const std::string& text);

}  // namespace asinv
