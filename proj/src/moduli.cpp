#include "asinv/moduli.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "asinv/errors.hpp"
#include "asinv/field.hpp"

namespace asinv {

std::string ComponentDescriptor::partition_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(orders[i]);
  }
  return s + "}";
}

ComponentDescriptor describe(std::uint32_t p, std::vector<std::uint32_t> orders) {
  if (!is_prime(p) || p == 2) throw InputError("p must be an odd prime, got " + std::to_string(p));
  if (orders.empty()) throw InputError("no pole orders given");
  std::sort(orders.begin(), orders.end(), std::greater<>());
  ComponentDescriptor c;
  c.p = p;
  c.r = static_cast<std::uint32_t>(orders.size() - 1);
  std::int64_t sum = 0, floors = 0;
  for (auto d : orders) {
    if (d == 0) throw InputError("pole orders must be positive");
    if (d % p == 0) throw InputError("pole order " + std::to_string(d) + " is divisible by p=" + std::to_string(p));
    sum += d;
    floors += d / p;
  }
  c.orders = std::move(orders);
  c.D = static_cast<std::int64_t>(c.r) - 1 + sum;
  if (c.D < 1) throw InputError("D = r - 1 + sum(d_i) must be at least 1");
  c.g = static_cast<std::int64_t>(p - 1) * c.D / 2;
  c.s = static_cast<std::int64_t>(c.r) * (p - 1);
  c.dim = c.D - 1 - floors;
  return c;
}

namespace {

// Partitions of n into exactly k parts, each not divisible by p, descending.
void partitions(std::int64_t n, std::int64_t k, std::int64_t max_part, std::uint32_t p,
                std::vector<std::uint32_t>& cur, std::vector<std::vector<std::uint32_t>>& out) {
  if (k == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (std::int64_t d = std::min(max_part, n - (k - 1)); d >= 1; --d) {
    if (d % p == 0) continue;
    if (d * k < n) break;
    cur.push_back(static_cast<std::uint32_t>(d));
    partitions(n - d, k - 1, d, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ComponentDescriptor> enumerate_components(std::uint32_t p, std::int64_t g) {
  if (!is_prime(p) || p == 2) throw InputError("p must be an odd prime, got " + std::to_string(p));
  if (g < 1 || (2 * g) % (p - 1) != 0) throw InputError("genus " + std::to_string(g) + " is not (p-1)D/2 for p=" + std::to_string(p));
  const std::int64_t D = 2 * g / (p - 1);
  std::vector<ComponentDescriptor> out;
  for (std::int64_t r = 0; r * static_cast<std::int64_t>(p - 1) <= g; ++r) {
    const std::int64_t n = D + 1 - r;
    if (n < r + 1) break;
    std::vector<std::vector<std::uint32_t>> parts;
    std::vector<std::uint32_t> cur;
    partitions(n, r + 1, n, p, cur, parts);
    for (auto& part : parts) out.push_back(describe(p, part));
  }
  // Already sorted: s grows with r, partitions generated in descending lex order.
  return out;
}

std::vector<ComponentDescriptor> table1() {
  std::vector<ComponentDescriptor> rows;
  for (std::int64_t g = 3; g <= 8; ++g) {
    for (std::uint32_t p = 3; p <= 2 * g + 1; p += 2) {
      if (!is_prime(p) || (2 * g) % (p - 1) != 0) continue;
      auto comps = enumerate_components(p, g);
      rows.insert(rows.end(), comps.begin(), comps.end());
    }
  }
  return rows;
}

std::vector<std::uint32_t> parse_orders(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::size_t i = 0;
  auto skip = [&]() {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '{' ||
                               text[i] == '}' || text[i] == '[' || text[i] == ']'))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected pole order", i);
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (v > 100000) throw ParseError("pole order too large", i);
      ++i;
    }
    out.push_back(static_cast<std::uint32_t>(v));
    skip();
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError("expected ','", i);
      ++i;
      skip();
    }
  }
  if (out.empty()) throw InputError("no pole orders given");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace asinv
