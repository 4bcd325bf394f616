#pragma once

#include <random>
#include <set>
#include <vector>

#include "asinv/curve.hpp"

namespace asinv::testing {

// Random curve with the given pole orders; exponents divisible by p are zero.
inline ASCurve random_curve(const FieldCtx& F, const std::vector<std::uint32_t>& orders, std::mt19937_64& rng,
                            bool first_at_infinity = true) {
  std::vector<Pole> poles;
  std::set<std::uint32_t> used;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    Pole p;
    p.at_infinity = first_at_infinity && k == 0;
    if (!p.at_infinity) {
      Fq loc;
      do loc = F.random(rng);
      while (used.count(loc.index()));
      used.insert(loc.index());
      p.location = loc;
    }
    p.tail.resize(orders[k], F.zero());
    for (std::uint32_t i = 1; i <= orders[k]; ++i)
      if (i % F.p()) p.tail[i - 1] = i == orders[k] ? F.random_nonzero(rng) : F.random(rng);
    poles.push_back(std::move(p));
  }
  return ASCurve(F, std::move(poles));
}

inline Mobius random_mobius(const FieldCtx& F, std::mt19937_64& rng) {
  while (true) {
    Mobius m{F.random(rng), F.random(rng), F.random(rng), F.random(rng)};
    if (!m.det().is_zero()) return m;
  }
}

inline Fq random_lambda(const FieldCtx& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(1, F.p() - 1);
  return F.from_int(d(rng));
}

}  // namespace asinv::testing
