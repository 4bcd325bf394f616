#pragma once

// Transport of principal parts under x = M(w) for a Moebius map M, generic in
// the coefficient type K (numeric Fq or symbolic RationalFn).
//
// A pole is stored as its tail T(z) = sum_{i>=1} c_i z^i in the local variable
// z = x (pole at infinity) or z = 1/(x - theta).  Under x = M(w) the local
// variable becomes z = A + B*u with u the local variable of the image pole, so
// the new tail is T(A + B*u) without its constant term.

#include <cstdint>
#include <optional>
#include <vector>

#include "asinv/errors.hpp"
#include "asinv/rational.hpp"

namespace asinv {

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Fq> {
  static Fq from_int(const Fq& like, std::int64_t n) { return like.ctx().from_int(n); }
  static bool is_zero(const Fq& x) { return x.is_zero(); }
  static std::uint32_t characteristic(const Fq& like) { return like.ctx().p(); }
  static Fq pth_root(const Fq& x, bool& /*linearized*/) { return x.pth_root(); }
};

// Symbolic coefficients have no exact p-th root; c*u^(pj) is replaced by
// c*u^j, which agrees with the exact rule on F_p-rational points.
template <>
struct ScalarTraits<RationalFn> {
  static RationalFn from_int(const RationalFn& like, std::int64_t n) {
    return RationalFn::constant(like.ctx(), like.vars(), n);
  }
  static bool is_zero(const RationalFn& x) { return x.is_zero(); }
  static std::uint32_t characteristic(const RationalFn& like) { return like.ctx().p(); }
  static RationalFn pth_root(const RationalFn& x, bool& linearized) {
    if (!x.is_constant()) linearized = true;
    if (x.is_constant()) {
      const Fq c = x.num().constant_term();
      return RationalFn::constant(x.ctx(), x.vars(), c.pth_root());
    }
    return x;
  }
};

// Polynomials in auxiliary parameters: p-th roots are exact only when every
// exponent is divisible by p; otherwise the flag is raised and x is returned.
template <>
struct ScalarTraits<MultiPoly> {
  static MultiPoly from_int(const MultiPoly& like, std::int64_t n) {
    return MultiPoly::constant(like.ctx(), like.vars(), n);
  }
  static bool is_zero(const MultiPoly& x) { return x.is_zero(); }
  static std::uint32_t characteristic(const MultiPoly& like) { return like.ctx().p(); }
  static MultiPoly pth_root(const MultiPoly& x, bool& linearized) {
    const std::uint32_t p = x.ctx().p();
    MultiPoly out(x.ctx(), x.vars());
    for (const auto& [e, c] : x.terms()) {
      Exponents r = e;
      for (auto& k : r) {
        if (k % p) {
          linearized = true;
          return x;
        }
        k /= p;
      }
      out.add_term(r, c.pth_root());
    }
    return out;
  }
};

template <class K>
struct TailT {
  bool at_infinity = true;
  K location{};           // unused at infinity
  std::vector<K> coeffs;  // coeffs[i-1] multiplies z^i
};

template <class K>
struct MobiusT {
  K a, b, c, d;  // x -> (a x + b) / (c x + d)
};

// Image of one tail under x = M(w): new pole position and A, B with z = A + B u.
template <class K>
struct LocalChange {
  bool at_infinity;
  K location;
  K A;
  K B;
};

template <class K>
LocalChange<K> local_change(const TailT<K>& t, const MobiusT<K>& M) {
  using Tr = ScalarTraits<K>;
  const K zero = Tr::from_int(M.a, 0);
  // z = (a' w + b') / (c' w + d')
  K a1, b1, c1, d1;
  if (t.at_infinity) {
    a1 = M.a;
    b1 = M.b;
    c1 = M.c;
    d1 = M.d;
  } else {
    a1 = M.c;
    b1 = M.d;
    c1 = M.a - t.location * M.c;
    d1 = M.b - t.location * M.d;
  }
  if (Tr::is_zero(c1)) {
    if (Tr::is_zero(d1)) throw DomainError("degenerate Moebius transformation");
    return {true, zero, b1 / d1, a1 / d1};
  }
  const K loc = -(d1 / c1);
  return {false, loc, a1 / c1, (b1 * c1 - a1 * d1) / (c1 * c1)};
}

// Coefficients of T(A + B u) for powers u^1..u^n (constant dropped).
template <class K>
std::vector<K> expand_tail(const std::vector<K>& c, const K& A, const K& B) {
  using Tr = ScalarTraits<K>;
  const std::size_t n = c.size();
  if (n == 0) return {};
  const K zero = Tr::from_int(A, 0);
  const std::uint32_t p = Tr::characteristic(A);
  std::vector<K> out(n, zero);
  // Pascal rows mod p.
  std::vector<std::int64_t> row{1};
  std::vector<K> Apow{Tr::from_int(A, 1)};
  for (std::size_t i = 1; i <= n; ++i) Apow.push_back(Apow.back() * A);
  std::vector<K> Bpow{Tr::from_int(A, 1)};
  for (std::size_t j = 1; j <= n; ++j) Bpow.push_back(Bpow.back() * B);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::int64_t> next(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) next[j] = (row[j - 1] + row[j]) % p;
    row = std::move(next);
    if (Tr::is_zero(c[i - 1])) continue;
    for (std::size_t j = 1; j <= i; ++j) {
      if (row[j] == 0) continue;
      out[j - 1] += c[i - 1] * Tr::from_int(A, row[j]) * Apow[i - j] * Bpow[j];
    }
  }
  return out;
}

template <class K>
std::vector<TailT<K>> compose_tails(const std::vector<TailT<K>>& tails, const MobiusT<K>& M) {
  std::vector<TailT<K>> out;
  out.reserve(tails.size());
  for (const auto& t : tails) {
    const LocalChange<K> lc = local_change(t, M);
    TailT<K> nt;
    nt.at_infinity = lc.at_infinity;
    nt.location = lc.location;
    nt.coeffs = expand_tail(t.coeffs, lc.A, lc.B);
    out.push_back(std::move(nt));
  }
  return out;
}

// Removes u^(pj) terms top-down: c u^(pj) -> e u^j with e^p = c.  The removed
// pieces e*u^j are appended to h (same tail layout).  Returns true if any
// symbolic coefficient had to be linearized.
template <class K>
bool eliminate_tail_powers(std::vector<K>& coeffs, std::vector<K>& h) {
  using Tr = ScalarTraits<K>;
  bool linearized = false;
  if (coeffs.empty()) return false;
  const std::uint32_t p = Tr::characteristic(coeffs.front());
  const K zero = Tr::from_int(coeffs.front(), 0);
  if (h.size() < coeffs.size()) h.resize(coeffs.size(), zero);
  for (std::size_t j = coeffs.size(); j >= 1; --j) {
    if (j % p != 0 || Tr::is_zero(coeffs[j - 1])) continue;
    const K e = Tr::pth_root(coeffs[j - 1], linearized);
    coeffs[j - 1] = zero;
    coeffs[j / p - 1] += e;
    h[j / p - 1] += e;
  }
  while (!coeffs.empty() && Tr::is_zero(coeffs.back())) coeffs.pop_back();
  while (!h.empty() && Tr::is_zero(h.back())) h.pop_back();
  return linearized;
}

}  // namespace asinv
