#pragma once

// Exact arithmetic in F_p and F_{p^k}.
//
// Elements are stored as a packed index v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// of their coordinates in the basis 1, t, ..., t^{k-1}, where t is a root of the
// context's modulus.  Multiplication goes through discrete log tables, so a
// context is limited to q = p^k <= kMaxFieldSize.

#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asinv/errors.hpp"

namespace asinv {

class Fq;

class FieldCtx {
 public:
  static constexpr std::uint64_t kMaxFieldSize = 1u << 22;

  // Returns the unique context for (p, k).  Contexts are created once and live
  // for the rest of the process, so references and pointers to them stay valid.
  static const FieldCtx& get(std::uint32_t p, std::uint32_t k = 1);

  // Smallest k such that m | p^k - 1, i.e. the multiplicative order of p mod m.
  static std::uint32_t degree_for_roots_of_unity(std::uint32_t p, std::uint64_t m);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Monic modulus, coefficients low to high (size k + 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string modulus_string() const;

  Fq zero() const;
  Fq one() const;
  Fq from_int(std::int64_t n) const;
  Fq from_index(std::uint32_t v) const;
  Fq from_coords(std::span<const std::uint32_t> coords) const;
  Fq gen() const;  // the class of t; for k == 1 this is the element 0 (t is a root of t)
  Fq primitive() const;
  Fq random(std::mt19937_64& rng) const;
  Fq random_nonzero(std::mt19937_64& rng) const;
  std::vector<Fq> elements() const;

  std::vector<std::uint32_t> coords(std::uint32_t v) const;

  // Raw index arithmetic.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  // Image of an element of a subfield F_{p^j} (j | k) under the canonical
  // embedding: t_j is sent to the smallest-index root of its modulus here.
  Fq embed(const Fq& x) const;
  bool contains(const FieldCtx& sub) const { return sub.p_ == p_ && k_ % sub.k_ == 0; }

  bool is_prime_field() const { return k_ == 1; }

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

 private:
  FieldCtx(std::uint32_t p, std::uint32_t k);

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pw_;  // p^i
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  mutable std::mutex embed_mutex_;
  mutable std::map<std::uint32_t, std::uint32_t> embed_gen_;  // sub k -> image of t
};

// ext_field(p, k): validates the input and returns the deterministic context.
const FieldCtx& ext_field(std::int64_t p, std::int64_t k);

bool is_prime(std::uint64_t n);

class Fq {
 public:
  Fq() = default;
  Fq(const FieldCtx* ctx, std::uint32_t v) : ctx_(ctx), v_(v) {}

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldCtx* ctx_ptr() const { return ctx_; }
  std::uint32_t index() const { return v_; }
  std::vector<std::uint32_t> coords() const { return ctx_->coords(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool in_prime_field() const { return v_ < ctx_->p(); }

  Fq operator+(const Fq& o) const { return {ctx_, ctx_->add(v_, o.v_)}; }
  Fq operator-(const Fq& o) const { return {ctx_, ctx_->sub(v_, o.v_)}; }
  Fq operator-() const { return {ctx_, ctx_->neg(v_)}; }
  Fq operator*(const Fq& o) const { return {ctx_, ctx_->mul(v_, o.v_)}; }
  Fq operator/(const Fq& o) const { return {ctx_, ctx_->mul(v_, ctx_->inv(o.v_))}; }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  Fq& operator/=(const Fq& o) { return *this = *this / o; }
  Fq inv() const { return {ctx_, ctx_->inv(v_)}; }
  Fq pow(std::int64_t e) const { return {ctx_, ctx_->pow(v_, e)}; }

  // x -> x^p.
  Fq frobenius() const { return pow(ctx_->p()); }
  // Unique r with r^p = x: the (k-1)-fold Frobenius image.
  Fq pth_root() const;
  // Multiplicative order (0 for zero).
  std::uint64_t order() const;
  // All n-th roots in this field, ascending by index.
  std::vector<Fq> nth_roots(std::uint64_t n) const;

  bool operator==(const Fq& o) const { return v_ == o.v_ && ctx_ == o.ctx_; }
  bool operator!=(const Fq& o) const { return !(*this == o); }
  bool operator<(const Fq& o) const { return v_ < o.v_; }

  // "3", or "(2*t+1)" style for extension elements that are not in F_p.
  std::string to_string(bool parenthesize = true) const;

 private:
  const FieldCtx* ctx_ = nullptr;
  std::uint32_t v_ = 0;
};

inline Fq pth_root(const Fq& c) { return c.pth_root(); }

// Roots (ascending by index) of the univariate polynomial sum c_i z^i.
std::vector<Fq> univariate_roots(std::span<const Fq> coeffs);

}  // namespace asinv
