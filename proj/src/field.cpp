#include "asinv/field.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

namespace asinv {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Univariate helpers over F_p on dense coefficient vectors (low to high).
void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = [&] {
    std::uint64_t r = 1, b = m.back(), e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }();
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

// Exhaustive: f (monic, degree k) is irreducible iff no monic g of degree
// 1..k/2 divides it.
bool irreducible(const Coeffs& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t dg = 1; dg <= k / 2; ++dg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Coeffs g(dg + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dg; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[dg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically least monic irreducible of degree k, comparing the
// non-leading coefficients from t^{k-1} down to t^0.
Coeffs least_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Coeffs f(k + 1);
    std::uint64_t c = code;
    // Most significant digit of code is the t^{k-1} coefficient.
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    if (irreducible(f, p)) return f;
  }
  throw VerificationError("no irreducible polynomial found");
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((__uint128_t)a * b % m);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t FieldCtx::degree_for_roots_of_unity(std::uint32_t p, std::uint64_t m) {
  if (m == 0) throw InputError("root-of-unity order must be positive");
  if (m % p == 0) throw InputError("no nontrivial p-power roots of unity in characteristic p");
  std::uint64_t x = p % m;
  std::uint32_t k = 1;
  if (m == 1) return 1;
  while (x != 1) {
    x = mulmod64(x, p, m);
    ++k;
  }
  return k;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
  std::uint64_t q = 1;
  pw_.push_back(1);
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldSize) throw InputError("field too large: " + std::to_string(p) + "^" + std::to_string(k));
    pw_.push_back(static_cast<std::uint32_t>(q));
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = least_irreducible(p, k);

  auto to_index = [&](const Coeffs& c) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * pw_[i];
    return v;
  };
  auto to_coeffs = [&](std::uint32_t v) {
    Coeffs c(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    trim(c);
    return c;
  };

  // Find the smallest-index primitive element and fill the tables.
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    const Coeffs g = to_coeffs(cand);
    Coeffs cur{1};
    std::vector<char> seen(q_, 0);
    bool ok = true;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      const std::uint32_t v = to_index(cur);
      if (seen[v]) {
        ok = false;
        break;
      }
      seen[v] = 1;
      exp_[e] = v;
      log_[v] = e;
      cur = poly_mulmod(cur, g, modulus_, p_);
    }
    if (ok) return;
  }
  throw VerificationError("no primitive element found");
}

const FieldCtx& FieldCtx::get(std::uint32_t p, std::uint32_t k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) {
    if (!is_prime(p) || p == 2) throw InputError("characteristic must be an odd prime, got " + std::to_string(p));
    if (k == 0) throw InputError("extension degree must be >= 1");
    slot.reset(new FieldCtx(p, k));
  }
  return *slot;
}

const FieldCtx& ext_field(std::int64_t p, std::int64_t k) {
  if (p < 3 || p > (1 << 22) || !is_prime(static_cast<std::uint64_t>(p)))
    throw InputError(std::to_string(p) + " is not an odd prime");
  if (k < 1 || k > 64) throw InputError("extension degree must be >= 1");
  return FieldCtx::get(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
}

std::string FieldCtx::modulus_string() const {
  std::string s;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    const std::uint32_t c = modulus_[i];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + "*";
    s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

Fq FieldCtx::zero() const { return {this, 0}; }
Fq FieldCtx::one() const { return {this, 1}; }
Fq FieldCtx::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}
Fq FieldCtx::from_index(std::uint32_t v) const {
  if (v >= q_) throw InputError("field element index out of range");
  return {this, v};
}
Fq FieldCtx::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() > k_) throw InputError("too many coordinates for field");
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < c.size(); ++i) v += (c[i] % p_) * pw_[i];
  return {this, v};
}
Fq FieldCtx::gen() const {
  if (k_ == 1) return zero();
  return {this, p_};
}
Fq FieldCtx::primitive() const { return {this, exp_[q_ > 2 ? 1 % (q_ - 1) : 0]}; }
Fq FieldCtx::random(std::mt19937_64& rng) const {
  return {this, static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, q_ - 1)(rng))};
}
Fq FieldCtx::random_nonzero(std::mt19937_64& rng) const {
  return {this, static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(1, q_ - 1)(rng))};
}
std::vector<Fq> FieldCtx::elements() const {
  std::vector<Fq> out;
  out.reserve(q_);
  for (std::uint32_t v = 0; v < q_; ++v) out.emplace_back(this, v);
  return out;
}

std::vector<std::uint32_t> FieldCtx::coords(std::uint32_t v) const {
  std::vector<std::uint32_t> c(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * pw_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * pw_[i];
    a /= p_;
  }
  return r;
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("division by zero in F_" + std::to_string(q_));
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw DomainError("zero to a negative power");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t n = q_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % n)) % n;
  if (r < 0) r += n;
  return exp_[static_cast<std::size_t>(r)];
}

Fq FieldCtx::embed(const Fq& x) const {
  const FieldCtx& sub = x.ctx();
  if (&sub == this) return x;
  if (!contains(sub)) throw InputError("field F_" + std::to_string(sub.q()) + " does not embed in F_" + std::to_string(q_));
  std::uint32_t img = 0;
  {
    std::lock_guard<std::mutex> lock(embed_mutex_);
    auto it = embed_gen_.find(sub.k());
    if (it != embed_gen_.end()) {
      img = it->second;
    } else if (sub.k() == 1) {
      img = 0;
      embed_gen_[1] = 0;
    } else {
      bool found = false;
      for (std::uint32_t v = 0; v < q_ && !found; ++v) {
        // Evaluate the sub-modulus at v.
        std::uint32_t acc = 0;
        for (std::size_t i = sub.modulus().size(); i-- > 0;) acc = add(mul(acc, v), sub.modulus()[i]);
        if (acc == 0) {
          img = v;
          found = true;
        }
      }
      if (!found) throw VerificationError("subfield modulus has no root");
      embed_gen_[sub.k()] = img;
    }
  }
  const auto c = x.coords();
  std::uint32_t r = 0, tp = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    r = add(r, mul(c[i], tp));
    tp = mul(tp, img);
  }
  return {this, r};
}

Fq Fq::pth_root() const {
  Fq r = *this;
  for (std::uint32_t i = 1; i < ctx_->k(); ++i) r = r.frobenius();
  return r;
}

std::uint64_t Fq::order() const {
  if (v_ == 0) return 0;
  const std::uint64_t n = ctx_->q() - 1;
  return n / std::gcd<std::uint64_t>(n, ctx_->log(v_));
}

std::vector<Fq> Fq::nth_roots(std::uint64_t n) const {
  std::vector<Fq> out;
  if (n == 0) throw InputError("0-th root");
  if (v_ == 0) return {*this};
  const std::uint64_t N = ctx_->q() - 1;
  const std::uint64_t L = ctx_->log(v_);
  // p-power part of n acts bijectively; reduce to the part coprime to p.
  const std::uint64_t g = std::gcd(n % N == 0 ? N : n % N, N);
  if (L % g != 0) return out;
  for (std::uint64_t e = 0; e < N; ++e) {
    if ((static_cast<__uint128_t>(e) * n) % N == L) out.emplace_back(ctx_, ctx_->exp(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Fq::to_string(bool parenthesize) const {
  if (v_ < ctx_->p()) return std::to_string(v_);
  const auto c = coords();
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) s += std::to_string(c[i]) + "*";
    s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return parenthesize ? "(" + s + ")" : s;
}

std::vector<Fq> univariate_roots(std::span<const Fq> coeffs) {
  std::vector<Fq> out;
  if (coeffs.empty()) throw InputError("roots of the zero polynomial");
  const FieldCtx& F = coeffs.front().ctx();
  bool all_zero = std::all_of(coeffs.begin(), coeffs.end(), [](const Fq& c) { return c.is_zero(); });
  if (all_zero) throw InputError("roots of the zero polynomial");
  for (const Fq& x : F.elements()) {
    Fq acc = F.zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    if (acc.is_zero()) out.push_back(x);
  }
  return out;
}

}  // namespace asinv
