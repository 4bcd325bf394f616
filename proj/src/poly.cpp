#include "asinv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace asinv {

namespace {

constexpr std::uint32_t kMaxExponent = 1u << 20;

std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t s = std::uint64_t(a) + b;
  if (s > kMaxExponent) throw InputError("exponent overflow");
  return static_cast<std::uint32_t>(s);
}

}  // namespace

VarTable make_vars(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (n.empty() || !std::islower(static_cast<unsigned char>(n[0])))
      throw InputError("bad variable name '" + n + "'");
    for (char c : n)
      if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
        throw InputError("bad variable name '" + n + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == n) throw InputError("duplicate variable '" + n + "'");
  }
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarTable& a, const VarTable& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::optional<std::size_t> var_index(const VarTable& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars->size(); ++i)
    if ((*vars)[i] == name) return i;
  return std::nullopt;
}

VarTable merge_vars(const VarTable& a, const VarTable& b) {
  std::vector<std::string> names = *a;
  for (const auto& n : *b)
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  return make_vars(std::move(names));
}

std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t s = 0;
  for (auto x : e) s += x;
  return s;
}

bool GrevlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

MultiPoly::MultiPoly(const FieldCtx& ctx, VarTable vars) : ctx_(&ctx), vars_(std::move(vars)) {
  if (!vars_) vars_ = make_vars({});
}

MultiPoly MultiPoly::constant(const FieldCtx& ctx, VarTable vars, const Fq& c) {
  MultiPoly f(ctx, std::move(vars));
  f.add_term(Exponents(f.arity(), 0), ctx.embed(c));
  return f;
}

MultiPoly MultiPoly::constant(const FieldCtx& ctx, VarTable vars, std::int64_t c) {
  return constant(ctx, std::move(vars), ctx.from_int(c));
}

MultiPoly MultiPoly::variable(const FieldCtx& ctx, VarTable vars, const std::string& name) {
  auto idx = var_index(vars, name);
  if (!idx) throw InputError("unknown variable '" + name + "'");
  return variable(ctx, std::move(vars), *idx);
}

MultiPoly MultiPoly::variable(const FieldCtx& ctx, VarTable vars, std::size_t index) {
  MultiPoly f(ctx, std::move(vars));
  if (index >= f.arity()) throw InputError("variable index out of range");
  Exponents e(f.arity(), 0);
  e[index] = 1;
  f.add_term(e, ctx.one());
  return f;
}

MultiPoly MultiPoly::monomial(const FieldCtx& ctx, VarTable vars, Exponents e, const Fq& c) {
  MultiPoly f(ctx, std::move(vars));
  if (e.size() != f.arity()) throw InputError("exponent arity mismatch");
  f.add_term(e, ctx.embed(c));
  return f;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && asinv::total_degree(terms_.begin()->first) == 0);
}

Fq MultiPoly::constant_term() const { return coefficient(Exponents(arity(), 0)); }

Fq MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ctx_->zero() : it->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw VerificationError("leading term of zero polynomial");
  return terms_.begin()->first;
}

Fq MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw VerificationError("leading term of zero polynomial");
  return terms_.begin()->second;
}

std::uint64_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : asinv::total_degree(terms_.begin()->first);
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::optional<std::int64_t> MultiPoly::homogeneous_weight(std::span<const std::int64_t> weights) const {
  std::optional<std::int64_t> w;
  for (const auto& [e, c] : terms_) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += weights[i] * static_cast<std::int64_t>(e[i]);
    if (w && *w != s) return std::nullopt;
    w = s;
  }
  return w ? w : std::optional<std::int64_t>(0);
}

std::int64_t MultiPoly::max_weight(std::span<const std::int64_t> weights) const {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (const auto& [e, c] : terms_) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += weights[i] * static_cast<std::int64_t>(e[i]);
    best = std::max(best, s);
  }
  return terms_.empty() ? 0 : best;
}

void MultiPoly::add_term(const Exponents& e, const Fq& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (ctx_ != o.ctx_) throw InputError("polynomials over different fields");
  if (!same_vars(vars_, o.vars_)) throw InputError("polynomials over different variable tables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*ctx_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(*ctx_, vars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  Exponents e(arity());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(ea[i], eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Fq& c) const {
  MultiPoly r(*ctx_, vars_);
  const Fq cc = ctx_->embed(c);
  if (cc.is_zero()) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, x * cc);
  return r;
}

MultiPoly MultiPoly::pow(std::uint32_t n) const {
  MultiPoly result = constant(*ctx_, vars_, 1);
  MultiPoly base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::shift(const Exponents& s) const {
  MultiPoly r(*ctx_, vars_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] = checked_add(ne[i], s[i]);
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return ctx_ == o.ctx_ && same_vars(vars_, o.vars_) && terms_ == o.terms_;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  const Fq lc = leading_coefficient();
  if (lc.is_one()) return *this;
  return *this * lc.inv();
}

Fq MultiPoly::evaluate(std::span<const Fq> point) const {
  if (point.size() != arity()) throw InputError("evaluation point has wrong dimension");
  std::vector<Fq> pt(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) pt[i] = ctx_->embed(point[i]);
  // Cache powers per variable.
  std::vector<std::vector<Fq>> powers(arity());
  Fq acc = ctx_->zero();
  for (const auto& [e, c] : terms_) {
    Fq t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(ctx_->one());
      while (pw.size() <= e[i]) pw.push_back(pw.back() * pt[i]);
      t *= pw[e[i]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::remap(const VarTable& target) const {
  if (same_vars(vars_, target)) {
    MultiPoly r = *this;
    r.vars_ = target;
    return r;
  }
  std::vector<std::optional<std::size_t>> where(arity());
  for (std::size_t i = 0; i < arity(); ++i) where[i] = var_index(target, (*vars_)[i]);
  MultiPoly r(*ctx_, target);
  for (const auto& [e, c] : terms_) {
    Exponents ne(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!where[i]) throw InputError("variable '" + (*vars_)[i] + "' missing from target table");
      ne[*where[i]] = e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

MultiPoly MultiPoly::lift(const FieldCtx& target) const {
  if (&target == ctx_) return *this;
  MultiPoly r(target, vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, target.embed(c));
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  const std::uint32_t d = degree_in(var);
  std::vector<MultiPoly> out(d + 1, MultiPoly(*ctx_, vars_));
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[var] = 0;
    out[e[var]].terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(std::span<const MultiPoly> coeffs, std::size_t var) {
  if (coeffs.empty()) throw InputError("empty coefficient list");
  MultiPoly r(coeffs.front().ctx(), coeffs.front().vars());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& [e, c] : coeffs[i].terms_) {
      Exponents ne = e;
      ne[var] = checked_add(ne[var], static_cast<std::uint32_t>(i));
      r.add_term(ne, c);
    }
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += "+";
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += (*vars_)[i];
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      s += c.to_string(true);
    } else if (c.is_one()) {
      s += factors;
    } else {
      s += c.to_string(true) + "*" + factors;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Division and gcd.

namespace {

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents minus(const Exponents& b, const Exponents& a) {
  Exponents r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

}  // namespace

DivRem divrem(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw DomainError("polynomial division by zero");
  MultiPoly q(f.ctx(), f.vars());
  MultiPoly r(f.ctx(), f.vars());
  MultiPoly p = f;
  const Exponents& lg = g.leading_exponents();
  const Fq lc_inv = g.leading_coefficient().inv();
  while (!p.is_zero()) {
    const Exponents lp = p.leading_exponents();
    const Fq cp = p.leading_coefficient();
    if (divides(lg, lp)) {
      const Exponents s = minus(lp, lg);
      const Fq c = cp * lc_inv;
      q.add_term(s, c);
      p -= g.shift(s) * c;
    } else {
      r.add_term(lp, cp);
      p.add_term(lp, -cp);
    }
  }
  return {std::move(q), std::move(r)};
}

std::optional<MultiPoly> try_div(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw DomainError("polynomial division by zero");
  MultiPoly q(f.ctx(), f.vars());
  MultiPoly p = f;
  const Exponents& lg = g.leading_exponents();
  const Fq lc_inv = g.leading_coefficient().inv();
  while (!p.is_zero()) {
    const Exponents& lp = p.leading_exponents();
    if (!divides(lg, lp)) return std::nullopt;
    const Exponents s = minus(lp, lg);
    const Fq c = p.leading_coefficient() * lc_inv;
    q.add_term(s, c);
    p -= g.shift(s) * c;
  }
  return q;
}

MultiPoly exact_div(const MultiPoly& f, const MultiPoly& g) {
  auto q = try_div(f, g);
  if (!q) throw VerificationError("inexact polynomial division");
  return *q;
}

namespace {

MultiPoly one_like(const MultiPoly& f) { return MultiPoly::constant(f.ctx(), f.vars(), 1); }

// gcd of a monomial-free view: exponent-wise minimum over all terms.
Exponents min_exponents(const MultiPoly& f) {
  Exponents m = f.leading_exponents();
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

MultiPoly content_in(const MultiPoly& f, std::size_t var) {
  auto cs = f.coefficients_in(var);
  MultiPoly g(f.ctx(), f.vars());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly prem(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  auto bc = b.coefficients_in(var);
  const std::size_t db = bc.size() - 1;
  const MultiPoly& lb = bc.back();
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    auto rc = r.coefficients_in(var);
    const std::size_t dr = rc.size() - 1;
    Exponents s(r.arity(), 0);
    s[var] = static_cast<std::uint32_t>(dr - db);
    r = r * lb - (b * rc.back()).shift(s);
  }
  return r;
}

}  // namespace

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.ctx_ptr() != g.ctx_ptr() || !same_vars(f.vars(), g.vars()))
    throw InputError("gcd of incompatible polynomials");
  if (f.is_constant() || g.is_constant()) return one_like(f);

  // Monomial fast paths.
  if (f.is_monomial() || g.is_monomial()) {
    Exponents a = min_exponents(f), b = min_exponents(g);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::min(a[i], b[i]);
    return MultiPoly::monomial(f.ctx(), f.vars(), a, f.ctx().one());
  }

  const std::size_t n = f.arity();
  // A variable present in exactly one argument reduces to a content gcd.
  for (std::size_t v = 0; v < n; ++v) {
    const bool in_f = f.involves(v), in_g = g.involves(v);
    if (in_f && !in_g) return gcd(content_in(f, v), g);
    if (in_g && !in_f) return gcd(f, content_in(g, v));
  }

  // Strip common monomial factors first; keeps the PRS small.
  const Exponents mf = min_exponents(f), mg = min_exponents(g);
  Exponents mono(n);
  bool has_mono = false;
  for (std::size_t i = 0; i < n; ++i) {
    mono[i] = std::min(mf[i], mg[i]);
    has_mono |= (mf[i] > 0 || mg[i] > 0);
  }
  if (has_mono) {
    const MultiPoly F = exact_div(f, MultiPoly::monomial(f.ctx(), f.vars(), mf, f.ctx().one()));
    const MultiPoly G = exact_div(g, MultiPoly::monomial(g.ctx(), g.vars(), mg, g.ctx().one()));
    return gcd(F, G).shift(mono);
  }

  // Main variable: smallest positive degree in both.
  std::size_t var = n;
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t d = std::min(f.degree_in(v), g.degree_in(v));
    if (d > 0 && d < best) {
      best = d;
      var = v;
    }
  }
  const MultiPoly cf = content_in(f, var), cg = content_in(g, var);
  const MultiPoly c = gcd(cf, cg);
  MultiPoly a = exact_div(f, cf), b = exact_div(g, cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero() && b.degree_in(var) > 0) {
    MultiPoly r = prem(a, b, var);
    a = std::move(b);
    if (r.is_zero()) {
      b = MultiPoly(f.ctx(), f.vars());
    } else {
      b = exact_div(r, content_in(r, var));
    }
  }
  if (!b.is_zero()) return c.monic();  // a nonzero constant remainder: coprime in var
  const MultiPoly pa = exact_div(a, content_in(a, var));
  return (c * pa).monic();
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, const FieldCtx& ctx, VarTable vars, bool auto_vars)
      : s_(s), ctx_(ctx), vars_(std::move(vars)), auto_(auto_vars) {}

  MultiPoly run() {
    struct RawTerm {
      Fq coef;
      std::vector<std::pair<std::string, std::uint32_t>> factors;
    };
    std::vector<RawTerm> raw;
    skip();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      bool negate = false;
      if (!first || peek() == '-' || peek() == '+') {
        if (peek() == '+') {
          ++pos_;
        } else if (peek() == '-') {
          negate = true;
          ++pos_;
        } else {
          throw ParseError("expected '+' or '-'", pos_);
        }
        skip();
      }
      first = false;
      RawTerm t{ctx_.one(), {}};
      bool need_factor = true;
      if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '(') {
        t.coef = coefficient();
        skip();
        need_factor = false;
        if (peek() == '*') {
          ++pos_;
          skip();
          need_factor = true;
        }
      }
      if (need_factor) {
        t.factors.push_back(factor());
        skip();
        while (peek() == '*') {
          ++pos_;
          skip();
          t.factors.push_back(factor());
          skip();
        }
      }
      if (negate) t.coef = -t.coef;
      raw.push_back(std::move(t));
    }
    if (auto_) vars_ = make_vars(names_);
    MultiPoly f(ctx_, vars_);
    for (const auto& t : raw) {
      Exponents e(vars_->size(), 0);
      Fq coef = t.coef;
      for (const auto& [name, ex] : t.factors) {
        if (name.empty()) {
          coef *= ctx_.gen().pow(ex);
          continue;
        }
        auto idx = var_index(vars_, name);
        if (!idx) throw InputError("unknown variable '" + name + "'");
        e[*idx] += ex;
      }
      f.add_term(e, coef);
    }
    return f;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::uint64_t integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer", pos_);
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > (1ull << 40)) throw ParseError("integer too large", pos_);
      ++pos_;
    }
    return v;
  }

  // Integer, or a parenthesized polynomial in the field generator t.
  Fq coefficient() {
    if (peek() != '(') return ctx_.from_int(static_cast<std::int64_t>(integer() % ctx_.p()));
    ++pos_;
    const std::size_t start = pos_;
    int depth = 1;
    while (!at_end() && depth > 0) {
      if (peek() == '(') ++depth;
      if (peek() == ')') --depth;
      ++pos_;
    }
    if (depth != 0) throw ParseError("unbalanced parenthesis", start);
    const std::string inner = s_.substr(start, pos_ - start - 1);
    return parse_field_element(inner, start);
  }

  Fq parse_field_element(const std::string& text, std::size_t offset) {
    static const VarTable tvars = make_vars({"t"});
    const FieldCtx& prime = FieldCtx::get(ctx_.p(), 1);
    MultiPoly g;
    try {
      g = PolyParser(text, prime, tvars, false).run();
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad field element"), offset + e.position());
    }
    Fq acc = ctx_.zero();
    const Fq t = ctx_.gen();
    for (const auto& [e, c] : g.terms()) acc += ctx_.embed(c) * t.pow(e[0]);
    if (ctx_.k() == 1 && g.degree_in(0) > 0) throw ParseError("generator t used over a prime field", offset);
    return acc;
  }

  std::pair<std::string, std::uint32_t> factor() {
    const std::size_t start = pos_;
    if (!std::islower(static_cast<unsigned char>(peek()))) throw ParseError("expected variable name", pos_);
    while (std::islower(static_cast<unsigned char>(peek())) || std::isdigit(static_cast<unsigned char>(peek())) ||
           peek() == '_')
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    const bool is_gen = name == "t" && ctx_.k() > 1 && (auto_ || !var_index(vars_, name));
    if (is_gen) name = "";  // extension generator, folded into the coefficient
    else if (auto_ && std::find(names_.begin(), names_.end(), name) == names_.end()) names_.push_back(name);
    if (!is_gen && !auto_ && !var_index(vars_, name)) throw ParseError("unknown variable '" + name + "'", start);
    skip();
    std::uint32_t e = 1;
    if (peek() == '^') {
      ++pos_;
      skip();
      const std::uint64_t v = integer();
      if (v > kMaxExponent) throw ParseError("exponent too large", pos_);
      e = static_cast<std::uint32_t>(v);
    }
    return {name, e};
  }

  const std::string& s_;
  const FieldCtx& ctx_;
  VarTable vars_;
  bool auto_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const FieldCtx& ctx, const VarTable& vars) {
  return PolyParser(text, ctx, vars, false).run();
}

MultiPoly parse_poly_auto(const std::string& text, const FieldCtx& ctx) {
  return PolyParser(text, ctx, make_vars({}), true).run();
}

// ---------------------------------------------------------------------------

MultiPoly Echelon::reduce(MultiPoly f) const {
  if (rows_.empty() || f.is_zero()) return f;
  MultiPoly out(f.ctx(), f.vars());
  while (!f.is_zero()) {
    const Exponents lead = f.leading_exponents();
    const Fq c = f.leading_coefficient();
    auto it = rows_.find(lead);
    if (it == rows_.end()) {
      out.add_term(lead, c);
      f.add_term(lead, -c);
    } else {
      f -= it->second * c;
    }
  }
  return out;
}

bool Echelon::insert(const MultiPoly& f) {
  MultiPoly r = reduce(f);
  if (r.is_zero()) return false;
  r = r.monic();
  const Exponents lead = r.leading_exponents();
  rows_.emplace(lead, std::move(r));
  return true;
}

std::vector<MultiPoly> Echelon::basis() const {
  std::vector<MultiPoly> out;
  for (const auto& [e, r] : rows_) out.push_back(r);
  return out;
}

}  // namespace asinv
