#include "asinv/rational.hpp"

#include <cctype>

namespace asinv {

RationalFn::RationalFn(MultiPoly num) : num_(std::move(num)) {
  den_ = MultiPoly::constant(num_.ctx(), num_.vars(), 1);
}

RationalFn::RationalFn(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = std::move(num);
    den_ = MultiPoly::constant(num_.ctx(), num_.vars(), 1);
    return;
  }
  if (!den.is_constant()) {
    const MultiPoly g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  const Fq lc = den.leading_coefficient();
  if (!lc.is_one()) {
    const Fq li = lc.inv();
    num = num * li;
    den = den * li;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

RationalFn RationalFn::constant(const FieldCtx& ctx, VarTable vars, const Fq& c) {
  return RationalFn(MultiPoly::constant(ctx, std::move(vars), c));
}

RationalFn RationalFn::constant(const FieldCtx& ctx, VarTable vars, std::int64_t c) {
  return RationalFn(MultiPoly::constant(ctx, std::move(vars), c));
}

RationalFn RationalFn::variable(const FieldCtx& ctx, VarTable vars, const std::string& name) {
  return RationalFn(MultiPoly::variable(ctx, std::move(vars), name));
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  if (den_ == o.den_) return RationalFn(num_ + o.num_, den_);
  if (den_.is_constant()) return RationalFn(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_constant()) return RationalFn(num_ + o.num_ * den_, den_);
  const MultiPoly g = gcd(den_, o.den_);
  const MultiPoly a = exact_div(o.den_, g);
  const MultiPoly b = exact_div(den_, g);
  return RationalFn(num_ * a + o.num_ * b, den_ * a);
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn RationalFn::operator-(const RationalFn& o) const { return *this + (-o); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
  if (den_.is_constant() && o.den_.is_constant()) return RationalFn(num_ * o.num_);
  // Cross-cancel first so the products stay small.
  const MultiPoly g1 = gcd(num_, o.den_);
  const MultiPoly g2 = gcd(o.num_, den_);
  const MultiPoly n = exact_div(num_, g1) * exact_div(o.num_, g2);
  const MultiPoly d = exact_div(den_, g2) * exact_div(o.den_, g1);
  RationalFn r;
  const Fq lc = d.leading_coefficient();
  r.num_ = n * lc.inv();
  r.den_ = d * lc.inv();
  if (r.num_.is_zero()) r.den_ = MultiPoly::constant(n.ctx(), n.vars(), 1);
  return r;
}

RationalFn RationalFn::operator*(const Fq& c) const {
  RationalFn r = *this;
  r.num_ = r.num_ * c;
  if (r.num_.is_zero()) r.den_ = MultiPoly::constant(num_.ctx(), num_.vars(), 1);
  return r;
}

RationalFn RationalFn::inv() const {
  if (num_.is_zero()) throw DomainError("inverse of zero rational function");
  return RationalFn(den_, num_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const { return *this * o.inv(); }

RationalFn RationalFn::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  RationalFn r;
  r.num_ = num_.pow(static_cast<std::uint32_t>(e));
  r.den_ = den_.pow(static_cast<std::uint32_t>(e));
  return r;  // already reduced: gcd(n^e, d^e) = 1
}

Fq RationalFn::evaluate(std::span<const Fq> point) const {
  const Fq d = den_.evaluate(point);
  if (d.is_zero()) throw DomainError("denominator " + den_.to_string() + " vanishes");
  return num_.evaluate(point) / d;
}

RationalFn RationalFn::remap(const VarTable& target) const {
  RationalFn r;
  r.num_ = num_.remap(target);
  r.den_ = den_.remap(target);
  return r;
}

RationalFn RationalFn::lift(const FieldCtx& target) const {
  RationalFn r;
  r.num_ = num_.lift(target);
  r.den_ = den_.lift(target);
  return r;
}

std::string RationalFn::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (den_.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

RationalFn substitute(const MultiPoly& f, const Assignment& assignment) {
  if (assignment.empty()) throw InputError("empty assignment");
  const RationalFn& any = assignment.begin()->second;
  const FieldCtx& ctx = any.ctx().k() >= f.ctx().k() ? any.ctx() : f.ctx();
  const VarTable& out_vars = any.vars();
  const std::size_t n = f.arity();

  std::vector<const RationalFn*> img(n, nullptr);
  std::vector<std::uint32_t> emax(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    emax[i] = f.degree_in(i);
    if (emax[i] == 0) continue;
    auto it = assignment.find((*f.vars())[i]);
    if (it == assignment.end()) throw InputError("variable '" + (*f.vars())[i] + "' not assigned");
    if (!same_vars(it->second.vars(), out_vars)) throw InputError("assignment images use different tables");
    img[i] = &it->second;
  }

  // Power caches for numerators and denominators.
  std::vector<std::vector<MultiPoly>> npw(n), dpw(n);
  auto power = [&](std::vector<MultiPoly>& cache, const MultiPoly& base, std::uint32_t e) -> const MultiPoly& {
    if (cache.empty()) cache.push_back(MultiPoly::constant(ctx, out_vars, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };

  MultiPoly num(ctx, out_vars);
  MultiPoly den = MultiPoly::constant(ctx, out_vars, 1);
  for (std::size_t i = 0; i < n; ++i)
    if (img[i] && !img[i]->den().is_constant()) den = den * img[i]->den().lift(ctx).pow(emax[i]);

  for (const auto& [e, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(ctx, out_vars, ctx.embed(c));
    for (std::size_t i = 0; i < n; ++i) {
      if (!img[i]) continue;
      const MultiPoly rn = img[i]->num().lift(ctx);
      t = t * power(npw[i], rn, e[i]);
      if (!img[i]->den().is_constant()) {
        const MultiPoly rd = img[i]->den().lift(ctx);
        t = t * power(dpw[i], rd, emax[i] - e[i]);
      } else {
        // constant denominators are 1 after normalization
      }
    }
    num += t;
  }
  return RationalFn(std::move(num), std::move(den));
}

RationalFn substitute(const RationalFn& f, const Assignment& assignment) {
  const RationalFn n = substitute(f.num(), assignment);
  const RationalFn d = substitute(f.den(), assignment);
  if (d.is_zero()) throw DomainError("substitution makes the denominator vanish");
  return n / d;
}

bool rational_equal(const RationalFn& f, const RationalFn& g) {
  return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

// ---------------------------------------------------------------------------

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& s, const FieldCtx& ctx, const VarTable& vars) : s_(s), ctx_(ctx), vars_(vars) {}

  RationalFn run() {
    RationalFn r = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RationalFn expr() {
    RationalFn r;
    bool neg = false;
    if (peek() == '-') {
      ++pos_;
      neg = true;
    } else if (peek() == '+') {
      ++pos_;
    }
    r = term();
    if (neg) r = -r;
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        r += term();
      } else if (c == '-') {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  RationalFn term() {
    RationalFn r = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        r *= power();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        RationalFn d = power();
        if (d.is_zero()) throw ParseError("division by zero", at);
        r /= d;
      } else {
        return r;
      }
    }
  }

  RationalFn power() {
    RationalFn base = primary();
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      skip();
      const std::int64_t e = integer();
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  std::int64_t integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected integer", pos_);
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1ll << 40)) throw ParseError("integer too large", pos_);
      ++pos_;
    }
    return v;
  }

  RationalFn primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RationalFn r = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return RationalFn::constant(ctx_, vars_, ctx_.from_int(integer() % ctx_.p()));
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                                  std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (var_index(vars_, name)) return RationalFn::variable(ctx_, vars_, name);
      if (name == "t" && ctx_.k() > 1) return RationalFn::constant(ctx_, vars_, ctx_.gen());
      throw ParseError("unknown variable '" + name + "'", start);
    }
    throw ParseError("unexpected character", pos_);
  }

  const std::string& s_;
  const FieldCtx& ctx_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFn parse_rational(const std::string& text, const FieldCtx& ctx, const VarTable& vars) {
  return ExprParser(text, ctx, vars).run();
}

}  // namespace asinv
