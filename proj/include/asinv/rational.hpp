#pragma once

// Reduced fractions of MultiPoly with a monic denominator.

#include <map>
#include <string>

#include "asinv/poly.hpp"

namespace asinv {

class RationalFn {
 public:
  RationalFn() = default;
  explicit RationalFn(MultiPoly num);
  RationalFn(MultiPoly num, MultiPoly den);  // normalizes; throws DomainError if den == 0

  static RationalFn constant(const FieldCtx& ctx, VarTable vars, const Fq& c);
  static RationalFn constant(const FieldCtx& ctx, VarTable vars, std::int64_t c);
  static RationalFn variable(const FieldCtx& ctx, VarTable vars, const std::string& name);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const FieldCtx& ctx() const { return num_.ctx(); }
  const VarTable& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator-() const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  RationalFn operator*(const Fq& c) const;
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }
  RationalFn pow(std::int64_t e) const;
  RationalFn inv() const;

  // Representation equality; canonical, so equivalent to rational_equal.
  bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  // Throws DomainError when the denominator vanishes at the point.
  Fq evaluate(std::span<const Fq> point) const;
  RationalFn remap(const VarTable& target) const;
  RationalFn lift(const FieldCtx& target) const;

  std::string to_string() const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

using Assignment = std::map<std::string, RationalFn>;

// Every variable occurring in f must be assigned; images share one table.
RationalFn substitute(const MultiPoly& f, const Assignment& assignment);
RationalFn substitute(const RationalFn& f, const Assignment& assignment);

bool rational_equal(const RationalFn& f, const RationalFn& g);

// Expressions with + - * / ^ and parentheses over the given variables.  A bare
// "t" that is not a variable denotes the extension generator.
RationalFn parse_rational(const std::string& text, const FieldCtx& ctx, const VarTable& vars);

}  // namespace asinv
