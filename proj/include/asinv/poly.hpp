#pragma once

// Sparse multivariate polynomials over F_q in a named, ordered variable table.
// Terms are kept in graded reverse lexicographic order, largest first, with the
// variable order of the table (first variable is largest).

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asinv/field.hpp"

namespace asinv {

using VarTable = std::shared_ptr<const std::vector<std::string>>;
using Exponents = std::vector<std::uint32_t>;

VarTable make_vars(std::vector<std::string> names);
bool same_vars(const VarTable& a, const VarTable& b);
std::optional<std::size_t> var_index(const VarTable& vars, const std::string& name);
// Union keeping a's order, then new names of b in b's order.
VarTable merge_vars(const VarTable& a, const VarTable& b);

std::uint64_t total_degree(const Exponents& e);

struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Fq, GrevlexGreater>;

  MultiPoly() = default;
  MultiPoly(const FieldCtx& ctx, VarTable vars);

  static MultiPoly constant(const FieldCtx& ctx, VarTable vars, const Fq& c);
  static MultiPoly constant(const FieldCtx& ctx, VarTable vars, std::int64_t c);
  static MultiPoly variable(const FieldCtx& ctx, VarTable vars, const std::string& name);
  static MultiPoly variable(const FieldCtx& ctx, VarTable vars, std::size_t index);
  static MultiPoly monomial(const FieldCtx& ctx, VarTable vars, Exponents e, const Fq& c);

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldCtx* ctx_ptr() const { return ctx_; }
  const VarTable& vars() const { return vars_; }
  std::size_t arity() const { return vars_ ? vars_->size() : 0; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Fq constant_term() const;
  Fq coefficient(const Exponents& e) const;

  // Leading term under grevlex; requires nonzero.
  const Exponents& leading_exponents() const;
  Fq leading_coefficient() const;

  std::uint64_t total_degree() const;  // 0 for the zero polynomial
  std::uint32_t degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  // Weighted degree of every term (throws if the terms disagree, unless zero).
  std::optional<std::int64_t> homogeneous_weight(std::span<const std::int64_t> weights) const;
  std::int64_t max_weight(std::span<const std::int64_t> weights) const;

  void add_term(const Exponents& e, const Fq& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Fq& c) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly pow(std::uint32_t e) const;
  MultiPoly shift(const Exponents& e) const;  // multiply by a monomial

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Scale so the leading coefficient is 1 (zero stays zero).
  MultiPoly monic() const;

  Fq evaluate(std::span<const Fq> point) const;
  // Same polynomial in another variable table (names matched; missing names
  // must not occur in this polynomial).
  MultiPoly remap(const VarTable& target) const;
  // Coefficients embedded into a larger field.
  MultiPoly lift(const FieldCtx& target) const;

  // Univariate view in one variable: coefficient of var^i at index i.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(std::span<const MultiPoly> coeffs, std::size_t var);

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  const FieldCtx* ctx_ = nullptr;
  VarTable vars_;
  TermMap terms_;
};

inline MultiPoly operator*(const Fq& c, const MultiPoly& f) { return f * c; }

// Multivariate division by a single divisor; remainder is zero iff g | f.
struct DivRem {
  MultiPoly quotient;
  MultiPoly remainder;
};
DivRem divrem(const MultiPoly& f, const MultiPoly& g);
// Throws VerificationError if g does not divide f.
MultiPoly exact_div(const MultiPoly& f, const MultiPoly& g);
std::optional<MultiPoly> try_div(const MultiPoly& f, const MultiPoly& g);

// Monic gcd (recursive primitive PRS over F_q).
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);

// Polynomial text: terms joined by "+", term = [coef "*"] factor ("*" factor)*,
// factor = name ["^" exponent].  Extension coefficients are written "(2*t+1)".
MultiPoly parse_poly(const std::string& text, const FieldCtx& ctx, const VarTable& vars);
// Variables collected in order of first appearance.
MultiPoly parse_poly_auto(const std::string& text, const FieldCtx& ctx);

// Incremental row echelon form of polynomials viewed as coefficient vectors
// indexed by monomials.  Used for graded linear algebra.
class Echelon {
 public:
  // Reduces f against the stored rows; returns the reduced form.
  MultiPoly reduce(MultiPoly f) const;
  // Inserts f if independent; returns true when the span grew.
  bool insert(const MultiPoly& f);
  bool contains(const MultiPoly& f) const { return reduce(f).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  std::vector<MultiPoly> basis() const;

 private:
  std::map<Exponents, MultiPoly, GrevlexGreater> rows_;  // pivot -> monic row
};

}  // namespace asinv
