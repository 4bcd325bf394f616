#pragma once

// Artin-Schreier curves y^p - y = f(x) with f given by its principal parts.

#include <optional>
#include <string>
#include <vector>

#include "asinv/field.hpp"
#include "asinv/moduli.hpp"
#include "asinv/transport.hpp"

namespace asinv {

struct Pole {
  bool at_infinity = true;
  Fq location;            // meaningful only for finite poles
  std::vector<Fq> tail;   // tail[i-1]: coefficient of x^i, resp. (x - location)^(-i)

  std::uint32_t order() const { return static_cast<std::uint32_t>(tail.size()); }
  Fq coeff(std::uint32_t i) const;  // 0 when out of range
  bool operator==(const Pole& o) const;
};

class ASCurve {
 public:
  ASCurve() = default;
  ASCurve(const FieldCtx& ctx, std::vector<Pole> poles);

  const FieldCtx& ctx() const { return *ctx_; }
  std::uint32_t p() const { return ctx_->p(); }
  const std::vector<Pole>& poles() const { return poles_; }
  std::vector<std::uint32_t> orders() const;  // descending
  ComponentDescriptor component() const { return describe(p(), orders()); }

  const Pole* pole_at_infinity() const;
  const Pole* pole_at(const Fq& location) const;

  // Coefficients embedded into a larger field.
  ASCurve lift(const FieldCtx& target) const;

  bool operator==(const ASCurve& o) const { return ctx_ == o.ctx_ && poles_ == o.poles_; }
  bool operator!=(const ASCurve& o) const { return !(*this == o); }

 private:
  void canonicalize();

  const FieldCtx* ctx_ = nullptr;
  std::vector<Pole> poles_;
};

struct Mobius {
  Fq a, b, c, d;  // x -> (a x + b) / (c x + d)

  static Mobius identity(const FieldCtx& ctx);
  static Mobius scale(const Fq& alpha);                // x -> alpha x
  static Mobius translate(const Fq& beta);             // x -> x + beta
  static Mobius affine(const Fq& alpha, const Fq& beta);
  // The map sending P -> infinity, Q -> 0, R -> 1 (nullopt = infinity).
  static Mobius cross_ratio(const FieldCtx& ctx, std::optional<Fq> P, std::optional<Fq> Q, std::optional<Fq> R);

  Fq det() const { return a * d - b * c; }
  Mobius inverse() const;
  Mobius compose(const Mobius& inner) const;  // (this o inner)(x)
  // Image of a point of P^1 (nullopt = infinity).
  std::optional<Fq> apply(std::optional<Fq> x) const;
  Mobius lift(const FieldCtx& target) const;
  std::string to_string() const;
};

// phi(x, y) = (M(x), lambda y + h(x)) from the new curve onto the old one:
//   f_new = lambda^{-1} (f_old o M - h^p + h).
struct IsomorphismData {
  Mobius M;
  Fq lambda;
  std::vector<Pole> h;  // principal parts of h in the new variable (constant dropped)
  std::vector<std::string> notes;
};

enum class StandardFormVariant { theorem33, farnell, p3depressed, twoPoleGeneral, threePlus };
std::string to_string(StandardFormVariant v);
StandardFormVariant variant_from_string(const std::string& s);

// Removes p-divisible exponents; throws DomainError if f reduces to a constant.
ASCurve eliminate_p_powers(const ASCurve& c);
// Same, also returning the accumulated h.
ASCurve eliminate_p_powers(const ASCurve& c, std::vector<Pole>& h);

// The h forced by (M, lambda) (unique up to F_p constants, which are dropped).
std::vector<Pole> solve_h(const ASCurve& c, const Mobius& M, const Fq& lambda);

// Throws DomainError for a degenerate Moebius map and VerificationError if a
// supplied h disagrees with the forced one.
ASCurve apply_isomorphism(const ASCurve& c, const IsomorphismData& iso);

IsomorphismData inverse_isomorphism(const ASCurve& c, const IsomorphismData& iso);

struct StandardFormResult {
  ASCurve curve;
  IsomorphismData witness;
};

// Throws InputError when the variant does not apply.
StandardFormResult to_standard_form(const ASCurve& c, StandardFormVariant v);
bool is_standard_form(const ASCurve& c, StandardFormVariant v);
bool variant_applicable(const ASCurve& c, StandardFormVariant v);
// One pole of order d, p = 3: the x^(d-3) coefficient can be cleared.
bool p3_depressed_applicable(std::uint32_t p, std::uint32_t d);

// All beta in the curve's field such that f(x + beta), reduced, has a zero
// coefficient of x^target.  The curve must have a single pole, at infinity.
std::vector<Fq> clearing_translations(const ASCurve& c, std::uint32_t target);

// "p=3; ext=2; x^2 + t*x + 2/x + 1/(x-t)^2".  Exponents divisible by p are
// reduced (with a warning) unless strict is set.
ASCurve parse_curve(const std::string& text, std::vector<std::string>* warnings = nullptr, bool strict = false);
std::string render_curve(const ASCurve& c);

// Generic-tail conversions.
std::vector<TailT<Fq>> to_tails(const std::vector<Pole>& poles);
std::vector<Pole> from_tails(const std::vector<TailT<Fq>>& tails);

}  // namespace asinv
