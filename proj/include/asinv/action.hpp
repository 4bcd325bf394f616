#pragma once

// Finite sets of standard-form preserving isomorphisms, as maps on the
// coefficients of a standard form.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asinv/curve.hpp"
#include "asinv/moduli.hpp"
#include "asinv/rational.hpp"

namespace asinv {

// Road map branch 1..7 with the re-sorted orders.
struct CaseInfo {
  int branch = 0;
  std::vector<std::uint32_t> orders;         // distinguished poles first
  std::vector<std::uint32_t> distinguished;  // sent to infinity, 0, 1 (as many as used)
  std::string route;
};

CaseInfo classify_case(std::uint32_t p, std::vector<std::uint32_t> orders);

// Which standard form a family uses.
enum class FormKind {
  onePole,       // monic polynomial, farnell or p = 3 depressed or theorem33
  twoPole,       // monic at infinity, pole at 0, optional extra poles
  threePlus,     // poles at infinity, 0, 1 (not monic), optional extra poles
  pairedTwoTwo,  // {2,2,1,1}: x^2 + a1 x + b1/x + b2/x^2 + (e1 x + e2)/(x^2 + e3 x + e4)
  fivePoles,     // a x + b/x + c/(x-1) + (t x + r)/(x^2 - s x + u)
};

struct Slot {
  enum class Where { infinity, zero, one, param };
  Where where = Where::infinity;
  std::string theta;               // location variable when where == param
  std::uint32_t order = 0;
  std::vector<std::string> coeff;  // coeff[i-1] names the coefficient of u^i, "" if fixed
  std::vector<int> fixed;          // value when the name is empty
  int group = -1;                  // extra poles of equal order share a group id
};

struct Family {
  std::uint32_t p = 0;
  CaseInfo info;
  ComponentDescriptor comp;
  FormKind kind = FormKind::onePole;
  StandardFormVariant variant = StandardFormVariant::theorem33;
  std::vector<Slot> slots;  // empty for the paired encodings
  VarTable vars;
  std::string form;  // rendered template
};

Family standard_family(std::uint32_t p, const std::vector<std::uint32_t>& orders);

// Curve <-> coefficient point for a family.  curve_from_point lifts to a field
// holding the pole locations when needed.
ASCurve curve_from_point(const Family& fam, std::span<const Fq> point);
// The curve must already be in the family's standard form.
std::vector<Fq> point_from_curve(const Family& fam, const ASCurve& c);
// Brings a curve of the family's component into the family's standard form.
StandardFormResult family_standard_form(const Family& fam, const ASCurve& c);

enum class ActionKind { diagonal, linearGroup, nonlinearGroup, nonGroup };
std::string to_string(ActionKind k);

// aux is a root of poly (a polynomial in the family variables and aux);
// relation rewrites one family variable in terms of aux.
struct AuxSpec {
  std::string name;
  MultiPoly poly;       // over all_vars
  Assignment relation;  // e.g. b2 -> 1/alpha^2
};

struct CoefficientMap {
  std::string label;
  std::vector<RationalFn> images;  // one per family variable, over all_vars
  std::optional<AuxSpec> aux;
  // Numeric-only maps (images empty): all images of a point.
  std::function<std::vector<std::vector<Fq>>(std::span<const Fq>)> numeric;
};

struct ActionSet {
  const FieldCtx* ctx = nullptr;  // field of the map coefficients
  VarTable vars;                  // family variables
  VarTable all_vars;              // family variables followed by auxiliaries
  std::vector<CoefficientMap> maps;
  bool is_group = true;
  ActionKind kind = ActionKind::linearGroup;
  std::size_t group_order = 0;  // |G| for groups (counting maps that act identically once)
  // diagonal data: x_i -> alpha^{w_i} x_i with alpha^m = 1
  std::vector<std::int64_t> weights;
  std::int64_t modulus = 0;
  // first stage (pole relabelling) when staged
  std::vector<CoefficientMap> stage1;
  std::vector<std::string> stages;
  std::vector<std::string> flags;
};

ActionSet stabilizer_actions(const Family& fam);
ActionSet stabilizer_actions(std::uint32_t p, const std::vector<std::uint32_t>& orders, const CaseInfo& info);

// Image(s) of a numeric point under one map.  Throws DomainError when a
// denominator vanishes and NeedsExtension when an auxiliary root lies outside
// the point's field.
struct NeedsExtension : DomainError {
  using DomainError::DomainError;
};
std::vector<std::vector<Fq>> apply_map(const ActionSet& A, const CoefficientMap& m, std::span<const Fq> point);

// Orbit (groups: closure; non-groups: one pass), sorted and duplicate free.
// The point is lifted into a field holding the action's coefficients and, if
// needed, auxiliary roots; the returned tuples live in that field.
std::vector<std::vector<Fq>> orbit(std::span<const Fq> point, const ActionSet& A);

// Matrix per map (row i = image of variable i in the variable order).
std::vector<std::vector<std::vector<Fq>>> linear_matrices(const ActionSet& A);

// Symbolic composition check for groups without auxiliaries; numeric orbit
// closure otherwise.  Throws VerificationError on failure.
void verify_group(const ActionSet& A);

// f o map, with the auxiliary relation applied when present.
RationalFn substitute_map(const RationalFn& f, const ActionSet& A, const CoefficientMap& m);
// f with the map's auxiliary relation applied (identity when there is none).
RationalFn relate(const RationalFn& f, const ActionSet& A, const CoefficientMap& m);

std::string action_json(const ActionSet& A);

// Symbolic transport of principal parts with rational-function coefficients.
struct SymPole {
  bool at_infinity = true;
  RationalFn location;
  std::vector<RationalFn> tail;
};
std::vector<SymPole> transport_symbolic(const std::vector<SymPole>& poles, const MobiusT<RationalFn>& M,
                                        const RationalFn& lambda, bool& linearized);
// Moebius map with the given points (nullopt = infinity) sent to infinity, 0, 1.
MobiusT<RationalFn> symbolic_cross_ratio(const std::optional<RationalFn>& P, const std::optional<RationalFn>& Q,
                                         const std::optional<RationalFn>& R, const RationalFn& one);

}  // namespace asinv
