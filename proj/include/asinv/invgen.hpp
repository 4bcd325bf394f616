#pragma once

// Generating sets of invariant rings for the standard-form actions.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asinv/action.hpp"
#include "asinv/rational.hpp"

namespace asinv {

struct InvariantSet {
  VarTable vars;
  const FieldCtx* ctx = nullptr;
  std::vector<RationalFn> generators;
  std::vector<std::string> provenance;  // one tag per generator
  std::int64_t bound = 0;               // degree (or weight) bound used
  std::string grading = "total degree";
  std::vector<std::string> flags;
  bool complete = true;

  std::size_t size() const { return generators.size(); }
  void add(RationalFn g, std::string tag);
  std::vector<std::string> rendered() const;
  // All generators as polynomials; throws DomainError for rational ones.
  std::vector<MultiPoly> polynomials() const;
  void flag(const std::string& f);
};

// Work limits.  Exceeding one yields a partial set flagged "capped" (or a
// BudgetExceeded exception where a partial answer makes no sense).
struct Budget {
  std::uint32_t max_degree = 0;       // 0: the theoretical bound
  std::size_t max_terms = 2'000'000;  // monomials enumerated per call
  std::size_t max_kernel_dim = 600;   // dense kernel size in the modular fallback
  std::int64_t max_ms = 120'000;
};

// Monomials x^k with sum k <= bound (default m) and sum w_i k_i = 0 mod m,
// reduced to the irreducible ones.
InvariantSet diagonal_generators(std::uint32_t p, const VarTable& vars, const std::vector<std::int64_t>& weights,
                                 std::int64_t m, std::int64_t bound = -1, const Budget& budget = {});

InvariantSet two_pole_distinct_generators(std::uint32_t p, std::uint32_t d1, std::uint32_t d2);

// Equal orders: the generators m + sigma(m) of the invariant ring, complete up to
// the recorded weight bound (weights d-i for a_i, d+i for b_i).
InvariantSet two_pole_equal_generators(std::uint32_t p, std::uint32_t d, const Budget& budget = {});
// Same computation with the diagonal part restricted to alpha^modulus = 1 and
// lambda to its matching subgroup (modulus must divide d(p-1) and be a multiple of d).
InvariantSet two_pole_equal_generators_mod(std::uint32_t p, std::uint32_t d, std::int64_t modulus,
                                           const Budget& budget = {});
// The full finite candidate list for equal orders, before any reduction.
InvariantSet two_pole_equal_candidate_set(std::uint32_t p, std::uint32_t d);

// Linear group actions: invariant space degree by degree (orbit sums for
// monomial actions, Reynolds images when p does not divide |G|, kernels
// otherwise), then minimal generators.
InvariantSet orbit_sum_generators(const ActionSet& A, const Budget& budget = {});

// Three distinct orders, closed form a_{d1}^{p-2} x for every free coefficient x.
InvariantSet three_distinct_generators(std::uint32_t p, const std::vector<std::uint32_t>& orders);

// Elementary multisymmetric functions s_{k,mu} on n columns of m variables.
InvariantSet multisym_generators(std::uint32_t m, std::uint32_t n, std::uint32_t p = 3);
VarTable multisym_vars(std::uint32_t m, std::uint32_t n);

// Exponent vectors of primitive monomials (gcd of exponents 1) in m variables
// of degree between 1 and max_degree.
std::vector<Exponents> primitive_monomials(std::uint32_t m, std::uint32_t max_degree);
// k-th elementary symmetric function of the values.
template <class T>
T elementary_symmetric(const std::vector<T>& values, std::uint32_t k, const T& one, const T& zero) {
  std::vector<T> e(k + 1, zero);
  e[0] = one;
  for (const auto& v : values)
    for (std::uint32_t j = k; j >= 1; --j) e[j] = e[j] + e[j - 1] * v;
  return e[k];
}

// Subset of the generators generating the same algebra, checked degree by
// degree with the given weights (all ones if empty).  Generators must be
// weighted-homogeneous polynomials.
InvariantSet minimalize(const InvariantSet& S, const std::vector<std::int64_t>& weights = {});

// Four poles of order one: J1, J2', J2, J3, J4 in (a, b, c, e, theta).
InvariantSet four_pole_invariants(std::uint32_t p);
// j = (theta^2 - theta + 1)^3 / (theta^2 (theta - 1)^2) over the same variables.
RationalFn four_pole_j(std::uint32_t p);
// Checks every J and j under every map of the four-pole action, reducing
// modulo P_j(theta) by substituting the expression of j.  Returns the number
// of identities checked; throws VerificationError on failure.
std::size_t verify_four_pole(std::uint32_t p);

// Five poles of order one: multisymmetric functions of the 60-element orbit.
struct FivePoleSpecializations {
  Family family;
  ActionSet action;
  std::vector<std::pair<std::uint32_t, Exponents>> specs;  // (k, mu) with k deg(mu) <= k_max
  // Values of the specializations at a point; the orbit is computed in an
  // extension holding the auxiliary roots.  Throws DomainError at degenerate
  // points (coincident poles).
  std::vector<Fq> evaluate(std::span<const Fq> point) const;
  std::vector<std::string> labels() const;
};
FivePoleSpecializations five_pole_specializations(std::uint32_t p, std::uint32_t k_max);

// Two stages: generators of the first-stage (subgroup) invariants, then
// multisymmetric functions of the residual maps applied to them.
struct StagedResult {
  InvariantSet stage1;
  InvariantSet stage2;
  std::vector<std::vector<RationalFn>> residual_images;  // per residual map, images of stage1 generators
};
StagedResult staged_generators(const ActionSet& A, const Budget& budget = {});

// Invariants for a family with extra poles of equal order (road map branches 4
// and 5): multisymmetric functions of the extra poles, combined with the
// diagonal (or lambda) action.  closed_form follows the pattern a_{d1}^{p-2} x.
InvariantSet extra_pole_generators(const Family& fam, const ActionSet& A, bool closed_form, const Budget& budget = {});

// {1,1,1,2}: I1..I5 and orbit sums replacing the remaining two.
InvariantSet one_one_one_two_invariants(std::uint32_t p, const ActionSet& A);

// One pole of order d = 1 mod p: invariants of the beta = 0 subgroup, marked
// complete only when numeric orbits of the whole transformation set agree
// with the subgroup's on random samples.
InvariantSet one_pole_d1_generators(const Family& fam, const ActionSet& A, const Budget& budget = {});

// Exact symbolic invariance under every map of a group action (or every map of
// a non-group set).  Returns the failing (generator, map) pairs.
std::vector<std::pair<std::size_t, std::size_t>> invariance_failures(const InvariantSet& S, const ActionSet& A);

std::string invariant_set_json(const InvariantSet& S);

// Deadline helper shared by the long-running generators.
class Deadline {
 public:
  explicit Deadline(std::int64_t ms)
      : ms_(ms), start_(std::chrono::steady_clock::now()) {}
  bool expired() const { return ms_ > 0 && elapsed_ms() > ms_; }
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::int64_t ms_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace asinv
