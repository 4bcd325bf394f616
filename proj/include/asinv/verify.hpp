#pragma once

// Empirical checks of invariant sets: fingerprints, orbit membership,
// separation reports and reconstruction for the catalogued families.

#include <cstdint>
#include <string>
#include <vector>

#include "asinv/action.hpp"
#include "asinv/invgen.hpp"

namespace asinv {

struct Fingerprint {
  std::vector<Fq> values;
  const FieldCtx* ctx = nullptr;

  bool operator==(const Fingerprint& o) const;
  bool operator!=(const Fingerprint& o) const { return !(*this == o); }
  std::vector<std::string> rendered() const;
};

// Values of the generators at the point.  Throws DomainError naming the
// generator whose denominator vanishes.
Fingerprint fingerprint(std::span<const Fq> point, const InvariantSet& S);

// y in the orbit of x.  Group actions only (InputError otherwise).
bool same_orbit(std::span<const Fq> x, std::span<const Fq> y, const ActionSet& A);
// Non-group sets: the single-pass orbits share a point.
bool orbits_intersect(std::span<const Fq> x, std::span<const Fq> y, const ActionSet& A);

struct SampleSpec {
  enum class Kind { exhaustive, random } kind = Kind::exhaustive;
  std::uint32_t field_degree = 1;  // points over F_{p^k}
  std::size_t count = 0;           // random samples
  std::uint64_t seed = 1;
  bool admissible_only = false;    // keep only points giving a curve of the family
};

struct SeparationWitness {
  std::vector<Fq> x, y;
  std::string what;
};

struct SeparationReport {
  std::size_t sample_size = 0;
  std::size_t skipped = 0;  // points whose orbit could not be formed
  std::size_t orbit_equal_pairs = 0;
  std::size_t fingerprint_equal_pairs = 0;
  std::size_t violations = 0;           // equal fingerprints, different orbits
  std::size_t soundness_failures = 0;   // fingerprint changes along an orbit
  std::vector<SeparationWitness> witnesses;

  bool ok() const { return violations == 0 && soundness_failures == 0; }
  std::string to_json() const;
};

std::vector<std::vector<Fq>> sample_points(const Family& fam, const SampleSpec& spec);
SeparationReport separating_check(const Family& fam, const ActionSet& A, const InvariantSet& S,
                                  const std::vector<std::vector<Fq>>& points);
SeparationReport separating_check(const Family& fam, const ActionSet& A, const InvariantSet& S,
                                  const SampleSpec& spec);

// The invariant set reconstruct() expects for the family: the closed form for
// distinct orders, I1..I7 for {1,1,1,2}, and J1, J2', J2, J3, J4, j for four
// poles of order one.  InputError for other families.
InvariantSet reconstructing_set(const Family& fam);

struct Reconstruction {
  std::vector<Fq> point;
  ASCurve curve;
};
// A point of the family with the given fingerprint (relative to
// reconstructing_set(fam)), choosing the smallest admissible root at each step.
// DomainError when the values lie outside the image or in a degenerate stratum.
Reconstruction reconstruct(const Family& fam, const Fingerprint& fp);

}  // namespace asinv
