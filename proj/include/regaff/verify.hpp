#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regaff/construct.hpp"

namespace regaff {

/// Result of a verification run.  Checks that do not apply to the input
/// (the description-only ones, for a bare element set) stay true and are
/// omitted from the text rendering.
struct VerifyReport {
  uint64_t order = 0;  // element count; 0 for the infinite rational case

  bool closure = false;
  bool regular = false;
  bool unipotent = false;
  bool isometry = true;   // desc only: every phi value preserves the form
  bool additive = true;   // desc only: n/m/phi homomorphisms + transport law
  bool w_match = true;    // desc only: translations are exactly W, additively

  std::vector<AffineElem> translations;  // the elements of S (or R) in Tr

  /// Whether the pairwise closure sweep covered every pair, and whether
  /// the per-element sweeps covered every element.  When either is false
  /// the seed/trials pair records the sampling.
  bool closure_exhaustive = true;
  bool sweeps_exhaustive = true;
  uint64_t seed = 0;
  size_t trials = 0;

  bool desc_checks = false;  // whether isometry/additive/w_match ran
  std::vector<std::string> failures;  // one witness line per failed check

  bool all_ok() const {
    return closure && regular && unipotent && isometry && additive && w_match;
  }
  std::string to_string() const;
};

/// True iff |S| = q^n and the first rows are pairwise distinct (hence S
/// acts regularly on F^n).  Closure is checked first; a non-closed set
/// yields false with a witness pair whose product escapes the set.
/// Requires a finite field.
bool check_regular(const std::vector<AffineElem>& s, const Field& f, size_t n,
                   std::string* witness = nullptr);

/// S ∩ Tr by direct scan.
std::vector<AffineElem> translation_subgroup(const std::vector<AffineElem>& s);

/// R ∩ Tr for a construction, via the shortcut that a translation forces
/// v = 0 (the linear part's upper-right block (J v^T) x d vanishes only at
/// v = 0 since J is invertible and d nonzero): only the q^k elements
/// r(0, a) are scanned.  Finite fields only.
std::vector<AffineElem> translation_subgroup(const RegularSubgroupDesc& r);

/// True iff w -> r(0, w) is an additive bijection from ker(phi) (the
/// prescribed W) onto translation_subgroup(r).  Finite fields only.
bool translations_match_w(const RegularSubgroupDesc& r,
                          std::string* witness = nullptr);

/// The full per-construction report: closure, regularity, unipotency,
/// isometry of the phi values, additivity (n, m, phi, and the transport
/// law m(a)^-1 n(v) m(a) = n(v phi(a))), and the translation/W match.
/// Per-element sweeps are exhaustive when q^n <= 2^20; the pairwise
/// closure sweep is exhaustive when q^n <= 1024 (above that all-pairs is
/// infeasible and 4096 seeded pairs are sampled, as recorded in the
/// report).  Over the rationals everything is sampled.
VerifyReport full_suite(const RegularSubgroupDesc& r, uint64_t seed = 1);

/// Closure, regularity, unipotency, and the translation list for a bare
/// element set (e.g. read from a group file).  Exhaustive pair sweep up
/// to 1024 elements, sampled with the given seed above.
VerifyReport verify_set(const std::vector<AffineElem>& s, const Field& f,
                        size_t n, uint64_t seed = 1);

}  // namespace regaff
