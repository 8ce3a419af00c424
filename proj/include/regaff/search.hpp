#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regaff/affine.hpp"

namespace regaff {

/// What the backtracking search looks for.
///
/// The search space is total maps A: F^n -> U_n(q) (upper unitriangular
/// linear parts) with A(0) = I, subject to the closure law
/// A(w + u.A(w)) = A(u).A(w) for all u, w.  This is sound and complete up
/// to AGL-conjugacy: in positive characteristic every regular subgroup is
/// unipotent, every unipotent subgroup is conjugate into the unitriangular
/// group, and conjugation preserves both regularity and the size of the
/// intersection with the (normal) translation subgroup.  Counts are
/// therefore "within unitriangular shape", one representative per
/// conjugacy orbit reachable in that shape.
enum class SearchMode {
  enumerate_all,          // record every regular subgroup in the shape
  find_translation_free,  // prune any branch forcing A(v) = I for v != 0
};

std::string_view search_mode_name(SearchMode m);
SearchMode search_mode_from(std::string_view name);

struct SearchOptions {
  /// Candidate placements allowed in this run (resuming grants a fresh
  /// allowance; SearchResult::nodes stays cumulative).
  uint64_t node_budget = 200'000'000;
  unsigned threads = 1;  // root-branch parallelism
  /// Serialized checkpoint to continue from (single-threaded only).
  std::optional<std::string> resume;
};

struct SearchResult {
  SearchMode mode = SearchMode::enumerate_all;
  size_t regular_count = 0;
  size_t translation_free_count = 0;
  /// Each found group as its element set, in first-row order; in
  /// find_translation_free mode these are exactly the translation-free
  /// witnesses.
  std::vector<std::vector<AffineElem>> groups;
  uint64_t nodes = 0;
  double wall_seconds = 0;
  bool complete = true;
  /// Set when the node budget ran out (single-threaded runs only):
  /// a textual checkpoint accepted by SearchOptions::resume.
  std::string checkpoint;
};

/// Exhaustive backtracking enumeration of regular subgroups of AGL_n(q)
/// within unitriangular shape.  Deterministic: points are visited in
/// lexicographic order on coordinate tuples and candidates in
/// lexicographic order on the strictly-upper entries read row-major, so
/// two single-threaded runs yield identical results including node
/// counts.  Multi-threaded runs partition the first decision point's
/// candidates; verdicts and group sets are unchanged, and checkpointing
/// is unavailable.
SearchResult search_regular(size_t n, const Field& f, SearchMode mode,
                            const SearchOptions& opts = {});

/// Independent brute-force oracle: enumerates closures of all 1- and
/// 2-generator subsets of the full AGL_n(q) and keeps the regular
/// subgroups of order q^n (complete for these sizes, where every group
/// of order <= 4 is 2-generated).  Supported: (n, q) in {(1,2), (1,3),
/// (2,2)}.  Used to validate search_regular.
SearchResult naive_oracle(size_t n, const Field& f);

}  // namespace regaff
