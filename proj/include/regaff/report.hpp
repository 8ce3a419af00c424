#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regaff/search.hpp"

namespace regaff {

/// How a cell of the existence table was settled.
enum class Verdict {
  exists_constructed,  // an explicit construction succeeded
  exists_confirmed,    // construction succeeded AND exhaustive search found a witness
  exists_witness,      // exhaustive search found a witness (no construction)
  none_exhaustive,     // exhaustive search completed and found nothing
  none_theory,         // no construction applies; search infeasible, so unverified
};

std::string_view verdict_label(Verdict v);

struct ExistenceCell {
  size_t n = 0;
  const Field* field = nullptr;
  Verdict verdict = Verdict::none_theory;
  uint64_t search_nodes = 0;  // 0 when no search ran to completion
};

/// Existence of translation-free regular subgroups of AGL_n(F), one cell
/// per (n, field).  Cells are constructed where the builtin families
/// apply; small cells (q^n and the unitriangular candidate count both at
/// most 64) are additionally settled by exhaustive search under the given
/// per-cell node budget.
struct ExistenceTable {
  size_t max_n = 0;
  std::vector<const Field*> fields;    // columns
  std::vector<ExistenceCell> cells;    // row-major, n = 1..max_n
};

ExistenceTable existence_table(size_t max_n, const std::vector<const Field*>& fields,
                               uint64_t search_budget = 2'000'000);

/// Human-readable aligned grid.
std::string render_text(const ExistenceTable& t);

/// Machine-readable rows, one line per cell; byte-identical across runs
/// with the same arguments.
std::string render_rows(const ExistenceTable& t);

}  // namespace regaff
