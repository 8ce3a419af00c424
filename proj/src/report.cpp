#include "regaff/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "regaff/construct.hpp"

namespace regaff {

namespace {

std::string field_label(const Field& f) {
  if (f.is_rational()) return "Q";
  return std::to_string(f.order());
}

bool small_enough_to_search(const Field& f, size_t n, uint64_t cap) {
  if (!f.is_finite()) return false;
  uint64_t points = 1, cands = 1;
  for (size_t i = 0; i < n; ++i) {
    points *= f.order();
    if (points > cap) return false;
  }
  for (size_t i = 0; i < n * (n - 1) / 2; ++i) {
    cands *= f.order();
    if (cands > cap) return false;
  }
  return true;
}

ExistenceCell settle(size_t n, const Field& f, uint64_t budget) {
  ExistenceCell cell;
  cell.n = n;
  cell.field = &f;

  bool constructed = false;
  try {
    build_rw(f, n);
    constructed = true;
  } catch (const std::invalid_argument&) {
    constructed = false;
  }

  bool searched = false, witness = false;
  if (small_enough_to_search(f, n, 64)) {
    SearchOptions opts;
    opts.node_budget = budget;
    SearchResult sr = search_regular(n, f, SearchMode::find_translation_free, opts);
    if (sr.complete) {
      searched = true;
      witness = sr.translation_free_count > 0;
      cell.search_nodes = sr.nodes;
    }
  }

  if (searched && constructed && !witness)
    throw std::logic_error("construction and exhaustive search disagree");
  if (constructed)
    cell.verdict = (searched && witness) ? Verdict::exists_confirmed : Verdict::exists_constructed;
  else if (searched)
    cell.verdict = witness ? Verdict::exists_witness : Verdict::none_exhaustive;
  else
    cell.verdict = Verdict::none_theory;
  return cell;
}

}  // namespace

std::string_view verdict_label(Verdict v) {
  switch (v) {
    case Verdict::exists_constructed: return "EXISTS (constructed)";
    case Verdict::exists_confirmed: return "EXISTS (constructed + search witness)";
    case Verdict::exists_witness: return "EXISTS (search witness)";
    case Verdict::none_exhaustive: return "NONE (exhaustive search)";
    case Verdict::none_theory: return "NONE (theory, unverified)";
  }
  throw std::logic_error("bad Verdict");
}

ExistenceTable existence_table(size_t max_n, const std::vector<const Field*>& fields,
                               uint64_t search_budget) {
  if (max_n == 0) throw std::invalid_argument("existence_table requires max_n >= 1");
  if (fields.empty()) throw std::invalid_argument("existence_table requires at least one field");
  ExistenceTable t;
  t.max_n = max_n;
  t.fields = fields;
  for (size_t n = 1; n <= max_n; ++n)
    for (const Field* f : fields) t.cells.push_back(settle(n, *f, search_budget));
  return t;
}

std::string render_text(const ExistenceTable& t) {
  const size_t cols = t.fields.size();
  std::vector<size_t> width(cols);
  for (size_t c = 0; c < cols; ++c) {
    width[c] = field_label(*t.fields[c]).size();
    for (size_t r = 0; r < t.max_n; ++r)
      width[c] = std::max(width[c], verdict_label(t.cells[r * cols + c].verdict).size());
  }

  std::ostringstream out;
  out << "translation-free regular subgroups of AGL_n(F)\n";
  out << "n \\ q";
  for (size_t c = 0; c < cols; ++c) {
    std::string lbl = field_label(*t.fields[c]);
    out << " | " << lbl << std::string(width[c] - lbl.size(), ' ');
  }
  out << "\n";
  out << "-----";
  for (size_t c = 0; c < cols; ++c) out << "-+-" << std::string(width[c], '-');
  out << "\n";
  for (size_t r = 0; r < t.max_n; ++r) {
    std::string n_lbl = std::to_string(r + 1);
    out << std::string(5 - n_lbl.size(), ' ') << n_lbl;
    for (size_t c = 0; c < cols; ++c) {
      std::string lbl(verdict_label(t.cells[r * cols + c].verdict));
      out << " | " << lbl << std::string(width[c] - lbl.size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

std::string render_rows(const ExistenceTable& t) {
  std::ostringstream out;
  out << "REGAFF v1\n";
  out << "TABLE existence\n";
  for (const ExistenceCell& cell : t.cells) {
    out << "CELL n=" << cell.n << " q=" << field_label(*cell.field) << " verdict=";
    switch (cell.verdict) {
      case Verdict::exists_constructed: out << "EXISTS how=constructed"; break;
      case Verdict::exists_confirmed: out << "EXISTS how=constructed+witness"; break;
      case Verdict::exists_witness: out << "EXISTS how=witness"; break;
      case Verdict::none_exhaustive: out << "NONE how=exhaustive"; break;
      case Verdict::none_theory: out << "NONE how=theory-unverified"; break;
    }
    out << " nodes=" << cell.search_nodes << "\n";
  }
  out << "END\n";
  return out.str();
}

}  // namespace regaff
