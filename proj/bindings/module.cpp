// Python bindings for the main operations: construction, verification,
// exhaustive search, the existence report, and group-file round trips.
// Element sets cross the boundary as lists of matrix encodings (the same
// strings the text formats use), which keeps the surface small and exact.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regaff/construct.hpp"
#include "regaff/groupfile.hpp"
#include "regaff/report.hpp"
#include "regaff/search.hpp"
#include "regaff/verify.hpp"

namespace py = pybind11;
using namespace regaff;

namespace {

const Field& resolve_field(int64_t p, int ell, bool rational) {
  if (rational) {
    if (p != 0) throw std::invalid_argument("rational field takes no characteristic");
    return Field::rationals();
  }
  return Field::finite(p, ell);
}

std::vector<std::string> encode_set(const std::vector<AffineElem>& g) {
  std::vector<std::string> out;
  out.reserve(g.size());
  for (const AffineElem& e : g) out.push_back(e.matrix().encode());
  return out;
}

std::vector<AffineElem> decode_set(const std::vector<std::string>& rows, const Field& f) {
  std::vector<AffineElem> out;
  out.reserve(rows.size());
  for (const std::string& s : rows) out.push_back(AffineElem::from_matrix(Mat::parse(f, s)));
  return out;
}

RegularSubgroupDesc make_desc(int64_t p, int ell, bool rational, size_t n,
                              const std::vector<std::string>& w,
                              const std::optional<std::string>& family,
                              const std::optional<std::string>& d) {
  const Field& f = resolve_field(p, ell, rational);
  std::vector<FieldElem> scalars;
  for (const std::string& s : w) scalars.push_back(Vec::parse(f, s)[0]);
  std::optional<HomKind> kind;
  if (family) kind = hom_kind_from(*family);
  std::optional<Vec> dv;
  if (d) dv = Vec::parse(f, *d);
  return build_rw(f, n, scalars, kind, dv);
}

}  // namespace

PYBIND11_MODULE(_regaff, m) {
  m.doc() = "exact-arithmetic regular subgroups of the affine group";

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("order", &VerifyReport::order)
      .def_readonly("closure", &VerifyReport::closure)
      .def_readonly("regular", &VerifyReport::regular)
      .def_readonly("unipotent", &VerifyReport::unipotent)
      .def_readonly("isometry", &VerifyReport::isometry)
      .def_readonly("additive", &VerifyReport::additive)
      .def_readonly("w_match", &VerifyReport::w_match)
      .def_readonly("closure_exhaustive", &VerifyReport::closure_exhaustive)
      .def_readonly("sweeps_exhaustive", &VerifyReport::sweeps_exhaustive)
      .def_readonly("failures", &VerifyReport::failures)
      .def_property_readonly("translation_count",
                             [](const VerifyReport& r) { return r.translations.size(); })
      .def_property_readonly("ok", &VerifyReport::all_ok)
      .def("__str__", &VerifyReport::to_string);

  py::class_<RegularSubgroupDesc>(m, "RegularSubgroup")
      .def_property_readonly("n", &RegularSubgroupDesc::n)
      .def_property_readonly("m", &RegularSubgroupDesc::m)
      .def_property_readonly("k", &RegularSubgroupDesc::k)
      .def_property_readonly("field",
                             [](const RegularSubgroupDesc& r) { return r.field().header_line(); })
      .def_property_readonly("order",
                             [](const RegularSubgroupDesc& r) -> std::optional<uint64_t> {
                               if (!r.field().is_finite()) return std::nullopt;
                               return r.order();
                             })
      .def("describe", &RegularSubgroupDesc::describe)
      .def("generators",
           [](const RegularSubgroupDesc& r) { return encode_set(r.generators()); })
      .def(
          "elements",
          [](const RegularSubgroupDesc& r, size_t limit) { return encode_set(r.elements(limit)); },
          py::arg("limit") = size_t(1) << 20)
      .def("translation_count",
           [](const RegularSubgroupDesc& r) { return translation_subgroup(r).size(); })
      .def(
          "verify", [](const RegularSubgroupDesc& r, uint64_t seed) { return full_suite(r, seed); },
          py::arg("seed") = 1);

  m.def("construct", &make_desc, py::arg("p") = 0, py::arg("ell") = 1,
        py::arg("rational") = false, py::arg("n") = 4,
        py::arg("w") = std::vector<std::string>{}, py::arg("family") = py::none(),
        py::arg("d") = py::none(),
        "Build a regular subgroup of AGL_n(F) with prescribed translation intersection.");

  m.def("hegedus_agl32", [] {
    auto [a, b] = hegedus_agl32();
    return encode_set({a, b});
  });

  m.def(
      "close_group",
      [](const std::vector<std::string>& gens, int64_t p, int ell, size_t limit) {
        const Field& f = Field::finite(p, ell);
        return encode_set(close_group(decode_set(gens, f), limit));
      },
      py::arg("gens"), py::arg("p"), py::arg("ell") = 1, py::arg("limit") = size_t(1) << 20);

  m.def(
      "direct_product",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b, int64_t p,
         int ell) {
        const Field& f = Field::finite(p, ell);
        return encode_set(direct_product(decode_set(a, f), decode_set(b, f)));
      },
      py::arg("a"), py::arg("b"), py::arg("p"), py::arg("ell") = 1);

  m.def(
      "verify_elements",
      [](const std::vector<std::string>& rows, int64_t p, int ell, size_t n, uint64_t seed) {
        const Field& f = Field::finite(p, ell);
        return verify_set(decode_set(rows, f), f, n, seed);
      },
      py::arg("elements"), py::arg("p"), py::arg("ell") = 1, py::arg("n") = 3,
      py::arg("seed") = 1);

  m.def(
      "search",
      [](size_t n, int64_t p, int ell, const std::string& mode, uint64_t budget, size_t threads,
         const std::optional<std::string>& resume) {
        SearchOptions opts;
        opts.node_budget = budget;
        opts.threads = threads;
        opts.resume = resume;
        SearchResult r =
            search_regular(n, Field::finite(p, ell), search_mode_from(mode), opts);
        py::dict out;
        out["mode"] = search_mode_name(r.mode);
        out["regular_count"] = r.regular_count;
        out["translation_free_count"] = r.translation_free_count;
        out["nodes"] = r.nodes;
        out["complete"] = r.complete;
        out["checkpoint"] =
            r.checkpoint.empty() ? py::object(py::none()) : py::object(py::str(r.checkpoint));
        std::vector<std::vector<std::string>> groups;
        for (const auto& g : r.groups) groups.push_back(encode_set(g));
        out["groups"] = groups;
        return out;
      },
      py::arg("n"), py::arg("p"), py::arg("ell") = 1,
      py::arg("mode") = "find_translation_free", py::arg("budget") = SearchOptions{}.node_budget,
      py::arg("threads") = 1, py::arg("resume") = py::none(),
      "Exhaustive unitriangular-shape search; returns counts, groups, and checkpoint state.");

  m.def(
      "existence_report",
      [](size_t max_n, const std::vector<std::string>& fields) {
        std::vector<const Field*> fs;
        for (const std::string& tok : fields) {
          if (tok == "Q" || tok == "q") {
            fs.push_back(&Field::rationals());
            continue;
          }
          uint64_t q = std::stoull(tok);
          for (int64_t p = 2;; ++p)
            if (q % uint64_t(p) == 0) {
              int ell = 0;
              uint64_t t = q;
              while (t > 1) {
                if (t % uint64_t(p) != 0) throw std::invalid_argument("not a prime power: " + tok);
                t /= uint64_t(p);
                ++ell;
              }
              fs.push_back(&Field::finite(p, ell));
              break;
            }
        }
        ExistenceTable t = existence_table(max_n, fs);
        return py::make_tuple(render_text(t), render_rows(t));
      },
      py::arg("max_n") = 6, py::arg("fields") = std::vector<std::string>{"2", "3", "4", "5"},
      "Existence table for translation-free regular subgroups; returns (text, machine_rows).");

  m.def(
      "save_group",
      [](const std::string& path, const std::vector<std::string>& elements,
         const std::vector<std::string>& generators, int64_t p, int ell, size_t n,
         const std::vector<std::string>& comments) {
        const Field& f = Field::finite(p, ell);
        GroupFile gf;
        gf.field = &f;
        gf.n = n;
        gf.comments = comments;
        gf.generators = decode_set(generators, f);
        gf.elements = decode_set(elements, f);
        write_group_file(path, gf);
      },
      py::arg("path"), py::arg("elements"), py::arg("generators"), py::arg("p"),
      py::arg("ell") = 1, py::arg("n") = 3, py::arg("comments") = std::vector<std::string>{});

  m.def("load_group", [](const std::string& path) {
    GroupFile gf = read_group_file(path);
    py::dict out;
    out["field"] = gf.field->header_line();
    out["n"] = gf.n;
    out["comments"] = gf.comments;
    out["generators"] = encode_set(gf.generators);
    out["elements"] = encode_set(gf.elements);
    return out;
  });
}
