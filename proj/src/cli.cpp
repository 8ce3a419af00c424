#include "regaff/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "regaff/construct.hpp"
#include "regaff/groupfile.hpp"
#include "regaff/report.hpp"
#include "regaff/search.hpp"
#include "regaff/verify.hpp"

namespace regaff {

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct FieldArgs {
  int64_t p = 0;
  int ell = 1;
  bool rational = false;
};

void add_field_opts(CLI::App* sub, FieldArgs& fa, bool allow_rational) {
  sub->add_option("--p", fa.p, "field characteristic (prime)");
  sub->add_option("--ell", fa.ell, "extension degree (default 1)");
  if (allow_rational) sub->add_flag("--rational", fa.rational, "work over the rationals");
}

const Field& resolve_field(const FieldArgs& fa) {
  if (fa.rational) {
    if (fa.p != 0) throw std::invalid_argument("--rational excludes --p/--ell");
    return Field::rationals();
  }
  if (fa.p == 0) throw std::invalid_argument("--p is required (or --rational)");
  return Field::finite(fa.p, fa.ell);
}

struct ConstructArgs {
  FieldArgs fa;
  size_t n = 0;
  std::string w;
  bool w_none = false;
  std::string example = "auto";
  std::string d;
};

void add_construct_opts(CLI::App* sub, ConstructArgs& ca) {
  add_field_opts(sub, ca.fa, /*allow_rational=*/true);
  sub->add_option("--n", ca.n, "ambient dimension")->required();
  sub->add_option("--W", ca.w, "kernel scalars, comma-separated field elements");
  sub->add_flag("--W-none", ca.w_none, "trivial kernel (same as omitting --W)");
  sub->add_option("--example", ca.example, "family: auto|1|2|3 or a family name");
  sub->add_option("--d", ca.d, "direction vector in F^k, comma-separated");
}

std::optional<HomKind> kind_from_flag(const std::string& ex, size_t n) {
  if (ex == "auto") return std::nullopt;
  if (ex == "1") return HomKind::example1;
  if (ex == "2") return n == 3 ? HomKind::example2_n3q2 : HomKind::example2_odd;
  if (ex == "3") return HomKind::example3;
  return hom_kind_from(ex);  // full token names also accepted
}

RegularSubgroupDesc build_from(const ConstructArgs& ca) {
  const Field& f = resolve_field(ca.fa);
  if (ca.w_none && !ca.w.empty())
    throw std::invalid_argument("--W and --W-none are mutually exclusive");
  std::vector<FieldElem> w_scalars;
  if (!ca.w.empty()) {
    Vec parsed = Vec::parse(f, ca.w);
    for (size_t i = 0; i < parsed.size(); ++i) w_scalars.push_back(parsed[i]);
  }
  std::optional<Vec> d;
  if (!ca.d.empty()) d = Vec::parse(f, ca.d);
  return build_rw(f, ca.n, w_scalars, kind_from_flag(ca.example, ca.n), d);
}

int report_outcome(const VerifyReport& rep, std::ostream& out) {
  out << rep.to_string();
  return rep.all_ok() ? kOk : kViolation;
}

int cmd_construct(const ConstructArgs& ca, const std::string& out_path, uint64_t seed,
                  std::ostream& out) {
  RegularSubgroupDesc desc = build_from(ca);
  VerifyReport rep = full_suite(desc, seed);
  out << "REGAFF v1\n";
  out << desc.describe() << "\n";
  out << "|R ∩ Tr|: " << rep.translations.size() << "\n";

  if (!out_path.empty()) {
    GroupFile gf;
    gf.field = &desc.field();
    gf.n = desc.n();
    gf.comments.push_back(desc.describe());
    gf.generators = desc.generators();
    if (desc.field().is_finite() && rep.order != 0 && rep.order <= 4096)
      gf.elements = desc.elements(4096);
    write_group_file(out_path, gf);
    out << "wrote: " << out_path << "\n";
  }
  return report_outcome(rep, out);
}

int cmd_verify_file(const std::string& in_path, uint64_t seed, std::ostream& out) {
  GroupFile gf = read_group_file(in_path);
  std::vector<AffineElem> elems = gf.elements;
  if (elems.empty()) {
    if (gf.generators.empty())
      throw std::invalid_argument("group file lists neither generators nor elements");
    elems = close_group(gf.generators);
  }
  out << "REGAFF v1\n";
  out << "verify " << in_path << ": " << elems.size() << " elements over "
      << gf.field->header_line().substr(6) << "\n";
  VerifyReport rep = verify_set(elems, *gf.field, gf.n, seed);
  // Listed generators must belong to the listed group.
  for (const AffineElem& g : gf.generators)
    if (!gf.elements.empty() && std::find(elems.begin(), elems.end(), g) == elems.end()) {
      rep.failures.push_back("generator not among the listed elements");
      rep.closure = false;
      break;
    }
  return report_outcome(rep, out);
}

int cmd_search(size_t n, const FieldArgs& fa, const std::string& mode_name,
               uint64_t budget, unsigned threads, const std::string& checkpoint_path,
               const std::string& resume_path, std::ostream& out, std::ostream& err) {
  const Field& f = resolve_field(fa);
  SearchMode mode = search_mode_from(mode_name);
  SearchOptions opts;
  opts.node_budget = budget;
  opts.threads = threads;
  if (!resume_path.empty()) {
    std::ifstream in(resume_path);
    if (!in) throw std::invalid_argument("cannot read checkpoint `" + resume_path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    opts.resume = buf.str();
  }

  SearchResult res = search_regular(n, f, mode, opts);
  out << "REGAFF v1\n";
  out << "SEARCH n=" << n << " q=" << f.order() << " mode=" << search_mode_name(mode) << "\n";
  out << "regular: " << res.regular_count << "\n";
  out << "translation_free: " << res.translation_free_count << "\n";
  out << "nodes: " << res.nodes << "\n";
  out << "complete: " << (res.complete ? "yes" : "no") << "\n";

  if (!res.complete) {
    if (!checkpoint_path.empty()) {
      std::ofstream ck(checkpoint_path);
      if (!ck) throw std::invalid_argument("cannot write checkpoint `" + checkpoint_path + "`");
      ck << res.checkpoint;
      out << "checkpoint written: " << checkpoint_path << "\n";
    } else {
      err << "budget exhausted; rerun with --checkpoint to save progress\n";
    }
    return kBudget;
  }
  return kOk;
}

int cmd_report(size_t max_n, const std::string& fields_csv, std::ostream& out) {
  std::vector<const Field*> fields;
  std::istringstream ss(fields_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "Q" || tok == "q") {
      fields.push_back(&Field::rationals());
      continue;
    }
    size_t used = 0;
    long long q = std::stoll(tok, &used);
    if (used != tok.size() || q < 2)
      throw std::invalid_argument("bad field order `" + tok + "`");
    int64_t p = q;
    for (int64_t cand = 2; cand * cand <= q; ++cand)
      if (q % cand == 0) {
        p = cand;
        break;
      }
    int ell = 0;
    long long r = q;
    while (r % p == 0) {
      r /= p;
      ++ell;
    }
    if (r != 1) throw std::invalid_argument("`" + tok + "` is not a prime power");
    fields.push_back(&Field::finite(p, ell));
  }
  ExistenceTable t = existence_table(max_n, fields);
  out << render_text(t) << "\n" << render_rows(t);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact constructions and searches for regular affine subgroups"};
  app.require_subcommand(1);

  ConstructArgs ca;
  std::string construct_out;
  uint64_t construct_seed = 1;
  CLI::App* construct = app.add_subcommand(
      "construct", "build a regular subgroup with prescribed translation intersection");
  add_construct_opts(construct, ca);
  construct->add_option("--out", construct_out, "write the group file here");
  construct->add_option("--seed", construct_seed, "seed for sampled verification");

  std::string verify_in;
  ConstructArgs va;
  uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "verify a group file or a construction");
  verify->add_option("--in", verify_in, "group file to verify");
  add_construct_opts(verify, va);
  verify->get_option("--n")->required(false);
  verify->add_option("--seed", verify_seed, "seed for sampled sweeps");

  FieldArgs sa;
  size_t search_n = 0;
  std::string search_mode = "find_translation_free";
  uint64_t search_budget = SearchOptions{}.node_budget;
  unsigned search_threads = 1;
  std::string search_checkpoint, search_resume;
  CLI::App* search = app.add_subcommand("search", "exhaustive search for regular subgroups");
  add_field_opts(search, sa, /*allow_rational=*/false);
  search->add_option("--n", search_n, "ambient dimension")->required();
  search->add_option("--mode", search_mode, "enumerate_all | find_translation_free");
  search->add_option("--budget-nodes", search_budget, "node budget for this run");
  search->add_option("--checkpoint", search_checkpoint, "write a checkpoint here on budget stop");
  search->add_option("--resume", search_resume, "resume from this checkpoint file");
  search->add_option("--threads", search_threads, "worker threads over root branches");

  size_t report_max_n = 6;
  std::string report_fields = "2,3,4,5";
  CLI::App* report = app.add_subcommand("report", "existence table over a field range");
  report->add_option("--max-n", report_max_n, "largest dimension row");
  report->add_option("--fields", report_fields, "comma-separated field orders (Q allowed)");

  std::vector<const char*> argv;
  argv.push_back("regaff");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(ca, construct_out, construct_seed, out);
    if (verify->parsed()) {
      const bool desc_mode = va.fa.p != 0 || va.fa.rational;
      if (verify_in.empty() == !desc_mode)
        throw std::invalid_argument("pass exactly one of --in or construction flags");
      if (!verify_in.empty()) return cmd_verify_file(verify_in, verify_seed, out);
      if (va.n == 0) throw std::invalid_argument("--n is required");
      return report_outcome(full_suite(build_from(va), verify_seed), out);
    }
    if (search->parsed())
      return cmd_search(search_n, sa, search_mode, search_budget, search_threads,
                        search_checkpoint, search_resume, out, err);
    if (report->parsed()) return cmd_report(report_max_n, report_fields, out);
    throw std::logic_error("no subcommand dispatched");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace regaff
