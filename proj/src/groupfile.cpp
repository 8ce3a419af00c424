#include "regaff/groupfile.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace regaff {

namespace {

AffineElem parse_element(const Field& f, size_t n, std::string_view text,
                         size_t line_no) {
  std::optional<Mat> m;
  try {
    m = Mat::parse(f, text);
  } catch (const std::exception& e) {
    throw GroupFileError(line_no, std::string("bad matrix: ") + e.what());
  }
  if (m->rows() != n + 1 || m->cols() != n + 1)
    throw GroupFileError(line_no, "matrix is " + std::to_string(m->rows()) + "x" +
                                      std::to_string(m->cols()) + ", expected " +
                                      std::to_string(n + 1) + "x" +
                                      std::to_string(n + 1));
  try {
    return AffineElem::from_matrix(std::move(*m));
  } catch (const std::exception& e) {
    throw GroupFileError(line_no, std::string("not an affine element: ") + e.what());
  }
}

}  // namespace

void write_group_file(std::ostream& os, const GroupFile& gf) {
  if (!gf.field) throw std::invalid_argument("group file has no field");
  os << "REGAFF v1\n";
  os << gf.field->header_line() << "\n";
  os << "DIM " << gf.n << "\n";
  for (const std::string& c : gf.comments) os << "# " << c << "\n";
  for (const AffineElem& g : gf.generators) os << "GEN " << g.matrix().encode() << "\n";
  for (const AffineElem& g : gf.elements) os << g.matrix().encode() << "\n";
}

void write_group_file(const std::string& path, const GroupFile& gf) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_group_file(os, gf);
  if (!os) throw std::runtime_error("failed writing " + path);
}

GroupFile read_group_file(std::istream& is) {
  GroupFile gf;
  std::string line;
  size_t line_no = 0;

  auto next_meaningful = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_meaningful() || line != "REGAFF v1")
    throw GroupFileError(line_no == 0 ? 1 : line_no,
                         "expected leading \"REGAFF v1\" line");
  if (!next_meaningful())
    throw GroupFileError(line_no + 1, "expected FIELD line");
  try {
    gf.field = &Field::parse_header(line);
  } catch (const std::exception& e) {
    throw GroupFileError(line_no, std::string("bad FIELD line: ") + e.what());
  }
  if (!next_meaningful() || line.rfind("DIM ", 0) != 0)
    throw GroupFileError(line_no, "expected DIM line");
  try {
    size_t pos = 0;
    gf.n = std::stoul(line.substr(4), &pos);
    if (pos != line.size() - 4 || gf.n == 0) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw GroupFileError(line_no, "bad dimension in: " + line);
  }

  while (next_meaningful()) {
    if (line[0] == '#') {
      size_t start = line.find_first_not_of(" \t", 1);
      gf.comments.push_back(start == std::string::npos ? "" : line.substr(start));
    } else if (line.rfind("GEN ", 0) == 0) {
      gf.generators.push_back(parse_element(*gf.field, gf.n, line.substr(4), line_no));
    } else {
      gf.elements.push_back(parse_element(*gf.field, gf.n, line, line_no));
    }
  }
  return gf;
}

GroupFile read_group_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_group_file(is);
}

}  // namespace regaff
