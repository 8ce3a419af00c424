#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "regaff/affine.hpp"

namespace regaff {

/// Parse failure for a group file; carries the 1-based line number.
class GroupFileError : public std::runtime_error {
 public:
  GroupFileError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// On-disk description of a subgroup of AGL_n(F).  Layout:
///
///   REGAFF v1
///   FIELD <p> <ell> <c0,c1,...>      (or: FIELD Q)
///   DIM <n>
///   # free-text comment lines
///   GEN <matrix>                     (zero or more generators)
///   <matrix>                         (zero or more listed elements)
///
/// Matrices are full (n+1)x(n+1) affine matrices, rows joined by ';',
/// entries by ','.  A file may list generators, elements, or both.
struct GroupFile {
  const Field* field = nullptr;
  size_t n = 0;
  std::vector<std::string> comments;
  std::vector<AffineElem> generators;
  std::vector<AffineElem> elements;
};

void write_group_file(std::ostream& os, const GroupFile& gf);
void write_group_file(const std::string& path, const GroupFile& gf);

/// Throws GroupFileError (with line number) on malformed input, including
/// matrices that are not valid affine elements of the declared dimension.
GroupFile read_group_file(std::istream& is);
GroupFile read_group_file(const std::string& path);

}  // namespace regaff
