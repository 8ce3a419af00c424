#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "regaff/linalg.hpp"

namespace regaff {

/// One element of AGL_n(F) in block form: an (n+1)x(n+1) matrix
///
///     ( 1  v )
///     ( 0  A )      v in F^n, A in GL_n(F),
///
/// acting on row vectors by x |-> v + x*A (the point x is carried as the
/// affine row (1, x)).  Values are immutable.
class AffineElem {
 public:
  /// Assemble from parts; throws SingularMatrixError if A is singular.
  static AffineElem make(const Vec& v, const Mat& a);
  /// Validate a full (n+1)x(n+1) matrix: first column (1,0,...,0)^T and
  /// invertible lower-right block.
  static AffineElem from_matrix(Mat full);
  static AffineElem identity(const Field& f, size_t n);
  static AffineElem translation(const Vec& v);

  const Field& field() const { return mat_.field(); }
  size_t n() const { return mat_.rows() - 1; }
  const Mat& matrix() const { return mat_; }

  /// The translation component v (first row without the leading 1).
  Vec translation_part() const;
  /// The linear component A — the projection whose kernel is the
  /// translation group.
  Mat linear_part() const;

  bool is_identity() const { return mat_.is_identity(); }
  bool is_translation() const;
  /// (g - I)^(n+1) = 0.
  bool is_unipotent() const;

  AffineElem operator*(const AffineElem& o) const;
  AffineElem inverse() const;
  Vec apply(const Vec& point) const;

  bool operator==(const AffineElem& o) const = default;
  auto operator<=>(const AffineElem& o) const = default;

 private:
  struct trusted {};
  AffineElem(Mat m, trusted) : mat_(std::move(m)) {}
  friend class RegularSubgroupDesc;

  Mat mat_;
};

/// h^-1 g h.
AffineElem conjugate(const AffineElem& g, const AffineElem& h);

/// Breadth-first closure of the generated subgroup.  Throws
/// std::runtime_error once the closure exceeds `limit` elements.
std::vector<AffineElem> close_group(const std::vector<AffineElem>& gens,
                                    size_t limit = 1 << 20);

/// Check closure of an explicit element set; on failure returns the index
/// pair whose product escapes the set.
std::optional<std::pair<size_t, size_t>> closure_witness(
    const std::vector<AffineElem>& elems);

/// Block-diagonal combination: vector parts concatenated, linear parts
/// stacked.  Preserves subgroup-ness, regularity, and the translation
/// subgroup factors.
std::vector<AffineElem> direct_product(const std::vector<AffineElem>& s1,
                                       const std::vector<AffineElem>& s2);

}  // namespace regaff
