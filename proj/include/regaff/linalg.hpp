#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regaff/field.hpp"

namespace regaff {

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense vector over one field.  Vectors are rows unless stated otherwise.
class Vec {
 public:
  Vec(const Field& f, size_t n);  // zero vector
  Vec(const Field& f, std::vector<FieldElem> entries);
  static Vec from_ints(const Field& f, std::initializer_list<int64_t> vals);

  const Field& field() const { return *field_; }
  size_t size() const { return v_.size(); }
  FieldElem& operator[](size_t i) { return v_[i]; }
  const FieldElem& operator[](size_t i) const { return v_[i]; }

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec operator-() const;
  Vec operator*(const FieldElem& s) const;
  FieldElem dot(const Vec& o) const;
  bool is_zero() const;

  Vec slice(size_t lo, size_t len) const;
  Vec concat(const Vec& o) const;

  bool operator==(const Vec& o) const = default;
  auto operator<=>(const Vec& o) const = default;

  /// Comma-separated entries, each in the field's element encoding.
  std::string encode() const;
  static Vec parse(const Field& f, std::string_view text);

 private:
  const Field* field_;
  std::vector<FieldElem> v_;
};

/// Dense matrix over one field, row-major.  The group-theoretic convention
/// throughout is row vectors acted on from the right: x |-> x*A.
class Mat {
 public:
  Mat(const Field& f, size_t rows, size_t cols);  // zero matrix
  static Mat identity(const Field& f, size_t n);
  /// Column vector u times row vector w: the rank-one matrix u_i * w_j.
  static Mat outer(const Vec& u, const Vec& w);

  const Field& field() const { return *field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldElem& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const FieldElem& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Vec row(size_t i) const;
  Vec col(size_t j) const;
  void set_row(size_t i, const Vec& v);
  Mat block(size_t r0, size_t c0, size_t h, size_t w) const;
  void set_block(size_t r0, size_t c0, const Mat& b);

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const FieldElem& s) const;
  Mat transpose() const;
  /// A * v^T as a vector (column action).
  Vec mul_col(const Vec& v) const;

  bool operator==(const Mat& o) const = default;
  auto operator<=>(const Mat& o) const = default;

  bool is_zero() const;
  bool is_identity() const;
  /// Square, ones on the diagonal, zeros strictly below it.
  bool is_upper_unitriangular() const;

  size_t rank() const;
  FieldElem det() const;
  Mat inverse() const;  // throws SingularMatrixError
  /// Basis of {x : A x^T = 0}.
  std::vector<Vec> nullspace() const;

  /// Rows ';', entries ','.
  std::string encode() const;
  static Mat parse(const Field& f, std::string_view text);

 private:
  const Field* field_;
  size_t rows_, cols_;
  std::vector<FieldElem> a_;
};

/// Row-vector action x*A.
Vec operator*(const Vec& x, const Mat& a);

/// Reduced row echelon form of a copy of `a`; returns the reduced matrix
/// and the pivot column indices (one per nonzero row).
std::pair<Mat, std::vector<size_t>> rref(const Mat& a);

/// Solve x*A = b for a row vector x; nullopt if inconsistent.
std::optional<Vec> solve_row(const Mat& a, const Vec& b);

/// A direct-sum decomposition F^k = W (+) U over the prime field F0,
/// where F is finite of order p^ell and W is the F0-span of the given
/// vectors.  U is canonical: the span of the standard prime-basis vectors
/// at the non-pivot coordinates of W's reduced basis.  Supplies the
/// projection onto U along W and enumeration of W.
class PrimeDecomposition {
 public:
  PrimeDecomposition(const Field& f, size_t k, const std::vector<Vec>& w_gens);

  const Field& field() const { return *field_; }
  size_t k() const { return k_; }
  size_t dim_w() const { return w_basis_.size(); }
  size_t dim_u() const { return u_basis_.size(); }
  const std::vector<Vec>& w_basis() const { return w_basis_; }
  const std::vector<Vec>& u_basis() const { return u_basis_; }

  bool in_w(const Vec& a) const;
  Vec project_u(const Vec& a) const;  // projection onto U along W
  Vec project_w(const Vec& a) const;
  /// All p^dim_w elements of W, in a deterministic order starting at 0.
  std::vector<Vec> w_elements() const;

 private:
  Vec flatten(const Vec& a) const;    // F^k -> F0^(k*ell)
  Vec unflatten(const Vec& c) const;  // F0^(k*ell) -> F^k

  const Field* field_;
  const Field* prime_;
  size_t k_;
  std::vector<Vec> w_basis_, u_basis_;  // vectors in F^k
  Mat basis_inv_;  // inverse of the stacked flattened (W then U) basis
};

}  // namespace regaff
