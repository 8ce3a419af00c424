#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "regaff/linalg.hpp"

namespace regaff {

/// Quadratic form Q(v) = v U v^T with U upper-triangular.  The
/// upper-triangular coefficient representation works uniformly in every
/// characteristic (a symmetric Gram matrix cannot represent x*y in char 2).
class QuadraticForm {
 public:
  explicit QuadraticForm(Mat coeffs);  // rejects entries below the diagonal

  const Field& field() const { return u_.field(); }
  size_t m() const { return u_.rows(); }
  const Mat& coeffs() const { return u_; }

  FieldElem operator()(const Vec& v) const;
  /// Gram matrix J = U + U^T of the polar form B(u,v) = Q(u+v)-Q(u)-Q(v).
  Mat polar_gram() const;
  FieldElem polar(const Vec& u, const Vec& v) const;  // u J v^T
  /// det(J) != 0.
  bool nondegenerate() const;
  /// Q(vA) = Q(v) for all v; decided by the finite test
  /// A J A^T = J  and  Q(e_i A) = Q(e_i) for all i.
  bool is_isometry(const Mat& a) const;

  bool operator==(const QuadraticForm& o) const = default;

 private:
  Mat u_;
};

/// The built-in construction families.  Each pairs a quadratic form on F^m
/// with an injective additive homomorphism psi: (F^k,+) -> O(Q) <= GL_m(F).
/// These names are the stable interface tokens used by files and the CLI.
enum class HomKind {
  example1,       // char != 2, n >= 4:  m = n-1, k = 1
  example2_odd,   // char 2, n = 2t+1 >= 5:  m = 2t, k = 1
  example2_n3q2,  // F = F_2, n = 3:  m = 2, k = 1
  example3,       // char 2, n = 2t+2 >= 6:  m = 2t, k = 2
};

std::string_view hom_kind_name(HomKind kind);
HomKind hom_kind_from(std::string_view name);

/// An additive homomorphism phi: (F^k,+) -> GL_m(F): one of the built-in
/// closed forms, optionally precomposed with the projection onto a
/// complement of a prescribed kernel subspace W.
class AdditiveHom {
 public:
  const Field& field() const { return *field_; }
  HomKind kind() const { return kind_; }
  size_t k() const { return k_; }
  size_t m() const { return m_; }

  /// phi(a): evaluate the closed form (after projecting a onto the
  /// complement of W when a kernel is prescribed).
  Mat operator()(const Vec& a) const;

  bool has_kernel() const { return proj_.has_value(); }
  /// Reduced basis of the prescribed kernel W (empty when injective).
  std::vector<Vec> kernel_basis() const;
  bool in_kernel(const Vec& a) const;
  /// All |F0|^dim(W) kernel elements.
  std::vector<Vec> kernel_elements() const;

 private:
  friend struct BuiltinParts builtin(HomKind, const Field&, size_t);
  friend AdditiveHom with_kernel(const AdditiveHom&, const std::vector<Vec>&);
  AdditiveHom(const Field& f, HomKind kind, size_t k, size_t m)
      : field_(&f), kind_(kind), k_(k), m_(m) {}

  Mat closed_form(const Vec& a) const;

  const Field* field_;
  HomKind kind_;
  size_t k_, m_;
  std::optional<PrimeDecomposition> proj_;
};

/// A built-in family instantiated at (field, n): the form, the injective
/// hom, and the split n = m + k.
struct BuiltinParts {
  QuadraticForm q;
  AdditiveHom psi;
  size_t m, k;
};

/// Instantiate a family; throws std::invalid_argument with a diagnostic
/// naming the violated constraint (characteristic, parity, or size).
BuiltinParts builtin(HomKind kind, const Field& f, size_t n);

/// phi = psi after the projection killing W: kernel becomes exactly the
/// F0-span of `w_basis` (vectors in F^k, independent over the prime field).
/// psi must be injective.
AdditiveHom with_kernel(const AdditiveHom& psi, const std::vector<Vec>& w_basis);

/// phi(0) = I and phi(a+b) = phi(a)phi(b): exhaustive over finite fields,
/// 256 seeded sample pairs over the rationals.  A failing pair (if any) is
/// stored in `witness`.
bool check_additive_fn(const Field& f, size_t k,
                       const std::function<Mat(const Vec&)>& phi,
                       uint64_t seed = 1,
                       std::pair<Vec, Vec>* witness = nullptr);
bool check_additive(const AdditiveHom& phi, uint64_t seed = 1,
                    std::pair<Vec, Vec>* witness = nullptr);

/// Enumerate all points of F^k for a finite field (q^k values, index order).
std::vector<Vec> all_points(const Field& f, size_t k);
/// Seeded pseudo-random vector; small integers/rationals over Q.
Vec random_point(const Field& f, size_t k, uint64_t& state);

}  // namespace regaff
