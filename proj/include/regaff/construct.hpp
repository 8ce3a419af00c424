#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regaff/affine.hpp"
#include "regaff/quadform.hpp"

namespace regaff {

/// A regular subgroup R of AGL_n(F) assembled from a non-degenerate
/// quadratic form Q on F^m, an additive homomorphism phi: (F^k,+) -> GL_m(F)
/// whose values are isometries of Q, and a nonzero direction d in F^k
/// (n = m + k).  Elements are indexed by their first row: for each
/// (v, a) in F^m x F^k there is exactly one element r(v, a) with
/// translation part (v | a).  The intersection with the translation
/// subgroup is { r(0, a) : phi(a) = I }, i.e. ker(phi) embedded at v = 0.
class RegularSubgroupDesc {
 public:
  /// Validates: matching fields, phi.m() == q.m(), d in F^k nonzero,
  /// q non-degenerate.  (That phi's values are isometries is a property
  /// of the chosen hom and is checked by the verification suite.)
  RegularSubgroupDesc(QuadraticForm q, AdditiveHom phi, Vec d);

  const Field& field() const { return q_.field(); }
  size_t n() const { return m_ + k_; }
  size_t m() const { return m_; }
  size_t k() const { return k_; }
  const QuadraticForm& q() const { return q_; }
  const AdditiveHom& phi() const { return phi_; }
  const Vec& d() const { return d_; }

  /// n(v) for v in F^m: translation part (v | Q(v)d), linear part
  /// [[I_m, (J v^T) x d], [0, I_k]] with J the polar Gram matrix.
  AffineElem n_element(const Vec& v) const;

  /// m(a) for a in F^k: translation part (0 | a), linear part
  /// [[phi(a), 0], [0, I_k]].
  AffineElem m_element(const Vec& a) const;

  /// The unique element with first row (1, v, a):
  /// r(v, a) = m(a - Q(v)d) n(v).
  AffineElem r_element(const Vec& v, const Vec& a) const;

  /// r_element at the split x = (v | a) of a full row x in F^n.
  AffineElem element_for_row(const Vec& x) const;

  /// |R| = |F|^n.  Throws for the rationals (infinite) and on overflow.
  uint64_t order() const;

  /// Generating set: n and m at prime-basis multiples of the standard
  /// basis vectors.  For the rationals this generates only an integral
  /// sublattice of the (infinite) group.
  std::vector<AffineElem> generators() const;

  /// All |F|^n elements (finite fields only); throws if above `limit`.
  std::vector<AffineElem> elements(size_t limit = size_t(1) << 20) const;

  /// One-line human summary (ambient group, split, family, dim W, d).
  std::string describe() const;

 private:
  QuadraticForm q_;
  AdditiveHom phi_;
  Vec d_;
  size_t m_, k_;
};

/// Assemble R_W for a kernel subspace W prescribed by prime-field scalars:
/// each scalar w becomes the kernel vector (w, 0, ...) in F^k.  The split
/// (m, k) and the hom family are chosen from the field and n —
/// characteristic 2 with n even uses k = 2, every other case k = 1 —
/// unless `kind` overrides the family.  The direction d defaults to the
/// first standard basis vector of F^k.
///
/// Admissible (field, n): F_2 with n = 3; characteristic != 2 (including
/// the rationals) with n >= 4; characteristic 2 with odd n >= 5 or even
/// n >= 6.  Anything else throws with the violated constraint.  Over the
/// rationals W must be empty.
RegularSubgroupDesc build_rw(const Field& f, size_t n,
                             const std::vector<FieldElem>& w_scalars = {},
                             std::optional<HomKind> kind = std::nullopt,
                             std::optional<Vec> d = std::nullopt);

/// Same, with the kernel given as vectors in F^k (independent over the
/// prime field).
RegularSubgroupDesc build_rw_subspace(const Field& f, size_t n,
                                      const std::vector<Vec>& w_basis,
                                      std::optional<HomKind> kind = std::nullopt,
                                      std::optional<Vec> d = std::nullopt);

/// Two affine 4x4 generators over F_2 whose closure is a regular
/// subgroup of AGL_3(2) of order 8 meeting the translations trivially —
/// the smallest case where that is possible.
std::pair<AffineElem, AffineElem> hegedus_agl32();

}  // namespace regaff
