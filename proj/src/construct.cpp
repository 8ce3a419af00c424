#include "regaff/construct.hpp"

#include <sstream>
#include <stdexcept>

namespace regaff {

RegularSubgroupDesc::RegularSubgroupDesc(QuadraticForm q, AdditiveHom phi, Vec d)
    : q_(std::move(q)), phi_(std::move(phi)), d_(std::move(d)) {
  if (&phi_.field() != &q_.field() || &d_.field() != &q_.field())
    throw std::invalid_argument("construction parts must share one field");
  m_ = q_.m();
  k_ = phi_.k();
  if (phi_.m() != m_)
    throw std::invalid_argument("phi must take values in GL_m for the form's m");
  if (d_.size() != k_)
    throw std::invalid_argument("d must lie in F^k");
  if (d_.is_zero())
    throw std::invalid_argument("d must be nonzero");
  if (!q_.nondegenerate())
    throw std::invalid_argument("the form must be non-degenerate");
}

AffineElem RegularSubgroupDesc::n_element(const Vec& v) const {
  if (v.size() != m_) throw std::invalid_argument("n_element: v must lie in F^m");
  Vec t = v.concat(d_ * q_(v));
  Mat lin = Mat::identity(field(), n());
  lin.set_block(0, m_, Mat::outer(q_.polar_gram().mul_col(v), d_));
  return AffineElem::make(t, lin);
}

AffineElem RegularSubgroupDesc::m_element(const Vec& a) const {
  if (a.size() != k_) throw std::invalid_argument("m_element: a must lie in F^k");
  Vec t = Vec(field(), m_).concat(a);
  Mat lin = Mat::identity(field(), n());
  lin.set_block(0, 0, phi_(a));
  return AffineElem::make(t, lin);
}

AffineElem RegularSubgroupDesc::r_element(const Vec& v, const Vec& a) const {
  if (a.size() != k_) throw std::invalid_argument("r_element: a must lie in F^k");
  return m_element(a - d_ * q_(v)) * n_element(v);
}

AffineElem RegularSubgroupDesc::element_for_row(const Vec& x) const {
  if (x.size() != n()) throw std::invalid_argument("element_for_row: x must lie in F^n");
  return r_element(x.slice(0, m_), x.slice(m_, k_));
}

uint64_t RegularSubgroupDesc::order() const {
  if (!field().is_finite())
    throw std::domain_error("the rational construction is infinite");
  uint64_t q = field().order(), acc = 1;
  for (size_t i = 0; i < n(); ++i) {
    if (acc > UINT64_MAX / q) throw std::overflow_error("group order exceeds 64 bits");
    acc *= q;
  }
  return acc;
}

std::vector<AffineElem> RegularSubgroupDesc::generators() const {
  const Field& f = field();
  size_t ell = f.is_finite() ? f.ell() : 1;
  std::vector<FieldElem> basis;
  for (size_t j = 0; j < ell; ++j) {
    std::vector<int32_t> coords(ell, 0);
    coords[j] = 1;
    basis.push_back(f.is_finite() ? f.from_coords(coords) : f.one());
  }
  std::vector<AffineElem> gens;
  for (size_t i = 0; i < m_; ++i)
    for (const FieldElem& c : basis) {
      Vec v(f, m_);
      v[i] = c;
      gens.push_back(n_element(v));
    }
  for (size_t i = 0; i < k_; ++i)
    for (const FieldElem& c : basis) {
      Vec a(f, k_);
      a[i] = c;
      gens.push_back(m_element(a));
    }
  return gens;
}

std::vector<AffineElem> RegularSubgroupDesc::elements(size_t limit) const {
  uint64_t total = order();  // throws for the rationals
  if (total > limit)
    throw std::runtime_error("element enumeration exceeds the limit of " +
                             std::to_string(limit));
  std::vector<AffineElem> out;
  out.reserve(total);
  for (const Vec& v : all_points(field(), m_))
    for (const Vec& a : all_points(field(), k_)) out.push_back(r_element(v, a));
  return out;
}

std::string RegularSubgroupDesc::describe() const {
  std::ostringstream os;
  const Field& f = field();
  os << "regular subgroup of AGL_" << n() << "(";
  if (f.is_finite())
    os << "GF(" << f.order() << ")";
  else
    os << "Q";
  os << "), m=" << m_ << " k=" << k_ << ", family " << hom_kind_name(phi_.kind());
  size_t dim_w = phi_.kernel_basis().size();
  os << ", dim W = " << dim_w << " (translation intersection order ";
  if (f.is_finite()) {
    uint64_t sz = 1;
    for (size_t i = 0; i < dim_w; ++i) sz *= f.p();
    os << sz;
  } else {
    os << 1;
  }
  os << "), d = " << d_.encode();
  return os.str();
}

namespace {

HomKind pick_kind(const Field& f, size_t n) {
  bool char2 = f.is_finite() && f.p() == 2;
  if (!char2) {
    if (n < 4)
      throw std::invalid_argument(
          "characteristic != 2 requires dimension n >= 4");
    return HomKind::example1;
  }
  if (n % 2 == 1) {
    if (n == 3) {
      if (f.order() != 2)
        throw std::invalid_argument("dimension 3 requires the field F_2");
      return HomKind::example2_n3q2;
    }
    if (n < 5)
      throw std::invalid_argument("no construction below dimension 3");
    return HomKind::example2_odd;
  }
  if (n < 6)
    throw std::invalid_argument(
        "characteristic 2 requires odd n >= 5 or even n >= 6");
  return HomKind::example3;
}

}  // namespace

RegularSubgroupDesc build_rw_subspace(const Field& f, size_t n,
                                      const std::vector<Vec>& w_basis,
                                      std::optional<HomKind> kind,
                                      std::optional<Vec> d) {
  HomKind chosen = kind ? *kind : pick_kind(f, n);
  BuiltinParts parts = builtin(chosen, f, n);
  if (!w_basis.empty() && !f.is_finite())
    throw std::invalid_argument(
        "over the rationals only the trivial kernel W = 0 is supported");
  AdditiveHom phi =
      w_basis.empty() ? parts.psi : with_kernel(parts.psi, w_basis);
  Vec dir = d.value_or([&] {
    Vec e(f, parts.k);
    e[0] = f.one();
    return e;
  }());
  return RegularSubgroupDesc(std::move(parts.q), std::move(phi), std::move(dir));
}

RegularSubgroupDesc build_rw(const Field& f, size_t n,
                             const std::vector<FieldElem>& w_scalars,
                             std::optional<HomKind> kind,
                             std::optional<Vec> d) {
  HomKind chosen = kind ? *kind : pick_kind(f, n);
  bool char2 = f.is_finite() && f.p() == 2;
  size_t k = (char2 && n % 2 == 0) ? 2 : 1;
  std::vector<Vec> w_basis;
  for (const FieldElem& w : w_scalars) {
    Vec vec(f, k);
    vec[0] = w;  // scalar kernels sit in the first coordinate when k = 2
    w_basis.push_back(std::move(vec));
  }
  return build_rw_subspace(f, n, w_basis, chosen, std::move(d));
}

std::pair<AffineElem, AffineElem> hegedus_agl32() {
  const Field& f = Field::finite(2);
  Mat g1 = Mat::identity(f, 4), g2 = Mat::identity(f, 4);
  g1(0, 1) = f.one();
  g1(1, 2) = f.one();
  g1(2, 3) = f.one();
  g2(0, 3) = f.one();
  g2(1, 2) = f.one();
  g2(1, 3) = f.one();
  return {AffineElem::from_matrix(std::move(g1)),
          AffineElem::from_matrix(std::move(g2))};
}

}  // namespace regaff
