#include "regaff/quadform.hpp"

#include <stdexcept>

namespace regaff {
namespace {

// splitmix64: deterministic across platforms, one word of state.
uint64_t next_u64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void add_entry(Mat& m, size_t i, size_t j, const FieldElem& v) {
  m(i, j) = m(i, j) + v;
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(Mat coeffs) : u_(std::move(coeffs)) {
  if (u_.rows() != u_.cols())
    throw std::invalid_argument("quadratic form matrix must be square");
  for (size_t i = 0; i < u_.rows(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (!u_(i, j).is_zero())
        throw std::invalid_argument("coefficient matrix must be upper-triangular");
}

FieldElem QuadraticForm::operator()(const Vec& v) const {
  if (v.size() != m()) throw std::invalid_argument("vector length mismatch");
  return v.dot(u_.mul_col(v));  // v U v^T
}

Mat QuadraticForm::polar_gram() const { return u_ + u_.transpose(); }

FieldElem QuadraticForm::polar(const Vec& u, const Vec& v) const {
  if (u.size() != m() || v.size() != m())
    throw std::invalid_argument("vector length mismatch");
  return u.dot(polar_gram().mul_col(v));
}

bool QuadraticForm::nondegenerate() const {
  return !polar_gram().det().is_zero();
}

bool QuadraticForm::is_isometry(const Mat& a) const {
  if (a.rows() != m() || a.cols() != m())
    throw std::invalid_argument("matrix size mismatch");
  // A J A^T = J pins the polar form; Q(e_i A) = Q(e_i) pins the diagonal
  // values.  Together these give Q(vA) = Q(v) for every v, since Q(sum
  // v_i e_i) expands into those two ingredients.
  Mat j = polar_gram();
  if (!(a * j * a.transpose() == j)) return false;
  for (size_t i = 0; i < m(); ++i) {
    Vec ei(field(), m());
    ei[i] = field().one();
    if (!((*this)(a.row(i)) == (*this)(ei))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Built-in families

std::string_view hom_kind_name(HomKind kind) {
  switch (kind) {
    case HomKind::example1: return "example1";
    case HomKind::example2_odd: return "example2_odd";
    case HomKind::example2_n3q2: return "example2_n3q2";
    case HomKind::example3: return "example3";
  }
  throw std::logic_error("bad HomKind");
}

HomKind hom_kind_from(std::string_view name) {
  for (HomKind k : {HomKind::example1, HomKind::example2_odd,
                    HomKind::example2_n3q2, HomKind::example3})
    if (hom_kind_name(k) == name) return k;
  throw std::invalid_argument("unknown family name: '" + std::string(name) + "'");
}

BuiltinParts builtin(HomKind kind, const Field& f, size_t n) {
  const bool char2 = f.characteristic() == 2;
  switch (kind) {
    case HomKind::example1: {
      if (char2) throw std::invalid_argument("example1 requires characteristic != 2");
      if (n < 4) throw std::invalid_argument("example1 requires n >= 4");
      size_t m = n - 1;
      // Q = x_0 x_2 - x_1^2 + (1/2) sum_{i>=3} x_i^2
      Mat u(f, m, m);
      u(0, 2) = f.one();
      u(1, 1) = -f.one();
      FieldElem half = f.from_int(2).inverse();
      for (size_t i = 3; i < m; ++i) u(i, i) = half;
      return {QuadraticForm(std::move(u)), AdditiveHom(f, kind, 1, m), m, 1};
    }
    case HomKind::example2_odd: {
      if (!char2) throw std::invalid_argument("example2_odd requires characteristic 2");
      if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("example2_odd requires odd n >= 5");
      size_t t = (n - 1) / 2, m = 2 * t;
      Mat u(f, m, m);  // Q = sum_{i<t} x_i x_{t+i}
      for (size_t i = 0; i < t; ++i) u(i, t + i) = f.one();
      return {QuadraticForm(std::move(u)), AdditiveHom(f, kind, 1, m), m, 1};
    }
    case HomKind::example2_n3q2: {
      if (!(f.is_finite() && f.p() == 2 && f.ell() == 1))
        throw std::invalid_argument("example2_n3q2 is defined over F_2 only");
      if (n != 3) throw std::invalid_argument("example2_n3q2 requires n = 3");
      Mat u(f, 2, 2);  // Q = x_0 x_1
      u(0, 1) = f.one();
      return {QuadraticForm(std::move(u)), AdditiveHom(f, kind, 1, 2), 2, 1};
    }
    case HomKind::example3: {
      if (!char2) throw std::invalid_argument("example3 requires characteristic 2");
      if (n < 6 || n % 2 == 1)
        throw std::invalid_argument("example3 requires even n >= 6");
      size_t t = (n - 2) / 2, m = 2 * t;
      Mat u(f, m, m);
      for (size_t i = 0; i < t; ++i) u(i, t + i) = f.one();
      return {QuadraticForm(std::move(u)), AdditiveHom(f, kind, 2, m), m, 2};
    }
  }
  throw std::logic_error("bad HomKind");
}

Mat AdditiveHom::closed_form(const Vec& a) const {
  Mat phi = Mat::identity(*field_, m_);
  switch (kind_) {
    case HomKind::example1: {
      // I + 2a E_{1,0} + a^2 E_{2,0} + a E_{2,1}  (0-based positions)
      const FieldElem& s = a[0];
      add_entry(phi, 1, 0, s + s);
      add_entry(phi, 2, 0, s * s);
      add_entry(phi, 2, 1, s);
      return phi;
    }
    case HomKind::example2_odd: {
      size_t t = m_ / 2;
      add_entry(phi, 0, t - 1, a[0]);
      add_entry(phi, m_ - 1, t, a[0]);
      return phi;
    }
    case HomKind::example2_n3q2: {
      if (a[0].is_zero()) return phi;
      Mat swap(*field_, 2, 2);  // the transposition E_{0,1} + E_{1,0}
      swap(0, 1) = field_->one();
      swap(1, 0) = field_->one();
      return swap;
    }
    case HomKind::example3: {
      size_t t = m_ / 2;
      const FieldElem& s = a[0];
      const FieldElem& b = a[1];
      add_entry(phi, 0, t - 1, s);
      add_entry(phi, m_ - 1, t, s);
      add_entry(phi, 0, m_ - 1, b);
      add_entry(phi, t - 1, t, b);
      add_entry(phi, 0, t, s * b);
      return phi;
    }
  }
  throw std::logic_error("bad HomKind");
}

Mat AdditiveHom::operator()(const Vec& a) const {
  if (a.size() != k_ || &a.field() != field_)
    throw std::invalid_argument("argument has the wrong shape");
  return closed_form(proj_ ? proj_->project_u(a) : a);
}

std::vector<Vec> AdditiveHom::kernel_basis() const {
  return proj_ ? proj_->w_basis() : std::vector<Vec>{};
}

bool AdditiveHom::in_kernel(const Vec& a) const {
  return proj_ ? proj_->in_w(a) : a.is_zero();
}

std::vector<Vec> AdditiveHom::kernel_elements() const {
  return proj_ ? proj_->w_elements() : std::vector<Vec>{Vec(*field_, k_)};
}

AdditiveHom with_kernel(const AdditiveHom& psi, const std::vector<Vec>& w_basis) {
  if (psi.has_kernel())
    throw std::invalid_argument("homomorphism already has a prescribed kernel");
  AdditiveHom phi = psi;
  phi.proj_.emplace(psi.field(), psi.k(), w_basis);
  if (phi.proj_->dim_w() != w_basis.size())
    throw std::invalid_argument("kernel basis is dependent over the prime field");
  return phi;
}

// ---------------------------------------------------------------------------
// Additivity checking

std::vector<Vec> all_points(const Field& f, size_t k) {
  uint64_t total = 1;
  for (size_t i = 0; i < k; ++i) {
    if (total > (uint64_t(1) << 40) / f.order())
      throw std::invalid_argument("point space too large to enumerate");
    total *= f.order();
  }
  std::vector<Vec> pts;
  pts.reserve(total);
  for (uint64_t idx = 0; idx < total; ++idx) {
    Vec v(f, k);
    uint64_t rest = idx;
    for (size_t i = 0; i < k; ++i) {
      v[i] = f.element(rest % f.order());
      rest /= f.order();
    }
    pts.push_back(std::move(v));
  }
  return pts;
}

Vec random_point(const Field& f, size_t k, uint64_t& state) {
  Vec v(f, k);
  for (size_t i = 0; i < k; ++i) {
    if (f.is_finite()) {
      v[i] = f.element(next_u64(state) % f.order());
    } else {
      int64_t num = int64_t(next_u64(state) % 41) - 20;
      int64_t den = int64_t(next_u64(state) % 20) + 1;
      v[i] = f.from_rational(num, den);
    }
  }
  return v;
}

bool check_additive_fn(const Field& f, size_t k,
                       const std::function<Mat(const Vec&)>& phi,
                       uint64_t seed, std::pair<Vec, Vec>* witness) {
  Vec zero(f, k);
  auto fail = [&](const Vec& a, const Vec& b) {
    if (witness) *witness = {a, b};
    return false;
  };
  if (!phi(zero).is_identity()) return fail(zero, zero);

  if (f.is_finite()) {
    std::vector<Vec> pts = all_points(f, k);
    std::vector<Mat> vals;
    vals.reserve(pts.size());
    for (const Vec& p : pts) vals.push_back(phi(p));
    // Point indexing matches all_points order, so phi(a+b) can be looked up.
    auto index_of = [&](const Vec& v) {
      uint64_t idx = 0;
      for (size_t i = k; i-- > 0;) idx = idx * f.order() + f.index_of(v[i]);
      return idx;
    };
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = 0; j < pts.size(); ++j)
        if (!(vals[index_of(pts[i] + pts[j])] == vals[i] * vals[j]))
          return fail(pts[i], pts[j]);
    return true;
  }

  uint64_t state = seed;
  for (int trial = 0; trial < 256; ++trial) {
    Vec a = random_point(f, k, state), b = random_point(f, k, state);
    if (!(phi(a + b) == phi(a) * phi(b))) return fail(a, b);
  }
  return true;
}

bool check_additive(const AdditiveHom& phi, uint64_t seed,
                    std::pair<Vec, Vec>* witness) {
  return check_additive_fn(phi.field(), phi.k(),
                           [&](const Vec& a) { return phi(a); }, seed, witness);
}

}  // namespace regaff
