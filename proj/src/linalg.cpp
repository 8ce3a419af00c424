#include "regaff/linalg.hpp"

#include <algorithm>

namespace regaff {
namespace {

void require_same_field(const Field& a, const Field& b) {
  if (&a != &b) throw std::invalid_argument("operands belong to different fields");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    size_t next = text.find(sep, pos);
    out.push_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vec

Vec::Vec(const Field& f, size_t n) : field_(&f), v_(n, f.zero()) {}

Vec::Vec(const Field& f, std::vector<FieldElem> entries)
    : field_(&f), v_(std::move(entries)) {
  for (const FieldElem& e : v_) require_same_field(e.field(), f);
}

Vec Vec::from_ints(const Field& f, std::initializer_list<int64_t> vals) {
  Vec out(f, vals.size());
  size_t i = 0;
  for (int64_t v : vals) out[i++] = f.from_int(v);
  return out;
}

Vec Vec::operator+(const Vec& o) const {
  require_same_field(*field_, *o.field_);
  if (size() != o.size()) throw std::invalid_argument("vector size mismatch");
  Vec r = *this;
  for (size_t i = 0; i < size(); ++i) r.v_[i] = v_[i] + o.v_[i];
  return r;
}

Vec Vec::operator-(const Vec& o) const { return *this + (-o); }

Vec Vec::operator-() const {
  Vec r = *this;
  for (FieldElem& e : r.v_) e = -e;
  return r;
}

Vec Vec::operator*(const FieldElem& s) const {
  require_same_field(*field_, s.field());
  Vec r = *this;
  for (FieldElem& e : r.v_) e = e * s;
  return r;
}

FieldElem Vec::dot(const Vec& o) const {
  require_same_field(*field_, *o.field_);
  if (size() != o.size()) throw std::invalid_argument("vector size mismatch");
  FieldElem acc = field_->zero();
  for (size_t i = 0; i < size(); ++i) acc = acc + v_[i] * o.v_[i];
  return acc;
}

bool Vec::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const FieldElem& e) { return e.is_zero(); });
}

Vec Vec::slice(size_t lo, size_t len) const {
  if (lo + len > size()) throw std::out_of_range("vector slice out of range");
  Vec r(*field_, len);
  for (size_t i = 0; i < len; ++i) r[i] = v_[lo + i];
  return r;
}

Vec Vec::concat(const Vec& o) const {
  require_same_field(*field_, *o.field_);
  Vec r(*field_, size() + o.size());
  for (size_t i = 0; i < size(); ++i) r[i] = v_[i];
  for (size_t i = 0; i < o.size(); ++i) r[size() + i] = o.v_[i];
  return r;
}

std::string Vec::encode() const {
  std::string out;
  for (size_t i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += v_[i].str();
  }
  return out;
}

Vec Vec::parse(const Field& f, std::string_view text) {
  std::vector<FieldElem> entries;
  for (std::string_view piece : split(text, ','))
    entries.push_back(f.parse(piece));
  return Vec(f, std::move(entries));
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(const Field& f, size_t rows, size_t cols)
    : field_(&f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
}

Mat Mat::identity(const Field& f, size_t n) {
  Mat m(f, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Mat Mat::outer(const Vec& u, const Vec& w) {
  require_same_field(u.field(), w.field());
  Mat m(u.field(), u.size(), w.size());
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < w.size(); ++j) m(i, j) = u[i] * w[j];
  return m;
}

Vec Mat::row(size_t i) const {
  Vec r(*field_, cols_);
  for (size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

Vec Mat::col(size_t j) const {
  Vec c(*field_, rows_);
  for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Mat::set_row(size_t i, const Vec& v) {
  require_same_field(*field_, v.field());
  if (v.size() != cols_) throw std::invalid_argument("row size mismatch");
  for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

Mat Mat::block(size_t r0, size_t c0, size_t h, size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_) throw std::out_of_range("block out of range");
  Mat b(*field_, h, w);
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < w; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(size_t r0, size_t c0, const Mat& b) {
  require_same_field(*field_, b.field());
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw std::out_of_range("block out of range");
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::operator+(const Mat& o) const {
  require_same_field(*field_, *o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_field(*field_, *o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  require_same_field(*field_, *o.field_);
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  Mat r(*field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const FieldElem& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j)
        r(i, j) = r(i, j) + aik * o(k, j);
    }
  return r;
}

Mat Mat::operator*(const FieldElem& s) const {
  Mat r = *this;
  for (FieldElem& e : r.a_) e = e * s;
  return r;
}

Mat Mat::transpose() const {
  Mat t(*field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Mat::mul_col(const Vec& v) const {
  require_same_field(*field_, v.field());
  if (v.size() != cols_) throw std::invalid_argument("vector size mismatch");
  Vec r(*field_, rows_);
  for (size_t i = 0; i < rows_; ++i) r[i] = row(i).dot(v);
  return r;
}

Vec operator*(const Vec& x, const Mat& a) {
  if (x.size() != a.rows()) throw std::invalid_argument("vector size mismatch");
  Vec r(a.field(), a.cols());
  for (size_t j = 0; j < a.cols(); ++j) {
    FieldElem acc = a.field().zero();
    for (size_t i = 0; i < x.size(); ++i) acc = acc + x[i] * a(i, j);
    r[j] = acc;
  }
  return r;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const FieldElem& e) { return e.is_zero(); });
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Mat::is_upper_unitriangular() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i) {
    if (!(*this)(i, i).is_one()) return false;
    for (size_t j = 0; j < i; ++j)
      if (!(*this)(i, j).is_zero()) return false;
  }
  return true;
}

std::pair<Mat, std::vector<size_t>> rref(const Mat& a) {
  Mat m = a;
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pivot, j));
    FieldElem inv = m(r, c).inverse();
    for (size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      FieldElem f = m(i, c);
      for (size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

size_t Mat::rank() const { return rref(*this).second.size(); }

FieldElem Mat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  Mat m = *this;
  bool negate = false;
  FieldElem scale = field_->one();
  for (size_t c = 0; c < cols_; ++c) {
    size_t pivot = c;
    while (pivot < rows_ && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows_) return field_->zero();
    if (pivot != c) {
      for (size_t j = 0; j < cols_; ++j) std::swap(m(c, j), m(pivot, j));
      negate = !negate;
    }
    scale = scale * m(c, c);
    FieldElem inv = m(c, c).inverse();
    for (size_t i = c + 1; i < rows_; ++i) {
      if (m(i, c).is_zero()) continue;
      FieldElem f = m(i, c) * inv;
      for (size_t j = c; j < cols_; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return negate ? -scale : scale;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  Mat aug(*field_, rows_, 2 * cols_);
  aug.set_block(0, 0, *this);
  aug.set_block(0, cols_, identity(*field_, rows_));
  auto [red, pivots] = rref(aug);
  if (pivots.size() < rows_ || pivots[rows_ - 1] >= cols_)
    throw SingularMatrixError("matrix is singular");
  return red.block(0, cols_, rows_, cols_);
}

std::vector<Vec> Mat::nullspace() const {
  // Right nullspace {x : A x^T = 0}: row-reduce, then back-fill one basis
  // vector per free column.
  auto [red, pivots] = rref(*this);
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vec x(*field_, cols_);
    x[free] = field_->one();
    for (size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = -red(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Vec> solve_row(const Mat& a, const Vec& b) {
  // x*A = b  <=>  A^T x^T = b^T: reduce the augmented transpose.
  if (b.size() != a.cols()) throw std::invalid_argument("vector size mismatch");
  const Field& f = a.field();
  Mat aug(f, a.cols(), a.rows() + 1);
  aug.set_block(0, 0, a.transpose());
  for (size_t i = 0; i < a.cols(); ++i) aug(i, a.rows()) = b[i];
  auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == a.rows()) return std::nullopt;
  Vec x(f, a.rows());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = red(r, a.rows());
  return x;
}

std::string Mat::encode() const {
  std::string out;
  for (size_t i = 0; i < rows_; ++i) {
    if (i) out += ';';
    out += row(i).encode();
  }
  return out;
}

Mat Mat::parse(const Field& f, std::string_view text) {
  std::vector<Vec> parsed;
  for (std::string_view line : split(text, ';'))
    parsed.push_back(Vec::parse(f, line));
  for (const Vec& v : parsed)
    if (v.size() != parsed[0].size())
      throw std::invalid_argument("ragged matrix literal");
  Mat m(f, parsed.size(), parsed[0].size());
  for (size_t i = 0; i < parsed.size(); ++i) m.set_row(i, parsed[i]);
  return m;
}

// ---------------------------------------------------------------------------
// PrimeDecomposition

PrimeDecomposition::PrimeDecomposition(const Field& f, size_t k,
                                       const std::vector<Vec>& w_gens)
    : field_(&f),
      prime_(&Field::finite(f.is_finite() ? f.p() : 2, 1)),
      k_(k),
      basis_inv_(*prime_, 1, 1) {
  if (!f.is_finite())
    throw std::invalid_argument("prime decomposition requires a finite field");
  if (k == 0) throw std::invalid_argument("empty coordinate space");
  const size_t ell = size_t(f.ell());
  const size_t dim = k * ell;

  // Reduced basis of W from the flattened generators.
  Mat gens(*prime_, std::max<size_t>(w_gens.size(), 1), dim);
  for (size_t i = 0; i < w_gens.size(); ++i) {
    if (w_gens[i].size() != k || &w_gens[i].field() != &f)
      throw std::invalid_argument("subspace generator has the wrong shape");
    gens.set_row(i, flatten(w_gens[i]));
  }
  auto [red, pivots] = rref(gens);

  // Complement rule: starting from W's reduced basis, greedily append the
  // standard coordinate vectors (in fixed order) that stay independent;
  // U is the span of the appended ones.  Deterministic by construction.
  Mat stacked(*prime_, dim, dim);
  for (size_t r = 0; r < pivots.size(); ++r) {
    w_basis_.push_back(unflatten(red.row(r)));
    stacked.set_row(r, red.row(r));
  }
  size_t at = pivots.size();
  for (size_t c = 0; c < dim && at < dim; ++c) {
    Vec e(*prime_, dim);
    e[c] = prime_->one();
    stacked.set_row(at, e);
    if (stacked.block(0, 0, at + 1, dim).rank() == at + 1) {
      u_basis_.push_back(unflatten(e));
      ++at;
    } else {
      stacked.set_row(at, Vec(*prime_, dim));  // reject: dependent
    }
  }
  basis_inv_ = stacked.inverse();  // invertible: complement by construction
}

Vec PrimeDecomposition::flatten(const Vec& a) const {
  const size_t ell = size_t(field_->ell());
  Vec c(*prime_, k_ * ell);
  for (size_t i = 0; i < k_; ++i) {
    auto coords = field_->prime_coords(a[i]);
    for (size_t j = 0; j < ell; ++j) c[i * ell + j] = prime_->from_int(coords[j]);
  }
  return c;
}

Vec PrimeDecomposition::unflatten(const Vec& c) const {
  const size_t ell = size_t(field_->ell());
  Vec a(*field_, k_);
  for (size_t i = 0; i < k_; ++i) {
    std::vector<int32_t> coords(ell);
    for (size_t j = 0; j < ell; ++j)
      coords[j] = int32_t(prime_->index_of(c[i * ell + j]));
    a[i] = field_->from_coords(coords);
  }
  return a;
}

Vec PrimeDecomposition::project_u(const Vec& a) const {
  if (a.size() != k_ || &a.field() != field_)
    throw std::invalid_argument("vector has the wrong shape");
  // Coefficients in the stacked (W then U) basis; keep the U part.
  Vec y = flatten(a) * basis_inv_;
  Vec u(*field_, k_);
  for (size_t i = 0; i < u_basis_.size(); ++i)
    u = u + u_basis_[i] * field_->from_int(int64_t(prime_->index_of(y[dim_w() + i])));
  return u;
}

Vec PrimeDecomposition::project_w(const Vec& a) const { return a - project_u(a); }

bool PrimeDecomposition::in_w(const Vec& a) const { return project_u(a).is_zero(); }

std::vector<Vec> PrimeDecomposition::w_elements() const {
  std::vector<Vec> out{Vec(*field_, k_)};
  for (const Vec& b : w_basis_) {
    std::vector<Vec> next;
    for (int64_t c = 0; c < field_->p(); ++c)
      for (const Vec& prev : out) next.push_back(prev + b * field_->from_int(c));
    out = std::move(next);
  }
  return out;
}

}  // namespace regaff
