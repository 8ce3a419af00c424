#include "regaff/affine.hpp"

#include <queue>
#include <set>
#include <stdexcept>

namespace regaff {

AffineElem AffineElem::make(const Vec& v, const Mat& a) {
  if (a.rows() != a.cols() || a.rows() != v.size())
    throw std::invalid_argument("affine parts have mismatched sizes");
  if (a.det().is_zero()) throw SingularMatrixError("linear part is singular");
  const Field& f = v.field();
  size_t n = v.size();
  Mat m = Mat::identity(f, n + 1);
  for (size_t j = 0; j < n; ++j) m(0, j + 1) = v[j];
  m.set_block(1, 1, a);
  return AffineElem(std::move(m), trusted{});
}

AffineElem AffineElem::from_matrix(Mat full) {
  if (full.rows() != full.cols() || full.rows() < 2)
    throw std::invalid_argument("affine matrix must be square of size >= 2");
  if (!full(0, 0).is_one())
    throw std::invalid_argument("affine matrix must have 1 in the corner");
  for (size_t i = 1; i < full.rows(); ++i)
    if (!full(i, 0).is_zero())
      throw std::invalid_argument("affine matrix must have zero first column");
  if (full.block(1, 1, full.rows() - 1, full.cols() - 1).det().is_zero())
    throw SingularMatrixError("linear part is singular");
  return AffineElem(std::move(full), trusted{});
}

AffineElem AffineElem::identity(const Field& f, size_t n) {
  return AffineElem(Mat::identity(f, n + 1), trusted{});
}

AffineElem AffineElem::translation(const Vec& v) {
  return make(v, Mat::identity(v.field(), v.size()));
}

Vec AffineElem::translation_part() const {
  return mat_.row(0).slice(1, n());
}

Mat AffineElem::linear_part() const { return mat_.block(1, 1, n(), n()); }

bool AffineElem::is_translation() const {
  return linear_part().is_identity();
}

bool AffineElem::is_unipotent() const {
  // (g - I)^(n+1) = 0 iff (g - I)^(2^j) = 0 for the first 2^j >= n+1
  // (nilpotency index never exceeds the matrix size).
  Mat b = mat_ - Mat::identity(field(), mat_.rows());
  size_t s = 1;
  while (s < mat_.rows()) {
    if (b.is_zero()) return true;
    b = b * b;
    s *= 2;
  }
  return b.is_zero();
}

AffineElem AffineElem::operator*(const AffineElem& o) const {
  if (n() != o.n()) throw std::invalid_argument("dimension mismatch");
  // Products of valid elements are valid (GL is closed), so skip revalidation.
  return AffineElem(mat_ * o.mat_, trusted{});
}

AffineElem AffineElem::inverse() const {
  return AffineElem(mat_.inverse(), trusted{});
}

Vec AffineElem::apply(const Vec& point) const {
  if (point.size() != n()) throw std::invalid_argument("point has wrong dimension");
  return translation_part() + point * linear_part();
}

AffineElem conjugate(const AffineElem& g, const AffineElem& h) {
  return h.inverse() * g * h;
}

std::vector<AffineElem> close_group(const std::vector<AffineElem>& gens,
                                    size_t limit) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  std::set<AffineElem> seen{AffineElem::identity(gens[0].field(), gens[0].n())};
  std::queue<AffineElem> work;
  work.push(*seen.begin());
  while (!work.empty()) {
    AffineElem g = std::move(work.front());
    work.pop();
    for (const AffineElem& gen : gens) {
      AffineElem h = g * gen;
      if (seen.insert(h).second) {
        if (seen.size() > limit)
          throw std::runtime_error("group closure exceeded element limit");
        work.push(std::move(h));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::optional<std::pair<size_t, size_t>> closure_witness(
    const std::vector<AffineElem>& elems) {
  std::set<AffineElem> members(elems.begin(), elems.end());
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j)
      if (!members.count(elems[i] * elems[j])) return std::make_pair(i, j);
  return std::nullopt;
}

std::vector<AffineElem> direct_product(const std::vector<AffineElem>& s1,
                                       const std::vector<AffineElem>& s2) {
  if (s1.empty() || s2.empty()) throw std::invalid_argument("empty factor");
  const Field& f = s1[0].field();
  if (&f != &s2[0].field()) throw std::invalid_argument("factors over different fields");
  std::vector<AffineElem> out;
  out.reserve(s1.size() * s2.size());
  for (const AffineElem& g : s1)
    for (const AffineElem& h : s2) {
      size_t n1 = g.n(), n2 = h.n();
      Mat m = Mat::identity(f, n1 + n2 + 1);
      Vec v = g.translation_part().concat(h.translation_part());
      for (size_t j = 0; j < v.size(); ++j) m(0, j + 1) = v[j];
      m.set_block(1, 1, g.linear_part());
      m.set_block(1 + n1, 1 + n1, h.linear_part());
      out.push_back(AffineElem::from_matrix(std::move(m)));
    }
  return out;
}

}  // namespace regaff
