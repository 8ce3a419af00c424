#include "doctest.h"

#include "regaff/linalg.hpp"

using namespace regaff;

namespace {

Mat mat_of(const Field& f, std::initializer_list<std::initializer_list<int64_t>> rows) {
  Mat m(f, rows.size(), rows.begin()->size());
  size_t i = 0;
  for (const auto& r : rows) {
    size_t j = 0;
    for (int64_t v : r) m(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

// Every 2x2 matrix over GF(2), by entry bits.
std::vector<Mat> all_2x2_gf2() {
  const Field& f = Field::finite(2);
  std::vector<Mat> out;
  for (int bits = 0; bits < 16; ++bits) {
    Mat m(f, 2, 2);
    for (int e = 0; e < 4; ++e) m(e / 2, e % 2) = f.from_int((bits >> e) & 1);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("vector arithmetic and slicing") {
  const Field& f = Field::finite(7);
  Vec a = Vec::from_ints(f, {1, 2, 3});
  Vec b = Vec::from_ints(f, {4, 5, 6});
  CHECK(a + b == Vec::from_ints(f, {5, 0, 2}));
  CHECK(a - b == Vec::from_ints(f, {4, 4, 4}));
  CHECK(a * f.from_int(3) == Vec::from_ints(f, {3, 6, 2}));
  CHECK(a.dot(b) == f.from_int(4 + 10 + 18));
  CHECK(a.slice(1, 2) == Vec::from_ints(f, {2, 3}));
  CHECK(a.concat(b).size() == 6);
  CHECK(Vec(f, 4).is_zero());
  CHECK_THROWS_AS(a + Vec(f, 2), std::invalid_argument);
}

TEST_CASE("known determinant and inverse over the rationals") {
  const Field& q = Field::rationals();
  Mat a = mat_of(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}});
  CHECK(a.det() == q.from_int(-3));  // expanded by hand along the first row
  Mat inv = a.inverse();
  CHECK(a * inv == Mat::identity(q, 3));
  CHECK(inv * a == Mat::identity(q, 3));
  CHECK(inv(0, 0) == q.from_rational(-2, 3));  // (50-48)/det

  Mat sing = mat_of(q, {{1, 2}, {2, 4}});
  CHECK(sing.det() == q.zero());
  CHECK(sing.rank() == 1);
  CHECK_THROWS_AS(sing.inverse(), SingularMatrixError);
}

TEST_CASE("row-vector convention: x*A uses rows on the left") {
  const Field& q = Field::rationals();
  Mat a = mat_of(q, {{1, 2}, {3, 4}});
  CHECK(Vec::from_ints(q, {1, 0}) * a == Vec::from_ints(q, {1, 2}));
  CHECK(Vec::from_ints(q, {0, 1}) * a == Vec::from_ints(q, {3, 4}));
  // Column action is the transpose convention.
  CHECK(a.mul_col(Vec::from_ints(q, {1, 0})) == Vec::from_ints(q, {1, 3}));
}

TEST_CASE("outer product is column times row") {
  const Field& q = Field::rationals();
  Mat m = Mat::outer(Vec::from_ints(q, {1, 2}), Vec::from_ints(q, {3, 4}));
  CHECK(m == mat_of(q, {{3, 4}, {6, 8}}));
  CHECK(m.rank() == 1);
}

TEST_CASE("exhaustive 2x2 GF(2): associativity and det multiplicativity") {
  auto ms = all_2x2_gf2();
  for (const Mat& a : ms)
    for (const Mat& b : ms) {
      CHECK((a * b).det() == a.det() * b.det());
      for (const Mat& c : ms) CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("every invertible 2x2 over GF(3) has a two-sided inverse") {
  const Field& f = Field::finite(3);
  int invertible = 0;
  for (int i = 0; i < 81; ++i) {
    Mat m(f, 2, 2);
    int v = i;
    for (int e = 0; e < 4; ++e) { m(e / 2, e % 2) = f.from_int(v % 3); v /= 3; }
    if (m.det().is_zero()) {
      CHECK_THROWS_AS(m.inverse(), SingularMatrixError);
      continue;
    }
    ++invertible;
    CHECK(m * m.inverse() == Mat::identity(f, 2));
    CHECK(m.inverse() * m == Mat::identity(f, 2));
  }
  CHECK(invertible == 48);  // |GL_2(3)| = (9-1)(9-3)
}

TEST_CASE("rref, rank, nullspace") {
  const Field& q = Field::rationals();
  Mat a = mat_of(q, {{1, 2, 0, 3}, {2, 4, 1, 7}, {1, 2, 1, 4}});
  auto [red, pivots] = rref(a);
  CHECK(pivots == std::vector<size_t>{0, 2});
  CHECK(a.rank() == 2);
  auto ns = a.nullspace();
  REQUIRE(ns.size() == 2);
  for (const Vec& x : ns) {
    CHECK(a.mul_col(x).is_zero());
    CHECK(!x.is_zero());
  }

  const Field& f2 = Field::finite(2);
  Mat b = mat_of(f2, {{1, 1}, {1, 1}});
  auto nsb = b.nullspace();
  REQUIRE(nsb.size() == 1);
  CHECK(nsb[0] == Vec::from_ints(f2, {1, 1}));
}

TEST_CASE("solve_row finds x with x*A = b") {
  const Field& q = Field::rationals();
  Mat a = mat_of(q, {{2, 1}, {1, 1}});
  auto x = solve_row(a, Vec::from_ints(q, {5, 3}));
  REQUIRE(x.has_value());
  CHECK(*x * a == Vec::from_ints(q, {5, 3}));
  CHECK(*x == Vec::from_ints(q, {2, 1}));

  // Inconsistent system: rows of A span only the diagonal direction.
  Mat d = mat_of(q, {{1, 1}, {2, 2}});
  CHECK(!solve_row(d, Vec::from_ints(q, {1, 0})).has_value());
}

TEST_CASE("shape predicates") {
  const Field& f = Field::finite(5);
  Mat u = mat_of(f, {{1, 2, 3}, {0, 1, 4}, {0, 0, 1}});
  CHECK(u.is_upper_unitriangular());
  CHECK(!u.is_identity());
  CHECK(Mat::identity(f, 3).is_upper_unitriangular());
  Mat l = mat_of(f, {{1, 0}, {2, 1}});
  CHECK(!l.is_upper_unitriangular());
  CHECK(!mat_of(f, {{2, 0}, {0, 1}}).is_upper_unitriangular());
  CHECK(Mat(f, 2, 3).is_zero());
}

TEST_CASE("block extraction and insertion round-trip") {
  const Field& f = Field::finite(3);
  Mat m(f, 4, 4);
  Mat b = mat_of(f, {{1, 2}, {2, 1}});
  m.set_block(1, 2, b);
  CHECK(m.block(1, 2, 2, 2) == b);
  CHECK(m(0, 0).is_zero());
  CHECK(m(1, 2) == f.from_int(1));
  CHECK_THROWS_AS(m.block(3, 3, 2, 2), std::out_of_range);
}

TEST_CASE("matrix text round-trip") {
  const Field& f4 = Field::finite(2, 2);
  Mat m(f4, 2, 2);
  m(0, 0) = f4.one();
  m(0, 1) = f4.element(2);
  m(1, 1) = f4.element(3);
  CHECK(m.encode() == "1.0,0.1;0.0,1.1");
  CHECK(Mat::parse(f4, m.encode()) == m);

  const Field& q = Field::rationals();
  Mat r = mat_of(q, {{1, 2}, {3, 4}});
  r(0, 0) = q.from_rational(-1, 2);
  CHECK(r.encode() == "-1/2,2;3,4");
  CHECK(Mat::parse(q, r.encode()) == r);
  CHECK_THROWS_AS(Mat::parse(q, "1,2;3"), std::invalid_argument);
  CHECK_THROWS_AS(Mat::parse(q, ""), std::invalid_argument);
}

TEST_CASE("prime decomposition of GF(4) with W = span{1}") {
  const Field& f = Field::finite(2, 2);
  Vec one(f, 1);
  one[0] = f.one();
  PrimeDecomposition dec(f, 1, {one});
  CHECK(dec.dim_w() == 1);
  CHECK(dec.dim_u() == 1);
  REQUIRE(dec.u_basis().size() == 1);
  CHECK(dec.u_basis()[0][0] == f.element(2));  // the generator spans U

  Vec w = Vec(f, 1);
  w[0] = f.element(2);
  Vec onew = Vec(f, 1);
  onew[0] = f.element(3);  // 1 + w
  CHECK(dec.in_w(one));
  CHECK(!dec.in_w(w));
  CHECK(dec.project_u(one).is_zero());
  CHECK(dec.project_u(w) == w);
  CHECK(dec.project_u(onew) == w);   // strips the W-component
  CHECK(dec.project_w(onew) == one);
  auto elems = dec.w_elements();
  CHECK(elems.size() == 2);
  CHECK(elems[0].is_zero());
  CHECK(elems[1] == one);
}

TEST_CASE("prime decomposition of GF(8) with a 2-dimensional W") {
  const Field& f = Field::finite(2, 3);
  auto vec1 = [&](FieldElem e) { Vec v(f, 1); v[0] = e; return v; };
  // W = span{x, x^2}; complement must be span{1}.
  PrimeDecomposition dec(f, 1, {vec1(f.element(2)), vec1(f.element(4))});
  CHECK(dec.dim_w() == 2);
  CHECK(dec.dim_u() == 1);
  CHECK(dec.u_basis()[0][0] == f.one());
  CHECK(dec.project_u(vec1(f.element(3)))[0] == f.one());  // 1+x -> 1
  CHECK(dec.w_elements().size() == 4);
  for (const Vec& w : dec.w_elements()) CHECK(dec.in_w(w));
}

TEST_CASE("prime decomposition splits product spaces coordinate-wise") {
  const Field& f = Field::finite(2);
  // W = span{(1,0)} inside F_2^2.
  PrimeDecomposition dec(f, 2, {Vec::from_ints(f, {1, 0})});
  CHECK(dec.dim_w() == 1);
  CHECK(dec.dim_u() == 1);
  CHECK(dec.u_basis()[0] == Vec::from_ints(f, {0, 1}));
  CHECK(dec.project_u(Vec::from_ints(f, {1, 1})) == Vec::from_ints(f, {0, 1}));
  // Projection is additive.
  Vec a = Vec::from_ints(f, {1, 0}), b = Vec::from_ints(f, {1, 1});
  CHECK(dec.project_u(a + b) == dec.project_u(a) + dec.project_u(b));
  CHECK_THROWS_AS(PrimeDecomposition(Field::rationals(), 1, {}), std::invalid_argument);
}

TEST_CASE("complement picks the earliest independent standard vectors") {
  const Field& f = Field::finite(2);
  // W = span{(1,1)}: e_0 is independent of W, so U = span{(1,0)} — the
  // greedy rule, not the reduced-echelon free-column rule (which would
  // give (0,1)).
  PrimeDecomposition dec(f, 2, {Vec::from_ints(f, {1, 1})});
  REQUIRE(dec.dim_u() == 1);
  CHECK(dec.u_basis()[0] == Vec::from_ints(f, {1, 0}));
  CHECK(dec.project_u(Vec::from_ints(f, {0, 1})) == Vec::from_ints(f, {1, 0}));

  const Field& f4 = Field::finite(2, 2);
  Vec g(f4, 1);
  g[0] = f4.element(3);  // W = span{1+w}
  PrimeDecomposition dec4(f4, 1, {g});
  CHECK(dec4.u_basis()[0][0] == f4.one());
  Vec wv(f4, 1);
  wv[0] = f4.element(2);
  CHECK(dec4.project_u(wv)[0] == f4.one());  // w = (1+w) + 1
}

TEST_CASE("empty generating set gives the zero subspace") {
  const Field& f = Field::finite(3, 2);
  PrimeDecomposition dec(f, 1, {});
  CHECK(dec.dim_w() == 0);
  CHECK(dec.dim_u() == 2);
  Vec v(f, 1);
  v[0] = f.element(5);
  CHECK(dec.project_u(v) == v);  // projection is the identity
  CHECK(dec.w_elements().size() == 1);
}
