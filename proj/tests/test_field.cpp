#include "doctest.h"

#include <stdexcept>

#include "regaff/field.hpp"

using namespace regaff;

TEST_CASE("canonical modulus selection") {
  // Smallest monic irreducible, coefficients compared constant-term first.
  CHECK(Field::finite(2, 2).modulus() == std::vector<int32_t>{1, 1, 1});   // x^2+x+1
  CHECK(Field::finite(2, 3).modulus() == std::vector<int32_t>{1, 0, 1, 1}); // x^3+x^2+1
  CHECK(Field::finite(3, 2).modulus() == std::vector<int32_t>{1, 0, 1});   // x^2+1
  CHECK(Field::finite(5, 1).modulus() == std::vector<int32_t>{0, 1});
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(Field::finite(4, 1), std::invalid_argument);   // composite p
  CHECK_THROWS_AS(Field::finite(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(Field::finite(2, 9), std::invalid_argument);
  // x^2+1 = (x+1)^2 over F_2
  CHECK_THROWS_AS(Field::finite(2, 2, {1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Field::finite(2, 2, {1, 1, 2}), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(Field::finite(2, 2, {1, 1}), std::invalid_argument);     // wrong degree
}

TEST_CASE("interning: same parameters give the same object") {
  CHECK(&Field::finite(2, 2) == &Field::finite(2, 2));
  CHECK(&Field::finite(3, 2, {1, 0, 1}) == &Field::finite(3, 2));
  CHECK(&Field::rationals() == &Field::rationals());
  CHECK(&Field::finite(2, 2) != &Field::finite(2, 3));
}

TEST_CASE("prime field arithmetic") {
  const Field& F7 = Field::finite(7);
  CHECK(F7.from_int(-3) == F7.from_int(4));
  CHECK(F7.from_int(10) == F7.from_int(3));
  CHECK(F7.from_rational(1, 2) == F7.from_int(4));  // 2*4 = 8 = 1 (mod 7)
  CHECK(F7.from_int(3) + F7.from_int(5) == F7.from_int(1));
  CHECK(F7.from_int(3) * F7.from_int(5) == F7.from_int(1));
  CHECK(-F7.from_int(2) == F7.from_int(5));
  CHECK(F7.from_int(3).inverse() == F7.from_int(5));
  CHECK_THROWS_AS(F7.zero().inverse(), std::domain_error);
}

TEST_CASE("GF(4): the degree-2 extension of F_2") {
  const Field& F = Field::finite(2, 2);
  CHECK(F.order() == 4);
  FieldElem w = F.element(2);  // coords (0,1): the generator
  CHECK(w * w == F.element(3));          // w^2 = 1 + w
  CHECK(w * w * w == F.one());           // w^3 = 1
  CHECK(w + w == F.zero());              // char 2
  CHECK(w.inverse() == F.element(3));
}

TEST_CASE("GF(8): generator power table") {
  const Field& F = Field::finite(2, 3);
  FieldElem x = F.element(2);  // coords (0,1,0)
  // Modulus x^3+x^2+1, so x^3 = 1 + x^2.  Hand-computed powers:
  CHECK(x.pow(2) == F.element(4));  // (0,0,1)
  CHECK(x.pow(3) == F.element(5));  // (1,0,1)
  CHECK(x.pow(4) == F.element(7));  // (1,1,1)
  CHECK(x.pow(5) == F.element(3));  // (1,1,0)
  CHECK(x.pow(6) == F.element(6));  // (0,1,1)
  CHECK(x.pow(7) == F.one());
  CHECK(x.inverse() == F.element(6));
}

TEST_CASE("GF(9): element of multiplicative order 8") {
  const Field& F = Field::finite(3, 2);
  FieldElem i = F.element(3);  // coords (0,1); i^2 = -1 under x^2+1
  CHECK(i * i == F.from_int(-1));
  FieldElem g = F.one() + i;   // 1+i has order 8
  CHECK(g.pow(4) == F.from_int(-1));
  CHECK(g.pow(8) == F.one());
  int ord = 1;
  FieldElem acc = g;
  while (!acc.is_one()) { acc = acc * g; ++ord; }
  CHECK(ord == 8);
}

TEST_CASE("exhaustive field axioms on GF(8)") {
  const Field& F = Field::finite(2, 3);
  const uint64_t q = F.order();
  for (uint64_t a = 0; a < q; ++a) {
    FieldElem ea = F.element(a);
    CHECK(F.index_of(ea) == a);
    if (a != 0) CHECK(ea * ea.inverse() == F.one());
    CHECK(ea.pow(q - 1) == (a == 0 ? F.zero() : F.one()));
    for (uint64_t b = 0; b < q; ++b) {
      FieldElem eb = F.element(b);
      CHECK(ea + eb == eb + ea);
      CHECK(ea * eb == eb * ea);
      // Frobenius is additive in characteristic 2.
      CHECK((ea + eb) * (ea + eb) == ea * ea + eb * eb);
      for (uint64_t c = 0; c < q; ++c) {
        FieldElem ec = F.element(c);
        CHECK((ea + eb) + ec == ea + (eb + ec));
        CHECK((ea * eb) * ec == ea * (eb * ec));
        CHECK(ea * (eb + ec) == ea * eb + ea * ec);
      }
    }
  }
}

TEST_CASE("small-field operation tables agree with element arithmetic") {
  for (const Field* F : {&Field::finite(2, 2), &Field::finite(3, 2), &Field::finite(5)}) {
    REQUIRE(F->has_tables());
    uint64_t q = F->order();
    for (uint64_t a = 0; a < q; ++a) {
      CHECK(uint64_t(F->neg_idx(uint8_t(a))) == F->index_of(-F->element(a)));
      for (uint64_t b = 0; b < q; ++b) {
        CHECK(uint64_t(F->add_idx(uint8_t(a), uint8_t(b))) ==
              F->index_of(F->element(a) + F->element(b)));
        CHECK(uint64_t(F->mul_idx(uint8_t(a), uint8_t(b))) ==
              F->index_of(F->element(a) * F->element(b)));
      }
    }
  }
}

TEST_CASE("rational arithmetic is exact") {
  const Field& Q = Field::rationals();
  FieldElem a = Q.from_rational(2, 3), b = Q.from_rational(1, 6);
  CHECK(a + b == Q.from_rational(5, 6));
  CHECK(a * b == Q.from_rational(1, 9));
  CHECK(a / b == Q.from_int(4));
  CHECK(Q.from_rational(2, -4) == Q.from_rational(-1, 2));
  CHECK(Q.from_rational(-1, 2) < Q.from_rational(1, 3));
  CHECK(Q.from_rational(1, 3) < Q.from_rational(1, 2));
  CHECK_THROWS_AS(Q.from_rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Q.zero().inverse(), std::domain_error);
  // No silent precision loss: (1/3)*3 is exactly 1.
  CHECK(Q.from_rational(1, 3) * Q.from_int(3) == Q.one());
}

TEST_CASE("element text round-trip") {
  const Field& F9 = Field::finite(3, 2);
  for (uint64_t i = 0; i < 9; ++i) {
    FieldElem e = F9.element(i);
    CHECK(F9.parse(F9.encode(e)) == e);
  }
  CHECK(F9.encode(F9.element(7)) == "1.2");  // 1 + 2x
  CHECK(F9.parse("1") == F9.one());          // short form: high coords zero
  CHECK(F9.parse("-1.2") == F9.parse("2.2"));
  CHECK_THROWS_AS(F9.parse("1.2.0"), std::invalid_argument);
  CHECK_THROWS_AS(F9.parse("1..2"), std::invalid_argument);
  CHECK_THROWS_AS(F9.parse(""), std::invalid_argument);
  CHECK_THROWS_AS(F9.parse("a"), std::invalid_argument);

  const Field& Q = Field::rationals();
  CHECK(Q.encode(Q.from_rational(-22, 7)) == "-22/7");
  CHECK(Q.encode(Q.from_int(5)) == "5");
  CHECK(Q.parse("-22/7") == Q.from_rational(-22, 7));
  CHECK(Q.parse("0") == Q.zero());
  CHECK_THROWS_AS(Q.parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Q.parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Q.parse("+3"), std::invalid_argument);
  CHECK_THROWS_AS(Q.parse("2/-3"), std::invalid_argument);
}

TEST_CASE("field header line round-trip") {
  CHECK(Field::finite(2, 2).header_line() == "FIELD 2 2 1,1,1");
  CHECK(Field::rationals().header_line() == "FIELD Q");
  CHECK(&Field::parse_header("FIELD 3 2 1,0,1") == &Field::finite(3, 2));
  CHECK(&Field::parse_header("FIELD 2 3") == &Field::finite(2, 3));
  CHECK(&Field::parse_header("FIELD Q") == &Field::rationals());
  CHECK_THROWS_AS(Field::parse_header("FIELD"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse_header("GROUP 2 2"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse_header("FIELD 2 2 1,0,1"), std::invalid_argument);
}

TEST_CASE("prime coordinates are linear and invertible") {
  const Field& F = Field::finite(2, 3);
  for (uint64_t a = 0; a < 8; ++a)
    for (uint64_t b = 0; b < 8; ++b) {
      auto ca = F.prime_coords(F.element(a));
      auto cb = F.prime_coords(F.element(b));
      auto cs = F.prime_coords(F.element(a) + F.element(b));
      for (int i = 0; i < 3; ++i) CHECK(cs[i] == (ca[i] + cb[i]) % 2);
    }
  CHECK(F.from_coords(F.prime_coords(F.element(5))) == F.element(5));
  CHECK_THROWS_AS(Field::rationals().prime_coords(Field::rationals().one()),
                  std::domain_error);
}

TEST_CASE("mixed-field operations are rejected") {
  FieldElem a = Field::finite(2, 2).one();
  FieldElem b = Field::finite(3).one();
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK(a != b);
}
