#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace regaff {

class FieldElem;

enum class FieldKind { finite, rational };

/// Exact coefficient field: either GF(p^ell) with an explicit monic
/// irreducible modulus polynomial, or the rationals (arbitrary precision).
///
/// Fields are interned: Field::finite / Field::rationals return references
/// to immutable singletons, so elements can hold a plain pointer and field
/// identity is pointer identity.  All arithmetic is exact.
class Field {
 public:
  /// GF(p^ell) with the lexicographically smallest monic irreducible
  /// modulus (coefficients compared from the constant term upward).
  static const Field& finite(int64_t p, int ell = 1);

  /// GF(p^ell) with an explicit modulus, ascending coefficients, size
  /// ell+1, monic.  Irreducibility is checked by trial division.
  static const Field& finite(int64_t p, int ell, std::vector<int32_t> modulus);

  /// The rational field.
  static const Field& rationals();

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == FieldKind::finite; }
  bool is_rational() const { return kind_ == FieldKind::rational; }

  int64_t characteristic() const { return is_finite() ? p_ : 0; }
  int64_t p() const;
  int ell() const;
  const std::vector<int32_t>& modulus() const;
  /// p^ell; throws for the rationals.
  uint64_t order() const;

  FieldElem zero() const;
  FieldElem one() const;
  /// Canonical image of an integer (reduced mod p, or exact rational).
  FieldElem from_int(int64_t v) const;
  FieldElem from_rational(int64_t num, int64_t den) const;
  FieldElem from_mpq(const mpq_class& q) const;
  /// Finite fields only: element with the given polynomial-basis
  /// coordinates (ascending powers of the generator).
  FieldElem from_coords(std::span<const int32_t> coords) const;

  /// Canonical indexing of GF(p^ell): index = c0 + c1*p + ... + c(ell-1)*p^(ell-1).
  FieldElem element(uint64_t index) const;
  uint64_t index_of(const FieldElem& x) const;

  /// Polynomial-basis coordinate vector over the prime field.  The map is
  /// F0-linear and bijective.  Rationals are rejected.
  std::vector<int32_t> prime_coords(const FieldElem& x) const;

  // Element text encoding: finite "c0.c1. ... .c(ell-1)", rational "num/den".
  std::string encode(const FieldElem& x) const;
  FieldElem parse(std::string_view text) const;

  /// Header line used by all file formats:
  ///   "FIELD p ell c0,c1,...,cell"  or  "FIELD Q".
  std::string header_line() const;
  static const Field& parse_header(std::string_view line);

  // Small-field operation tables (order <= 256), indexed by canonical
  // element index; backbone of the packed fast paths.
  bool has_tables() const { return !mul_tbl_.empty(); }
  uint8_t add_idx(uint8_t a, uint8_t b) const { return add_tbl_[size_t(a) * order_ + b]; }
  uint8_t mul_idx(uint8_t a, uint8_t b) const { return mul_tbl_[size_t(a) * order_ + b]; }
  uint8_t neg_idx(uint8_t a) const { return neg_tbl_[a]; }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field() = default;
  friend class FieldElem;
  friend struct FieldRegistry;

  void build_tables();

  FieldKind kind_ = FieldKind::rational;
  int64_t p_ = 0;
  int ell_ = 0;
  uint64_t order_ = 0;                // p^ell, 0 for rationals
  std::vector<int32_t> modulus_;      // ascending, size ell+1, monic
  std::vector<uint8_t> add_tbl_, mul_tbl_, neg_tbl_;
};

/// Maximum supported extension degree for finite fields.
inline constexpr int kMaxExtDegree = 8;

/// One exact field element.  Immutable value type; carries its field.
class FieldElem {
 public:
  using Coords = std::array<int32_t, kMaxExtDegree>;

  FieldElem() = default;  // detached null element; only assignment is valid

  const Field& field() const { return *field_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  /// Multiplicative inverse; throws std::domain_error on zero.
  FieldElem inverse() const;
  FieldElem pow(uint64_t e) const;

  bool operator==(const FieldElem& o) const;
  std::strong_ordering operator<=>(const FieldElem& o) const;

  std::string str() const { return field_->encode(*this); }

  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  const Coords& coords() const { return std::get<Coords>(v_); }

 private:
  friend class Field;
  FieldElem(const Field* f, Coords c) : field_(f), v_(c) {}
  FieldElem(const Field* f, mpq_class q) : field_(f), v_(std::move(q)) {}
  void require_same_field(const FieldElem& o) const;

  const Field* field_ = nullptr;
  std::variant<Coords, mpq_class> v_ = Coords{};
};

}  // namespace regaff
