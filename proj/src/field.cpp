#include "regaff/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace regaff {
namespace {

// Largest supported characteristic.  Keeps every intermediate product of a
// degree-<=7 polynomial convolution inside int64 without per-term reduction.
constexpr int64_t kMaxChar = int64_t(1) << 20;

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t mod_floor(int64_t v, int64_t p) {
  int64_t r = v % p;
  return r < 0 ? r + p : r;
}

// Plain extended Euclid; p prime, a in [1, p).
int64_t inv_mod(int64_t a, int64_t p) {
  int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    int64_t t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("inv_mod: not invertible");
  return mod_floor(t0, p);
}

// Dense univariate polynomials over F_p: ascending coefficients in [0, p),
// trailing zeros trimmed.  Only used for modulus search and inverses, so
// clarity beats speed.
using Poly = std::vector<int64_t>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  poly_trim(c);
  return c;
}

Poly poly_sub(Poly a, const Poly& b, int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = mod_floor(a[i] - b[i], p);
  poly_trim(a);
  return a;
}

// a = q*b + r with deg r < deg b; returns {q, r}.  b nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, int64_t p) {
  Poly q;
  int64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    size_t shift = a.size() - b.size();
    int64_t factor = a.back() * lead_inv % p;
    if (q.size() < shift + 1) q.resize(shift + 1, 0);
    q[shift] = factor;
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = mod_floor(a[shift + i] - factor * b[i] % p, p);
    poly_trim(a);
  }
  return {std::move(q), std::move(a)};
}

bool poly_irreducible(const Poly& m, int64_t p) {
  int deg = int(m.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; d <= deg / 2; ++d) {
    // Odometer over the d lower coefficients.
    std::vector<int64_t> low(d, 0);
    while (true) {
      Poly div(low.begin(), low.end());
      div.push_back(1);
      if (poly_divmod(m, div, p).second.empty()) return false;
      int i = 0;
      for (; i < d; ++i) {
        if (++low[i] < p) break;
        low[i] = 0;
      }
      if (i == d) break;
    }
  }
  return true;
}

std::vector<int32_t> smallest_irreducible(int64_t p, int ell) {
  if (ell == 1) return {0, 1};  // x itself; reduction is plain mod p
  // Lexicographic scan of the lower coefficients (constant term varies
  // slowest), keeping the first irreducible hit.
  std::vector<int64_t> low(ell, 0);
  while (true) {
    Poly m(low.begin(), low.end());
    m.push_back(1);
    if (m[0] != 0 && poly_irreducible(m, p)) {
      std::vector<int32_t> out(m.begin(), m.end());
      return out;
    }
    int i = ell - 1;
    for (; i >= 0; --i) {
      if (++low[i] < p) break;
      low[i] = 0;
    }
    if (i < 0) break;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

mpq_class parse_rational_text(std::string_view text) {
  // Accepted forms: "123", "-4", "7/9", "-22/7".  Strict: no spaces, no
  // leading '+', denominator positive and nonzero.
  auto bad = [&] {
    throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'");
  };
  size_t slash = text.find('/');
  auto check_int = [&](std::string_view s, bool allow_sign) {
    if (s.empty()) bad();
    size_t i = 0;
    if (allow_sign && s[0] == '-') i = 1;
    if (i == s.size()) bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
  };
  if (slash == std::string_view::npos) {
    check_int(text, true);
    return mpq_class(std::string(text));
  }
  std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
  check_int(num, true);
  check_int(den, false);
  mpq_class q{std::string(text)};
  if (q.get_den() == 0) bad();
  q.canonicalize();
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Interning

struct FieldRegistry {
  std::mutex mu;
  std::vector<std::unique_ptr<Field>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry reg;
    return reg;
  }

  const Field& get_finite(int64_t p, int ell, std::vector<int32_t> modulus) {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& f : fields)
      if (f->p_ == p && f->ell_ == ell && f->modulus_ == modulus) return *f;
    auto f = std::unique_ptr<Field>(new Field());
    f->kind_ = FieldKind::finite;
    f->p_ = p;
    f->ell_ = ell;
    uint64_t q = 1;
    for (int i = 0; i < ell; ++i) q *= uint64_t(p);
    f->order_ = q;
    f->modulus_ = std::move(modulus);
    f->build_tables();
    fields.push_back(std::move(f));
    return *fields.back();
  }
};

const Field& Field::finite(int64_t p, int ell) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (p > kMaxChar) throw std::invalid_argument("characteristic too large");
  if (ell < 1 || ell > kMaxExtDegree)
    throw std::invalid_argument("extension degree out of range [1, 8]");
  return FieldRegistry::instance().get_finite(p, ell, smallest_irreducible(p, ell));
}

const Field& Field::finite(int64_t p, int ell, std::vector<int32_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (p > kMaxChar) throw std::invalid_argument("characteristic too large");
  if (ell < 1 || ell > kMaxExtDegree)
    throw std::invalid_argument("extension degree out of range [1, 8]");
  if (int(modulus.size()) != ell + 1 || modulus.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree ell");
  for (int32_t c : modulus)
    if (c < 0 || int64_t(c) >= p) throw std::invalid_argument("modulus coefficient out of range");
  if (ell > 1) {
    Poly m(modulus.begin(), modulus.end());
    if (!poly_irreducible(m, p)) throw std::invalid_argument("modulus is reducible");
  }
  return FieldRegistry::instance().get_finite(p, ell, std::move(modulus));
}

const Field& Field::rationals() {
  static const Field* f = [] {
    auto q = std::unique_ptr<Field>(new Field());
    q->kind_ = FieldKind::rational;
    auto& reg = FieldRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.fields.push_back(std::move(q));
    return reg.fields.back().get();
  }();
  return *f;
}

int64_t Field::p() const {
  if (!is_finite()) throw std::domain_error("rationals have no characteristic p");
  return p_;
}

int Field::ell() const {
  if (!is_finite()) throw std::domain_error("rationals have no extension degree");
  return ell_;
}

const std::vector<int32_t>& Field::modulus() const {
  if (!is_finite()) throw std::domain_error("rationals have no modulus");
  return modulus_;
}

uint64_t Field::order() const {
  if (!is_finite()) throw std::domain_error("rationals are infinite");
  return order_;
}

void Field::build_tables() {
  if (order_ == 0 || order_ > 256) return;
  size_t q = size_t(order_);
  add_tbl_.resize(q * q);
  mul_tbl_.resize(q * q);
  neg_tbl_.resize(q);
  for (size_t a = 0; a < q; ++a) {
    FieldElem ea = element(a);
    neg_tbl_[a] = uint8_t(index_of(-ea));
    for (size_t b = 0; b < q; ++b) {
      FieldElem eb = element(b);
      add_tbl_[a * q + b] = uint8_t(index_of(ea + eb));
      mul_tbl_[a * q + b] = uint8_t(index_of(ea * eb));
    }
  }
}

// ---------------------------------------------------------------------------
// Element construction

FieldElem Field::zero() const {
  if (is_finite()) return FieldElem(this, FieldElem::Coords{});
  return FieldElem(this, mpq_class(0));
}

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(int64_t v) const {
  if (is_finite()) {
    FieldElem::Coords c{};
    c[0] = int32_t(mod_floor(v, p_));
    return FieldElem(this, c);
  }
  return FieldElem(this, mpq_class(static_cast<long>(v)));
}

FieldElem Field::from_rational(int64_t num, int64_t den) const {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (is_finite()) {
    FieldElem d = from_int(den);
    if (d.is_zero()) throw std::invalid_argument("denominator vanishes in this field");
    return from_int(num) / d;
  }
  mpq_class q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return FieldElem(this, std::move(q));
}

FieldElem Field::from_mpq(const mpq_class& q) const {
  if (is_finite()) {
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
      throw std::invalid_argument("rational too large for finite reduction");
    return from_rational(q.get_num().get_si(), q.get_den().get_si());
  }
  mpq_class c = q;
  c.canonicalize();
  return FieldElem(this, std::move(c));
}

FieldElem Field::from_coords(std::span<const int32_t> coords) const {
  if (!is_finite()) throw std::domain_error("coords are only defined for finite fields");
  if (int(coords.size()) > ell_) throw std::invalid_argument("too many coordinates");
  FieldElem::Coords c{};
  for (size_t i = 0; i < coords.size(); ++i) c[i] = int32_t(mod_floor(coords[i], p_));
  return FieldElem(this, c);
}

FieldElem Field::element(uint64_t index) const {
  if (!is_finite()) throw std::domain_error("element indexing requires a finite field");
  if (index >= order_) throw std::out_of_range("element index out of range");
  FieldElem::Coords c{};
  for (int i = 0; i < ell_; ++i) {
    c[i] = int32_t(index % uint64_t(p_));
    index /= uint64_t(p_);
  }
  return FieldElem(this, c);
}

uint64_t Field::index_of(const FieldElem& x) const {
  if (!is_finite()) throw std::domain_error("element indexing requires a finite field");
  if (&x.field() != this) throw std::invalid_argument("element from a different field");
  const auto& c = x.coords();
  uint64_t idx = 0;
  for (int i = ell_ - 1; i >= 0; --i) idx = idx * uint64_t(p_) + uint64_t(c[i]);
  return idx;
}

std::vector<int32_t> Field::prime_coords(const FieldElem& x) const {
  if (!is_finite()) throw std::domain_error("prime coordinates require a finite field");
  if (&x.field() != this) throw std::invalid_argument("element from a different field");
  const auto& c = x.coords();
  return std::vector<int32_t>(c.begin(), c.begin() + ell_);
}

// ---------------------------------------------------------------------------
// Text encoding

std::string Field::encode(const FieldElem& x) const {
  if (&x.field() != this) throw std::invalid_argument("element from a different field");
  if (is_finite()) {
    const auto& c = x.coords();
    std::string out = std::to_string(c[0]);
    for (int i = 1; i < ell_; ++i) {
      out += '.';
      out += std::to_string(c[i]);
    }
    return out;
  }
  const mpq_class& q = x.rational();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

FieldElem Field::parse(std::string_view text) const {
  if (text.empty()) throw std::invalid_argument("empty field element");
  if (is_rational()) return FieldElem(this, parse_rational_text(text));

  // "c0.c1..." with at most ell parts; missing high parts are zero.
  FieldElem::Coords c{};
  int part = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t dot = text.find('.', pos);
    std::string_view piece =
        text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (piece.empty() || part >= ell_)
      throw std::invalid_argument("bad element literal: '" + std::string(text) + "'");
    int64_t v = 0;
    bool neg = false;
    size_t i = 0;
    if (piece[0] == '-') { neg = true; i = 1; }
    if (i == piece.size())
      throw std::invalid_argument("bad element literal: '" + std::string(text) + "'");
    for (; i < piece.size(); ++i) {
      if (piece[i] < '0' || piece[i] > '9')
        throw std::invalid_argument("bad element literal: '" + std::string(text) + "'");
      v = v * 10 + (piece[i] - '0');
      if (v > (int64_t(1) << 40))
        throw std::invalid_argument("element coordinate too large");
    }
    c[part++] = int32_t(mod_floor(neg ? -v : v, p_));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return FieldElem(this, c);
}

std::string Field::header_line() const {
  if (is_rational()) return "FIELD Q";
  std::string out = "FIELD " + std::to_string(p_) + " " + std::to_string(ell_) + " ";
  for (size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out;
}

const Field& Field::parse_header(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tag, first;
  in >> tag >> first;
  if (tag != "FIELD" || first.empty())
    throw std::invalid_argument("expected 'FIELD ...' header");
  if (first == "Q") return rationals();
  int64_t p = 0;
  try {
    p = std::stoll(first);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad FIELD header: '" + std::string(line) + "'");
  }
  int ell = 0;
  if (!(in >> ell)) throw std::invalid_argument("bad FIELD header: '" + std::string(line) + "'");
  std::string coeffs;
  if (!(in >> coeffs)) return finite(p, ell);
  std::vector<int32_t> modulus;
  size_t pos = 0;
  while (pos <= coeffs.size()) {
    size_t comma = coeffs.find(',', pos);
    std::string piece = coeffs.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      modulus.push_back(int32_t(std::stol(piece)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad FIELD modulus: '" + std::string(line) + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return finite(p, ell, std::move(modulus));
}

// ---------------------------------------------------------------------------
// Element arithmetic

void FieldElem::require_same_field(const FieldElem& o) const {
  if (field_ == nullptr || o.field_ == nullptr)
    throw std::invalid_argument("operation on a detached field element");
  if (field_ != o.field_)
    throw std::invalid_argument("operands belong to different fields");
}

bool FieldElem::is_zero() const {
  if (field_ == nullptr) throw std::invalid_argument("detached field element");
  if (field_->is_finite()) {
    const auto& c = coords();
    return std::all_of(c.begin(), c.end(), [](int32_t v) { return v == 0; });
  }
  return rational() == 0;
}

bool FieldElem::is_one() const {
  if (field_ == nullptr) throw std::invalid_argument("detached field element");
  if (field_->is_finite()) {
    const auto& c = coords();
    if (c[0] != 1) return false;
    return std::all_of(c.begin() + 1, c.end(), [](int32_t v) { return v == 0; });
  }
  return rational() == 1;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  require_same_field(o);
  if (field_->is_finite()) {
    const int64_t p = field_->p_;
    Coords r{};
    const auto& a = coords();
    const auto& b = o.coords();
    for (int i = 0; i < field_->ell_; ++i) r[i] = int32_t((int64_t(a[i]) + b[i]) % p);
    return FieldElem(field_, r);
  }
  return FieldElem(field_, mpq_class(rational() + o.rational()));
}

FieldElem FieldElem::operator-() const {
  if (field_ == nullptr) throw std::invalid_argument("detached field element");
  if (field_->is_finite()) {
    const int64_t p = field_->p_;
    Coords r{};
    const auto& a = coords();
    for (int i = 0; i < field_->ell_; ++i) r[i] = int32_t(a[i] == 0 ? 0 : p - a[i]);
    return FieldElem(field_, r);
  }
  return FieldElem(field_, mpq_class(-rational()));
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  require_same_field(o);
  if (!field_->is_finite())
    return FieldElem(field_, mpq_class(rational() * o.rational()));

  const int64_t p = field_->p_;
  const int ell = field_->ell_;
  const auto& a = coords();
  const auto& b = o.coords();
  if (ell == 1) {
    Coords r{};
    r[0] = int32_t(int64_t(a[0]) * b[0] % p);
    return FieldElem(field_, r);
  }
  // Convolution, then reduction by the monic modulus from the top down.
  std::array<int64_t, 2 * kMaxExtDegree - 1> prod{};
  for (int i = 0; i < ell; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < ell; ++j) prod[i + j] += int64_t(a[i]) * b[j];
  }
  const auto& m = field_->modulus_;
  for (int d = 2 * ell - 2; d >= ell; --d) {
    int64_t c = mod_floor(prod[d], p);
    if (c == 0) continue;
    // x^d == -sum_{j<ell} m[j] x^(d-ell+j)  (m monic)
    for (int j = 0; j < ell; ++j) prod[d - ell + j] -= c * m[j];
    prod[d] = 0;
  }
  Coords r{};
  for (int i = 0; i < ell; ++i) r[i] = int32_t(mod_floor(prod[i], p));
  return FieldElem(field_, r);
}

FieldElem FieldElem::inverse() const {
  if (field_ == nullptr) throw std::invalid_argument("detached field element");
  if (is_zero()) throw std::domain_error("division by zero");
  if (!field_->is_finite())
    return FieldElem(field_, mpq_class(1 / rational()));

  const int64_t p = field_->p_;
  const int ell = field_->ell_;
  const auto& a = coords();
  if (ell == 1) {
    Coords r{};
    r[0] = int32_t(inv_mod(a[0], p));
    return FieldElem(field_, r);
  }
  // Extended Euclid in F_p[x] against the modulus.
  Poly r0(field_->modulus_.begin(), field_->modulus_.end());
  Poly r1(a.begin(), a.begin() + ell);
  poly_trim(r1);
  Poly t0, t1{1};
  while (!r1.empty()) {
    auto [q, rem] = poly_divmod(r0, r1, p);
    Poly t2 = poly_sub(t0, poly_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant gcd; scale t0 by its inverse.
  int64_t scale = inv_mod(r0[0], p);
  Coords r{};
  for (size_t i = 0; i < t0.size(); ++i) r[i] = int32_t(t0[i] * scale % p);
  return FieldElem(field_, r);
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  require_same_field(o);
  return *this * o.inverse();
}

FieldElem FieldElem::pow(uint64_t e) const {
  if (field_ == nullptr) throw std::invalid_argument("detached field element");
  FieldElem acc = field_->one();
  FieldElem base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (field_ != o.field_) return false;
  if (field_ == nullptr) return true;
  if (field_->is_finite()) return coords() == o.coords();
  return rational() == o.rational();
}

std::strong_ordering FieldElem::operator<=>(const FieldElem& o) const {
  if (field_ != o.field_) {
    // Stable cross-field order: finite before rational, then (p, ell, modulus).
    auto key = [](const Field* f) {
      return std::tuple(f == nullptr ? -1 : int(f->kind()),
                        f == nullptr ? 0 : f->characteristic(),
                        f == nullptr || !f->is_finite() ? 0 : f->ell());
    };
    auto c = key(field_) <=> key(o.field_);
    if (c != std::strong_ordering::equal) return c;
    if (field_->modulus_ != o.field_->modulus_)
      return field_->modulus_ < o.field_->modulus_ ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  if (field_ == nullptr) return std::strong_ordering::equal;
  if (field_->is_finite()) {
    // Numeric index order: most significant coordinate last.
    const auto& a = coords();
    const auto& b = o.coords();
    for (int i = field_->ell_ - 1; i >= 0; --i)
      if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  int c = cmp(rational(), o.rational());
  return c < 0   ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

}  // namespace regaff
