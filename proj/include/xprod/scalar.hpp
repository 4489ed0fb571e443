#ifndef XPROD_SCALAR_HPP
#define XPROD_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "xprod/error.hpp"

namespace xprod {

/// The ground field: either Q or F_p with p prime and p < 2^31.
class Field {
 public:
  enum class Kind { Rationals, Prime };

  static Field rationals() noexcept { return Field(Kind::Rationals, 0); }
  /// Throws NotPrime unless `p` is a prime below 2^31.
  static Field prime(std::uint64_t p);

  Kind kind() const noexcept { return kind_; }
  /// 0 for the rationals.
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_prime() const noexcept { return kind_ == Kind::Prime; }

  /// "Q" or "F_p".
  std::string to_string() const;

  bool operator==(const Field&) const = default;

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Exact rational number, always stored as a reduced fraction with positive
/// denominator.
class Rational {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long v) : q_(v) {}  // NOLINT: Eigen builds literals this way
  Rational(long long num, long long den);
  explicit Rational(Rep q) : q_(std::move(q)) {}

  const Rep& rep() const noexcept { return q_; }
  bool is_zero() const { return q_.is_zero(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(Rep(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Accepts "p", "p/q", "-p/q", "p/-q". Throws Parse on malformed input or
  /// zero denominator.
  static Rational parse(std::string_view text);

 private:
  Rep q_;
};

/// Residue modulo a prime p < 2^31.
///
/// A value built from a bare integer (as Eigen does for `Scalar(0)` and
/// `Scalar(1)`) carries no modulus yet and adopts the modulus of the first
/// bound operand it meets. Everything the library hands out is bound.
class Zp {
 public:
  Zp() = default;
  Zp(long long literal) : v_(literal), p_(0) {}  // NOLINT: Eigen literals

  static Zp bound(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    Zp z;
    z.v_ = r;
    z.p_ = p;
    return z;
  }

  std::uint32_t modulus() const noexcept { return p_; }
  /// Canonical residue in [0, p); raw literal when unbound.
  long long residue() const noexcept { return v_; }
  bool is_zero() const noexcept { return p_ ? v_ == 0 : v_ == 0; }

  Zp inverse() const;

  friend Zp operator+(const Zp& a, const Zp& b) {
    const auto m = resolve(a, b);
    if (m == 0) return Zp(a.v_ + b.v_);
    return bound(a.reduced(m) + b.reduced(m), m);
  }
  friend Zp operator-(const Zp& a, const Zp& b) {
    const auto m = resolve(a, b);
    if (m == 0) return Zp(a.v_ - b.v_);
    return bound(a.reduced(m) - b.reduced(m), m);
  }
  friend Zp operator*(const Zp& a, const Zp& b) {
    const auto m = resolve(a, b);
    if (m == 0) return Zp(a.v_ * b.v_);
    return bound(static_cast<long long>((static_cast<std::uint64_t>(a.reduced(m)) *
                                         static_cast<std::uint64_t>(b.reduced(m))) % m),
                 m);
  }
  friend Zp operator/(const Zp& a, const Zp& b) { return a * b.inverse(); }
  friend Zp operator-(const Zp& a) {
    if (a.p_ == 0) return Zp(-a.v_);
    return bound(-a.v_, a.p_);
  }
  Zp& operator+=(const Zp& o) { return *this = *this + o; }
  Zp& operator-=(const Zp& o) { return *this = *this - o; }
  Zp& operator*=(const Zp& o) { return *this = *this * o; }
  Zp& operator/=(const Zp& o) { return *this = *this / o; }

  friend bool operator==(const Zp& a, const Zp& b) {
    const auto m = resolve(a, b);
    if (m == 0) return a.v_ == b.v_;
    return a.reduced(m) == b.reduced(m);
  }
  friend bool operator<(const Zp& a, const Zp& b) { return a.v_ < b.v_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static std::uint32_t resolve(const Zp& a, const Zp& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw Error(ErrorKind::FieldMismatch, "residues with different moduli");
    return a.p_ != 0 ? a.p_ : b.p_;
  }
  long long reduced(std::uint32_t m) const {
    if (p_ != 0) return v_;
    long long r = v_ % static_cast<long long>(m);
    return r < 0 ? r + m : r;
  }

  long long v_ = 0;
  std::uint32_t p_ = 0;
};

/// Field-aware construction, parsing and formatting for the supported
/// scalar types.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Field::Kind kind = Field::Kind::Rationals;
  static Rational make(const Field&, long long v) { return Rational(v); }
  static Rational parse(const Field& f, std::string_view text);
  static std::string format(const Rational& x) { return x.to_string(); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational inverse(const Rational& x);
  static bool less(const Rational& a, const Rational& b) { return a < b; }
};

template <>
struct ScalarTraits<Zp> {
  static constexpr Field::Kind kind = Field::Kind::Prime;
  static Zp make(const Field& f, long long v) { return Zp::bound(v, f.modulus()); }
  static Zp parse(const Field& f, std::string_view text);
  static std::string format(const Zp& x) { return x.to_string(); }
  static bool is_zero(const Zp& x) { return x.is_zero(); }
  static Zp inverse(const Zp& x) { return x.inverse(); }
  static bool less(const Zp& a, const Zp& b) { return a.residue() < b.residue(); }
};

template <class S>
S scalar(const Field& f, long long v) {
  return ScalarTraits<S>::make(f, v);
}

/// Throws FieldMismatch if `f` cannot carry scalars of type S.
template <class S>
void require_field(const Field& f) {
  if (f.kind() != ScalarTraits<S>::kind)
    throw Error(ErrorKind::FieldMismatch, "field " + f.to_string() + " does not match scalar type");
}

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.to_string(); }

}  // namespace xprod

namespace Eigen {

template <>
struct NumTraits<xprod::Rational> : GenericNumTraits<xprod::Rational> {
  using Real = xprod::Rational;
  using NonInteger = xprod::Rational;
  using Literal = xprod::Rational;
  using Nested = xprod::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  // Exact type: stream output needs no precision setting.
  static constexpr int digits10() { return 0; }
};

template <>
struct NumTraits<xprod::Zp> : GenericNumTraits<xprod::Zp> {
  using Real = xprod::Zp;
  using NonInteger = xprod::Zp;
  using Literal = xprod::Zp;
  using Nested = xprod::Zp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static constexpr int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // XPROD_SCALAR_HPP
