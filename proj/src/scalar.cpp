#include "xprod/scalar.hpp"

#include <charconv>

namespace xprod {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotCoassociative: return "NotCoassociative";
    case ErrorKind::CounitFail: return "CounitFail";
    case ErrorKind::UnitNotGrouplike: return "UnitNotGrouplike";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::UnitMismatch: return "UnitMismatch";
    case ErrorKind::NotAlgebraMap: return "NotAlgebraMap";
    case ErrorKind::SplitFail: return "SplitFail";
    case ErrorKind::RoundTripMismatch: return "RoundTripMismatch";
    case ErrorKind::PremiseFail: return "PremiseFail";
    case ErrorKind::NotAlgebraMapResult: return "NotAlgebraMapResult";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::InternalMismatch: return "InternalMismatch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string label,
             std::vector<std::size_t> witness)
    : std::runtime_error(std::string(xprod::to_string(kind)) + ": " + message),
      kind_(kind),
      label_(std::move(label)),
      witness_(std::move(witness)) {}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31))
    throw Error(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " exceeds 2^31");
  if (!xprod::is_prime(p)) throw Error(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " is not prime");
  return Field(Kind::Prime, static_cast<std::uint32_t>(p));
}

std::string Field::to_string() const {
  if (kind_ == Kind::Rationals) return "Q";
  return "F_" + std::to_string(p_);
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
  q_ = den < 0 ? Rep(-boost::multiprecision::cpp_int(num), -boost::multiprecision::cpp_int(den)) : Rep(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_.is_zero()) throw Error(ErrorKind::Precondition, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  const auto num = boost::multiprecision::numerator(q_);
  const auto den = boost::multiprecision::denominator(q_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw Error(ErrorKind::Parse, "malformed scalar \"" + std::string(whole) + "\"");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw Error(ErrorKind::Parse, "malformed scalar \"" + std::string(whole) + "\"");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

std::pair<BigInt, BigInt> parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_integer(text, text), BigInt(1)};
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in \"" + std::string(text) + "\"");
  return {num, den};
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto [num, den] = parse_fraction(text);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(Rep(num, den));
}

Rational ScalarTraits<Rational>::parse(const Field& f, std::string_view text) {
  require_field<Rational>(f);
  return Rational::parse(text);
}

Rational ScalarTraits<Rational>::inverse(const Rational& x) { return Rational(1) / x; }

Zp Zp::inverse() const {
  if (p_ == 0) throw Error(ErrorKind::FieldMismatch, "inverse of an unbound residue");
  if (v_ == 0) throw Error(ErrorKind::Precondition, "division by zero");
  // Fermat: v^(p-2)
  std::uint64_t base = static_cast<std::uint64_t>(v_), result = 1, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return bound(static_cast<long long>(result), p_);
}

Zp ScalarTraits<Zp>::parse(const Field& f, std::string_view text) {
  require_field<Zp>(f);
  auto [num, den] = parse_fraction(text);
  const BigInt p = f.modulus();
  BigInt n = num % p;
  BigInt d = den % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  if (d == 0)
    throw Error(ErrorKind::Parse, "denominator of \"" + std::string(text) + "\" vanishes mod " +
                                      std::to_string(f.modulus()));
  return Zp::bound(n.convert_to<long long>(), f.modulus()) /
         Zp::bound(d.convert_to<long long>(), f.modulus());
}

}  // namespace xprod
