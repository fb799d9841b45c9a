#include "ifsaddr/rational.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <system_error>

#include "ifsaddr/error.hpp"

namespace ifsaddr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::DegenerateAffineHull: return "DegenerateAffineHull";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PointOutsideOmega: return "PointOutsideOmega";
    case ErrorCode::MissingCertificate: return "MissingCertificate";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoEllFound: return "NoEllFound";
    case ErrorCode::UnsortedDigits: return "UnsortedDigits";
    case ErrorCode::TooFewScales: return "TooFewScales";
    case ErrorCode::BadProbabilityVector: return "BadProbabilityVector";
    case ErrorCode::IrrationalInput: return "IrrationalInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
  Rational q(v);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

namespace {

// Decimal literal -> rational. Accepts [sign] digits [. digits] [e [sign] digits].
std::optional<Rational> parse_decimal(std::string_view s, int* significant) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string mantissa;
  long exponent = 0;
  bool any_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    mantissa.push_back(s[i]);
    any_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      mantissa.push_back(s[i]);
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    long e = 0;
    const char* begin = s.data() + i;
    if (i < s.size() && s[i] == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), e);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    exponent += e;
    i = s.size();
  }
  if (i != s.size()) return std::nullopt;

  const auto first = mantissa.find_first_not_of('0');
  if (significant) {
    if (first == std::string::npos) {
      *significant = 0;
    } else {
      const auto last = mantissa.find_last_not_of('0');
      *significant = static_cast<int>(last - first + 1);
    }
  }
  if (exponent > 4000 || exponent < -4000) return std::nullopt;
  mpz_class num(first == std::string::npos ? std::string("0") : mantissa.substr(first), 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(num, scale) : Rational(num * scale, 1);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Rational> decimal_rational(double v, int max_significant) {
  if (!std::isfinite(v)) return std::nullopt;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::nullopt;
  int significant = 0;
  auto q = parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)), &significant);
  if (!q || significant > max_significant) return std::nullopt;
  return q;
}

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = parse_decimal(trim(s.substr(0, slash)), nullptr);
    const auto den = parse_decimal(trim(s.substr(slash + 1)), nullptr);
    if (!num || !den) throw Error(ErrorCode::InvalidArgument, "malformed fraction '" + std::string(s) + "'");
    if (*den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(s) + "'");
    Rational q = *num / *den;
    q.canonicalize();
    return q;
  }
  auto q = parse_decimal(s, nullptr);
  if (!q) throw Error(ErrorCode::InvalidArgument, "malformed number '" + std::string(s) + "'");
  return *q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

RationalPoint exact_point(std::span<const double> x) {
  RationalPoint out;
  out.reserve(x.size());
  for (double v : x) out.push_back(exact_rational(v));
  return out;
}

std::vector<double> to_doubles(std::span<const Rational> x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& q : x) out.push_back(q.get_d());
  return out;
}

}  // namespace ifsaddr
