#include "qmoment/scalar.hpp"

#include "qmoment/errors.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace qmoment {

namespace {

using boost::multiprecision::mpz_int;

mpz_int pow10_int(long k) {
  mpz_int r = 1;
  for (long i = 0; i < k; ++i) r *= 10;
  return r;
}

Rational parse_decimal(const std::string& s) {
  size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number: '" + s + "'");
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw std::invalid_argument("malformed number: '" + s + "'");
    ++pos;
    const std::string rest = s.substr(pos);
    if (rest.empty()) throw std::invalid_argument("malformed number: '" + s + "'");
    size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number: '" + s + "'");
    }
    if (used != rest.size() || exponent > 100000 || exponent < -100000) {
      throw std::invalid_argument("malformed number: '" + s + "'");
    }
  }
  const auto nonzero = digits.find_first_not_of('0');
  // mpz_int reads a leading zero as an octal prefix.
  mpz_int numerator(nonzero == std::string::npos ? std::string("0") : digits.substr(nonzero));
  const long scale = exponent - fraction_digits;
  Rational r = scale >= 0 ? Rational(numerator * pow10_int(scale)) : Rational(numerator, pow10_int(-scale));
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t\n\r");
  const auto last = s.find_last_not_of(" \t\n\r");
  if (first == std::string::npos) throw std::invalid_argument("empty number");
  s = s.substr(first, last - first + 1);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  const Rational num = parse_decimal(s.substr(0, slash));
  const Rational den = parse_decimal(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return num / den;
}

Rational to_rational(const Real& x) {
  if (!x.is_finite()) throw std::invalid_argument("cannot convert a non-finite value to a rational");
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x.get());
  Rational r(q);
  mpq_clear(q);
  return r;
}

Real to_real(const Rational& x, Precision p) {
  Real r(p);
  mpfr_set_q(r.get(), x.backend().data(), MPFR_RNDN);
  return r;
}

Scalar::Scalar(long value) : value_(value), text_(std::to_string(value)) {}

Scalar::Scalar(double value) : value_(to_rational(Real(value, Precision{64}))) {}

Scalar::Scalar(Rational value) : value_(std::move(value)) {}

Scalar::Scalar(const Real& value) : value_(to_rational(value)) {}

Scalar Scalar::parse(std::string_view text) {
  Scalar s(parse_rational(text));
  std::string t(text);
  const auto first = t.find_first_not_of(" \t\n\r");
  const auto last = t.find_last_not_of(" \t\n\r");
  s.text_ = t.substr(first, last - first + 1);
  return s;
}

std::string Scalar::text() const {
  if (!text_.empty()) return text_;
  // Terminating decimals print as decimals; everything else as p/q.
  mpz_int den = boost::multiprecision::denominator(value_);
  long twos = 0;
  long fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value_.str();
  const long k = twos > fives ? twos : fives;
  const mpz_int scaled = boost::multiprecision::numerator(value_) * pow10_int(k) /
                         boost::multiprecision::denominator(value_);
  if (scaled == 0) return "0";
  const bool negative = scaled < 0;
  std::string digits = mpz_int(boost::multiprecision::abs(scaled)).str();
  long exponent = -k;  // value = digits * 10^exponent
  while (digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    ++exponent;
  }
  const long size = static_cast<long>(digits.size());
  std::string out;
  if (exponent >= 0 && exponent + size <= 21) {
    out = digits + std::string(static_cast<size_t>(exponent), '0');
  } else if (exponent < 0 && exponent + size > -6) {
    if (exponent + size > 0) {
      out = digits.substr(0, static_cast<size_t>(exponent + size)) + "." +
            digits.substr(static_cast<size_t>(exponent + size));
    } else {
      out = "0." + std::string(static_cast<size_t>(-(exponent + size)), '0') + digits;
    }
  } else {
    // scientific: d.ddd e(exponent + size - 1)
    out = digits.substr(0, 1);
    if (size > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exponent + size - 1);
  }
  return negative ? "-" + out : out;
}

QParam::QParam(Scalar q) : q_(std::move(q)) {
  if (!(q_.exact() > 0) || !(q_.exact() < 1)) {
    throw DomainError("q must lie in the open interval (0, 1), got " + q_.text());
  }
}

}  // namespace qmoment
