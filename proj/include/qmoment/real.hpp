#pragma once

// Arbitrary-precision real numbers backed by MPFR.
//
// Every Real carries its own binary precision. Arithmetic between two Reals
// produces a result at the larger of the two precisions, and compound
// assignment raises the target precision when the right-hand side is wider.
// There is no process-wide default precision: values are built from a
// Precision (usually obtained from a PrecisionContext).

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace qmoment {

struct Precision {
  mpfr_prec_t bits = 64;

  /// Smallest binary precision holding `digits` significant decimal digits.
  static Precision from_digits(int digits);
  int digits10() const;

  Precision widened(mpfr_prec_t extra) const { return Precision{bits + extra}; }

  friend bool operator==(Precision, Precision) = default;
  friend auto operator<=>(Precision, Precision) = default;
};

inline Precision max(Precision a, Precision b) { return a.bits >= b.bits ? a : b; }

class Real {
 public:
  explicit Real(Precision p = Precision{});
  Real(long value, Precision p);
  Real(int value, Precision p) : Real(static_cast<long>(value), p) {}
  Real(double value, Precision p);

  /// Parses a decimal literal ("0.5", "-1.25e-3", "inf" is rejected).
  /// Throws std::invalid_argument on malformed text.
  static Real parse(std::string_view text, Precision p);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return Precision{mpfr_get_prec(value_)}; }

  /// Copy rounded (or exactly extended) to precision `p`.
  Real with_precision(Precision p) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  template <std::integral I>
  Real& operator+=(I rhs) {
    mpfr_add_si(value_, value_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator-=(I rhs) {
    mpfr_sub_si(value_, value_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator*=(I rhs) {
    mpfr_mul_si(value_, value_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator/=(I rhs) {
    mpfr_div_si(value_, value_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  Real& operator+=(double rhs) {
    mpfr_add_d(value_, value_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(double rhs) {
    mpfr_sub_d(value_, value_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(double rhs) {
    mpfr_mul_d(value_, value_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(double rhs) {
    mpfr_div_d(value_, value_, rhs, MPFR_RNDN);
    return *this;
  }

  Real operator-() const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(value_, MPFR_RNDZ); }

  /// Base-2 exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
  long exponent2() const;

  /// Scientific notation with `digits` significant digits, e.g. "1.25e-3".
  std::string to_string(int digits) const;

  /// Decimal text that re-parses to this exact value at this precision.
  std::string to_exact_string() const;

 private:
  mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator+(Real a, S b) {
  a += b;
  return a;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator+(S a, Real b) {
  b += a;
  return b;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator-(Real a, S b) {
  a -= b;
  return a;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator-(S a, const Real& b) {
  Real r(b.precision());
  if constexpr (std::integral<S>) {
    mpfr_si_sub(r.get(), static_cast<long>(a), b.get(), MPFR_RNDN);
  } else {
    mpfr_d_sub(r.get(), static_cast<double>(a), b.get(), MPFR_RNDN);
  }
  return r;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator*(Real a, S b) {
  a *= b;
  return a;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator*(S a, Real b) {
  b *= a;
  return b;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator/(Real a, S b) {
  a /= b;
  return a;
}
template <typename S>
  requires std::integral<S> || std::floating_point<S>
Real operator/(S a, const Real& b) {
  Real r(b.precision());
  if constexpr (std::integral<S>) {
    mpfr_si_div(r.get(), static_cast<long>(a), b.get(), MPFR_RNDN);
  } else {
    mpfr_d_div(r.get(), static_cast<double>(a), b.get(), MPFR_RNDN);
  }
  return r;
}

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);

template <std::integral I>
bool operator==(const Real& a, I b) {
  return mpfr_cmp_si(a.get(), static_cast<long>(b)) == 0;
}
template <std::integral I>
std::partial_ordering operator<=>(const Real& a, I b) {
  const int c = mpfr_cmp_si(a.get(), static_cast<long>(b));
  return c <=> 0;
}
inline bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) == 0; }
inline std::partial_ordering operator<=>(const Real& a, double b) {
  const int c = mpfr_cmp_d(a.get(), b);
  return c <=> 0;
}

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real log10(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real ceil(const Real& x);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

Real const_pi(Precision p);
/// Riemann zeta at a positive integer.
Real zeta(unsigned long n, Precision p);
/// 10^k exactly rounded.
Real pow10(long k, Precision p);

}  // namespace qmoment
