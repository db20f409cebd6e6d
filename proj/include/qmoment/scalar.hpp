#pragma once

// Exactly-known parameters.
//
// Model parameters (q, lambda, alpha, ...) enter as decimal text or small
// integers. A Scalar keeps them as exact rationals so that closed-form
// threshold rules compare without rounding, and so that the value can be
// rounded afresh at whatever working precision a computation uses.

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"

namespace qmoment {

using Rational = boost::multiprecision::mpq_rational;

/// Parses "0.25", "-3", "1.5e-2" or "3/4" into an exact rational.
Rational parse_rational(std::string_view text);

/// Exact rational value of a binary floating-point number.
Rational to_rational(const Real& x);

/// Correctly rounded conversion at precision `p`.
Real to_real(const Rational& x, Precision p);

class Scalar {
 public:
  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(int value) : Scalar(static_cast<long>(value)) {}  // NOLINT
  /// Exact binary value of `value`.
  Scalar(double value);  // NOLINT(google-explicit-constructor)
  explicit Scalar(Rational value);
  explicit Scalar(const Real& value);

  static Scalar parse(std::string_view text);

  const Rational& exact() const { return value_; }
  Real value(const PrecisionContext& ctx) const { return to_real(value_, ctx.precision()); }
  Real value(Precision p) const { return to_real(value_, p); }

  /// The text it was parsed from, or a canonical rendering.
  std::string text() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  Rational value_{0};
  std::string text_;
};

/// The lattice base q, restricted to the open interval (0, 1).
class QParam {
 public:
  explicit QParam(Scalar q);
  explicit QParam(std::string_view text) : QParam(Scalar::parse(text)) {}
  explicit QParam(double q) : QParam(Scalar(q)) {}

  Real value(const PrecisionContext& ctx) const { return q_.value(ctx); }
  Real value(Precision p) const { return q_.value(p); }
  const Rational& exact() const { return q_.exact(); }
  const Scalar& scalar() const { return q_; }
  std::string text() const { return q_.text(); }

  friend bool operator==(const QParam& a, const QParam& b) { return a.q_ == b.q_; }

 private:
  Scalar q_;
};

}  // namespace qmoment
