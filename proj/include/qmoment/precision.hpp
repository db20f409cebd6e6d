#pragma once

#include "qmoment/real.hpp"

namespace qmoment {

/// Working precision and truncation policy for one computation.
///
/// `digits` is the number of decimal digits the caller wants to trust; the
/// arithmetic runs a few guard bits wider. `tol` is the relative truncation
/// tolerance used by every series, product and quadrature stop rule and
/// defaults to 10^(10 - digits).
class PrecisionContext {
 public:
  static constexpr int kDefaultDigits = 50;
  static constexpr long kDefaultMaxTerms = 20000;
  static constexpr mpfr_prec_t kGuardBits = 32;

  explicit PrecisionContext(int digits = kDefaultDigits, long max_terms = kDefaultMaxTerms);
  PrecisionContext(int digits, long max_terms, const Real& tol);

  int digits() const { return digits_; }
  long max_terms() const { return max_terms_; }
  const Real& tol() const { return tol_; }

  /// Binary precision of intermediate values.
  Precision precision() const { return precision_; }

  /// Same digits and tolerance, computed with `bits` more working bits.
  PrecisionContext widened(mpfr_prec_t bits) const;

  Real real(long v) const { return Real(v, precision_); }
  Real real(int v) const { return Real(static_cast<long>(v), precision_); }
  Real real(double v) const { return Real(v, precision_); }
  Real parse(std::string_view text) const { return Real::parse(text, precision_); }
  /// `x` extended (never rounded down) to the working precision.
  Real lift(const Real& x) const;

  /// 10^(-digits/2): tolerance for total-mass checks.
  Real normalization_tol() const;

 private:
  int digits_;
  long max_terms_;
  Precision precision_;
  Real tol_;
};

}  // namespace qmoment
