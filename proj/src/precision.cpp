#include "qmoment/precision.hpp"

#include <stdexcept>
#include <string>

namespace qmoment {

PrecisionContext::PrecisionContext(int digits, long max_terms)
    : PrecisionContext(digits, max_terms,
                       pow10(10 - (digits > 0 ? digits : 1),
                             Precision::from_digits(digits > 0 ? digits : 1).widened(kGuardBits))) {}

PrecisionContext::PrecisionContext(int digits, long max_terms, const Real& tol)
    : digits_(digits), max_terms_(max_terms) {
  if (digits < 15) throw std::invalid_argument("digits must be at least 15, got " + std::to_string(digits));
  if (max_terms < 64) throw std::invalid_argument("max_terms must be at least 64");
  if (!(tol > 0) || !(tol < 1)) throw std::invalid_argument("tol must lie in (0, 1)");
  precision_ = Precision::from_digits(digits).widened(kGuardBits);
  tol_ = tol.with_precision(precision_);
}

PrecisionContext PrecisionContext::widened(mpfr_prec_t bits) const {
  PrecisionContext copy(*this);
  copy.precision_ = precision_.widened(bits);
  copy.tol_ = tol_.with_precision(copy.precision_);
  return copy;
}

Real PrecisionContext::lift(const Real& x) const {
  if (x.precision() >= precision_) return x;
  return x.with_precision(precision_);
}

Real PrecisionContext::normalization_tol() const { return pow10(-(digits_ / 2), precision_); }

}  // namespace qmoment
