#pragma once

#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"

namespace qmoment {

/// ln Gamma(x) for x > 0. The argument is shifted upward until it reaches
/// max(digits / 2, 10) and the Stirling series is summed there; Bernoulli
/// numbers come from zeta(2k). Throws DomainError for x <= 0.
Real log_gamma(const Real& x, const PrecisionContext& ctx);

/// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
/// P comes from its power series when x < a + 1 and Q from the Lentz
/// continued fraction otherwise; the other is the complement. Tails far in
/// either direction therefore keep full relative accuracy.
struct IncompleteGamma {
  Real p;
  Real q;
};
IncompleteGamma regularized_gamma(const Real& a, const Real& x, const PrecisionContext& ctx);

}  // namespace qmoment
