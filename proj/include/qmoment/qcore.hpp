#pragma once

// q-series primitives: q-numbers, q-shifted factorials, the q-exponential,
// both sides of Euler's product/series identity, the growth estimate for
// the Euler product, and Jackson q-integrals.

#include <functional>
#include <vector>

#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"
#include "qmoment/scalar.hpp"

namespace qmoment {

/// A real function of one positive real argument, evaluated under a context.
using RealFunction = std::function<Real(const Real&, const PrecisionContext&)>;

/// [n]_q = (1 - q^n) / (1 - q) = 1 + q + ... + q^(n-1).
Real q_number(long n, const QParam& q, const PrecisionContext& ctx);

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
Real q_factorial(long n, const QParam& q, const PrecisionContext& ctx);

/// (a; q)_j = prod_{s=0}^{j-1} (1 - a q^s).
Real q_pochhammer(const Real& a, const QParam& q, long j, const PrecisionContext& ctx);

/// (a; q)_infinity, truncated once the remaining factors are within tol of 1.
Real q_pochhammer_inf(const Real& a, const QParam& q, const PrecisionContext& ctx);

/// e_q(t) = prod_{j>=0} (1 - t (1 - q) q^j)^(-1).
/// Throws PoleError when a factor falls below tol^2 in magnitude.
Real e_q(const Real& t, const QParam& q, const PrecisionContext& ctx);

/// prod_{j>=0} (1 + q^j t).
Real euler_product(const Real& t, const QParam& q, const PrecisionContext& ctx);

/// sum_{j>=0} q^(j(j-1)/2) t^j / (q; q)_j. For negative t the alternating
/// series cancels; the sum is recomputed with enough extra bits to absorb it.
Real euler_series(const Real& t, const QParam& q, const PrecisionContext& ctx);

/// exp(ln^2 t / (2 ln(1/q)) + ln(t) / 2): the growth profile of the Euler
/// product for large t.
Real zeng_estimate(const Real& t, const QParam& q, const PrecisionContext& ctx);

/// Empirical constants C1, C2 with C1 <= euler_product(t) / zeng_estimate(t) <= C2.
struct ZengFit {
  struct Sample {
    Real t;
    Real ratio;
  };
  std::vector<Sample> samples;  ///< log-spaced over [t_lo, t_hi]
  Real c1;                      ///< min ratio over all samples
  Real c2;                      ///< max ratio over all samples
  Real lower_c1, lower_c2;      ///< over t <= sqrt(t_lo t_hi)
  Real upper_c1, upper_c2;      ///< over t >= sqrt(t_lo t_hi)
  /// Upper-half interval contained in [lower_c1 / 1.5, 1.5 lower_c2].
  bool upper_within_widened_lower = false;
};
ZengFit fit_zeng_constants(const QParam& q, const Real& t_lo, const Real& t_hi, int points,
                           const PrecisionContext& ctx);

/// Jackson integral over [a, b]: int_0^b - int_0^a with
/// int_0^x f d_q t = x (1 - q) sum_{j>=0} f(x q^j) q^j.
Real jackson_integral(const RealFunction& f, const Real& a, const Real& b, const QParam& q,
                      const PrecisionContext& ctx);

/// Improper integral over [0, infinity): (1 - q) sum_{j in Z} f(q^j) q^j.
Real improper_q_integral(const RealFunction& f, const QParam& q, const PrecisionContext& ctx);

/// q^j at working precision for any integer j.
Real q_power(const QParam& q, long j, const PrecisionContext& ctx);

}  // namespace qmoment
