#pragma once

// Gauss-Legendre quadrature at working precision, used by the classical
// moment and Krein integral evaluators. Integrals over (0, infinity) are
// split into decades [10^k, 10^(k+1)] and integrated in u = ln t, where the
// integrands in this library are smooth and localized.

#include <functional>
#include <vector>

#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"

namespace qmoment {

struct GaussLegendreRule {
  std::vector<Real> nodes;    ///< on [-1, 1]
  std::vector<Real> weights;
};

/// The n-point rule at precision `p`; rules are computed once and shared.
const GaussLegendreRule& gauss_legendre(int n, Precision p);

using RealMap = std::function<Real(const Real&)>;

/// Integral of g over [a, b]. Rule orders 16, 32, 64, 128 are tried in turn
/// until two successive estimates agree within max(tol |I|, abs_tol); failing
/// that the interval is bisected.
Real integrate(const RealMap& g, const Real& a, const Real& b, const PrecisionContext& ctx, const Real& abs_tol);

struct DecadeIntegral {
  Real value;
  long first_decade = 0;  ///< k of the lowest decade [10^k, 10^(k+1)] included
  long last_decade = 0;
  std::vector<Real> per_decade;
};

/// Integral of h(t) dt over (0, infinity). The decade with the largest
/// contribution is located among k in [-40, 40]; decades are then added
/// outward until two consecutive ones on each side fall below tol times the
/// running total.
DecadeIntegral integrate_half_line(const RealMap& h, const PrecisionContext& ctx);

/// Integral of h(t) dt over [t0, t1] (0 < t0 <= t1), decade by decade.
DecadeIntegral integrate_decades(const RealMap& h, const Real& t0, const Real& t1, const PrecisionContext& ctx);

}  // namespace qmoment
