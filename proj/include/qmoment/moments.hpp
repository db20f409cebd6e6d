#pragma once

#include <vector>

#include "qmoment/lattice.hpp"
#include "qmoment/precision.hpp"
#include "qmoment/qcore.hpp"
#include "qmoment/real.hpp"

namespace qmoment {

struct QMomentReport {
  long n = 0;
  Real value;
  long terms_used = 0;
  Real tail_bound;
  long j_peak = 0;
};

/// m_q(n; f) = (1 - q) sum_j f(q^j) q^(j (n+1)).
///
/// Callable densities are summed bilaterally outward from the largest term;
/// tables exactly over their window. A Composite density's moment is the
/// base moment plus alpha (1 - q) times the phi_m series (which vanishes
/// analytically); q_moment_lattice_sum gives the direct route.
/// Throws NegativeDensity when a summed lattice value is negative.
QMomentReport q_moment(const QDensity& f, long n, const PrecisionContext& ctx);

/// The same sum taken straight over the lattice values, signs unchecked.
QMomentReport q_moment_lattice_sum(const QDensity& f, long n, const PrecisionContext& ctx);

/// psi(q^(-k)) = sum_j f(q^(-j)) q^(-j k), summed as two one-sided series
/// starting at j = 0 (so in a different order from q_moment).
Real psi_eval(const QDensity& f, long k, const PrecisionContext& ctx);

struct GrowthEstimate {
  struct Sample {
    long n;
    Real moment;
    Real a_n;  ///< ln m_q(n) / n^2
  };
  std::vector<Sample> samples;
  Real A_hat;        ///< max a_n over n in [n_max / 2, n_max]
  long n_used = 0;
  long window_lo = 0;
  long window_hi = 0;
};

/// a_n for n = 1..n_max (orders with zero moment are skipped). Lattice values
/// are evaluated once and shared across orders. Requires n_max >= 8.
GrowthEstimate growth_rate(const QDensity& f, long n_max, const PrecisionContext& ctx);

/// int_0^infinity t^n rho(t) dt by decade quadrature.
Real classical_moment(const RealFunction& rho, long n, const PrecisionContext& ctx);

}  // namespace qmoment
