#pragma once

// Adaptive summation of one- and two-sided series at working precision.
//
// Stop rule: a side of a series is closed once k_stop consecutive terms are
// each below tol/2 * (1 - r) times the running scale, where r is the observed
// geometric decay rate over the last k_stop terms and the scale is the larger
// of |partial sum| and 2^-bits * (largest term seen). The estimated remainder
// of a closed side is then below tol/2 of the sum.

#include <functional>
#include <vector>

#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"

namespace qmoment {

using IndexedTerm = std::function<Real(long)>;

struct SeriesSum {
  Real sum;
  long terms = 0;
  Real tail_bound;
  Real max_term;
};

/// Sums term(start) + term(start + 1) + ... .
SeriesSum sum_series(const IndexedTerm& term, long start, const PrecisionContext& ctx, int k_stop = 8);

struct BilateralOptions {
  long scan_radius = 64;
  long scan_radius_max = 4096;
  int k_stop = 8;
};

/// Result of a sum over all integers. Terms are kept so that callers can
/// re-use them (masses of a lattice distribution, residual tables).
struct BilateralSum {
  Real sum;          ///< sum in increasing index order over [j_lo, j_hi]
  long j_lo = 0;
  long j_hi = -1;
  long j_peak = 0;   ///< index of the largest |term|
  std::vector<Real> terms;
  Real tail_bound;   ///< estimated size of the two truncated tails
  Real max_term;

  long evaluations() const { return j_hi - j_lo + 1; }
  const Real& term(long j) const { return terms.at(static_cast<size_t>(j - j_lo)); }
};

/// Sums term(j) over j in Z. The largest term is located by scanning a
/// window around 0 (widened while the maximum sits on its edge); summation
/// then proceeds outward from the peak until both sides meet the stop rule.
/// Throws NonConvergence when more than ctx.max_terms() terms are needed.
BilateralSum sum_bilateral(const IndexedTerm& term, const PrecisionContext& ctx, const BilateralOptions& options = {});

}  // namespace qmoment
