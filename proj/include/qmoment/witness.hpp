#pragma once

// Two inequivalent q-densities with the same q-moments.
//
// Given f with f(q^(-m j)) >= C q^(m j (j+1) / 2), the density
//   g(q^(-m j)) = f(q^(-m j)) + alpha c_j,   c_j = (-1)^j q^(m j (j+1)/2) / (q^m; q^m)_j,
// and g = f elsewhere on the lattice, has m_q(n; g) = m_q(n; f) for every n,
// because sum_j c_j q^(-m (n+1) j) = phi_m(q^(-m (n+1))) and phi_m(z) =
// prod_{j>=1} (1 - q^(m j) z) has a zero factor at j = n + 1.

#include <vector>

#include "qmoment/lattice.hpp"
#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"
#include "qmoment/scalar.hpp"

namespace qmoment {

/// c_j = (-1)^j q^(m j (j+1) / 2) / (q^m; q^m)_j.
Real euler_coeff(long j, long m, const QParam& q, const PrecisionContext& ctx);

/// phi_m at z = q^(-m (n+1)), both as a product and as a series.
struct PhiEvaluation {
  long m = 1;
  long n = 0;
  Real product_value;              ///< exactly zero
  long zero_factor = 0;            ///< index of the vanishing factor (n + 1)
  std::vector<Real> partial_sums;  ///< S_0, S_1, ..., S_cutoff
  Real max_term;                   ///< largest |c_j z^j|
  Real relative_residual;          ///< |S_cutoff| / max_term
};

/// Throws PrecisionExhausted when ctx.digits() < required_digits(m, n, q).
PhiEvaluation phi_m_at_lattice(long m, long n, const QParam& q, const PrecisionContext& ctx);

/// phi_m_at_lattice without the precision guard.
PhiEvaluation phi_m_series(long m, long n, const QParam& q, const PrecisionContext& ctx);

/// 30 + ceil(0.5 m (N+1)^2 log10(1/q)).
int required_digits(long m, long N, const QParam& q);

/// Largest alpha keeping g non-negative on the odd constraint points
/// j = 1, 3, ..., <= J: min f(q^(-m j)) (q^m; q^m)_j / q^(m j (j+1)/2).
/// Throws InfeasibleWitness when that minimum is below tol.
Real alpha_max(const QDensity& f, long m, long J, const PrecisionContext& ctx);

struct ResidualRow {
  long n = 0;
  Real base_moment;       ///< m_q(n; f)
  Real witness_moment;    ///< m_q(n; g) by direct lattice summation
  Real series_max_term;   ///< largest |c_j q^(-m (n+1) j)|
  Real series_residual;   ///< |phi_m series| / max term
  Real direct_residual;   ///< |m_q(n; g) - m_q(n; f)| / (alpha (1 - q) max term)
};

struct WitnessPair {
  static constexpr long kDefaultWindow = 40;
  static constexpr int kGuardDigits = 10;

  DensityPtr base;
  DensityPtr witness;
  long m = 1;
  Real alpha;
  Real alpha_max;
  long window = kDefaultWindow;  ///< J
  long checked_lo = 0;           ///< non-negativity checked on [checked_lo, checked_hi]
  long checked_hi = 0;
  long verified_to = -1;
  Real max_residual;
  bool accepted = false;  ///< max_residual < 10^-guard
  std::vector<ResidualRow> residuals;
};

/// Builds g = Composite(f, m, alpha) and checks g >= 0 on [-m J, top], where
/// top is the table's upper end or 40 for closed-form densities.
/// Throws DomainError for alpha <= 0, InfeasibleWitness, or NegativeDensity.
WitnessPair build_witness(DensityPtr f, long m, const Real& alpha, long J, const PrecisionContext& ctx);

/// Checks m_q(n; g) = m_q(n; f) for n = 0..N. Throws PrecisionExhausted when
/// ctx.digits() < required_digits(m, N, q).
WitnessPair verify_moment_equality(WitnessPair pair, long N, const PrecisionContext& ctx);

}  // namespace qmoment
