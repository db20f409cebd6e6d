#include "qmoment/witness.hpp"

#include <cmath>
#include <string>

#include "qmoment/errors.hpp"
#include "qmoment/moments.hpp"

namespace qmoment {

Real euler_coeff(long j, long m, const QParam& q, const PrecisionContext& ctx) {
  if (j < 0) throw DomainError("euler_coeff: j must be non-negative");
  if (m < 1) throw DomainError("euler_coeff: m must be positive");
  const Real qv = q.value(ctx);
  const Real qm = pow(qv, m);
  Real poch = ctx.real(1L);
  Real qms = ctx.real(1L);
  for (long s = 1; s <= j; ++s) {
    qms *= qm;
    poch *= 1 - qms;
  }
  Real c = pow(qv, m * j * (j + 1) / 2) / poch;
  return j % 2 == 0 ? c : -c;
}

int required_digits(long m, long N, const QParam& q) {
  const double log10_inv_q = -std::log10(q.value(Precision{128}).to_double());
  return 30 + static_cast<int>(std::ceil(0.5 * static_cast<double>(m) * static_cast<double>((N + 1) * (N + 1)) *
                                         log10_inv_q));
}

PhiEvaluation phi_m_series(long m, long n, const QParam& q, const PrecisionContext& ctx) {
  if (m < 1) throw DomainError("phi_m: m must be positive");
  if (n < 0) throw DomainError("phi_m: n must be non-negative");
  const Real qv = q.value(ctx);
  PhiEvaluation out;
  out.m = m;
  out.n = n;
  out.zero_factor = n + 1;

  // Product form: factor j is 1 - q^(m (j - n - 1)); the exponent is an
  // integer, so the vanishing factor is recognised exactly.
  Real product = ctx.real(1L);
  for (long j = 1;; ++j) {
    const long e = m * (j - n - 1);
    if (e == 0) {
      product = ctx.real(0L);
      continue;
    }
    const Real qe = pow(qv, e);
    if (e > 0 && qe < ctx.tol()) break;
    product *= 1 - qe;
  }
  out.product_value = std::move(product);

  // Series form: sum_j c_j z^j with z = q^(-m (n+1)).
  const Real qm = pow(qv, m);
  Real poch = ctx.real(1L);
  Real qms = ctx.real(1L);
  Real sum = ctx.real(0L);
  out.max_term = ctx.real(0L);
  Real eps = ctx.tol();
  mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(ctx.precision().bits), MPFR_RNDN);
  int quiet = 0;
  for (long j = 0;; ++j) {
    if (j > 0) {
      qms *= qm;
      poch *= 1 - qms;
    }
    if (j >= ctx.max_terms()) throw NonConvergence("phi_m series did not settle");
    const long e = m * j * (j + 1) / 2 - m * (n + 1) * j;
    Real term = pow(qv, e) / poch;
    if (j % 2 == 1) term = -term;
    sum += term;
    out.partial_sums.push_back(sum);
    if (abs(term) > out.max_term) out.max_term = abs(term);
    if (j > n + 1 && abs(term) <= eps * out.max_term) {
      if (++quiet >= 8) break;
    } else {
      quiet = 0;
    }
  }
  out.relative_residual = abs(sum) / out.max_term;
  return out;
}

PhiEvaluation phi_m_at_lattice(long m, long n, const QParam& q, const PrecisionContext& ctx) {
  const int needed = required_digits(m, n, q);
  if (ctx.digits() < needed) {
    throw PrecisionExhausted("phi_m at q^(-m(n+1)) requires >= " + std::to_string(needed) + " digits", needed);
  }
  return phi_m_series(m, n, q, ctx);
}

Real alpha_max(const QDensity& f, long m, long J, const PrecisionContext& ctx) {
  if (m < 1) throw DomainError("alpha_max: m must be positive");
  if (J < 1) throw DomainError("alpha_max: J must be at least 1");
  const Real qv = f.q().value(ctx);
  const Real qm = pow(qv, m);
  Real poch = ctx.real(1L);
  Real qms = ctx.real(1L);
  Real best(ctx.precision());
  long binding = 1;
  for (long j = 1; j <= J; ++j) {
    qms *= qm;
    poch *= 1 - qms;
    if (j % 2 == 0) continue;
    const Real bound = eval_lattice(f, -m * j, ctx) * poch / pow(qv, m * j * (j + 1) / 2);
    if (j == 1 || bound < best) {
      best = bound;
      binding = j;
    }
  }
  if (!(best > ctx.tol())) {
    throw InfeasibleWitness("no admissible alpha: the odd-j constraint at j = " + std::to_string(binding) +
                            " (lattice index " + std::to_string(-m * binding) + ") allows only " +
                            best.to_string(6));
  }
  return best;
}

WitnessPair build_witness(DensityPtr f, long m, const Real& alpha, long J, const PrecisionContext& ctx) {
  if (!f) throw DomainError("build_witness: missing base density");
  if (!(alpha > 0)) throw DomainError("build_witness: alpha must be positive");
  WitnessPair pair;
  pair.base = f;
  pair.m = m;
  pair.window = J;
  pair.alpha = ctx.lift(alpha);
  pair.alpha_max = alpha_max(*f, m, J, ctx);
  pair.witness = std::make_shared<const QDensity>(QDensity::composite(f, m, pair.alpha));
  pair.checked_lo = -m * J;
  if (const auto* t = f->as_table()) {
    pair.checked_hi = std::max(t->j_max, 0L);
  } else {
    pair.checked_hi = LatticeWindow{}.hi;
  }
  for (long j = pair.checked_lo; j <= pair.checked_hi; ++j) {
    const Real g = eval_lattice(*pair.witness, j, ctx);
    if (g < 0 && abs(g) > ctx.tol() * abs(eval_lattice(*f, j, ctx))) {
      throw NegativeDensity("witness is negative (" + g.to_string(10) + ") at lattice index " + std::to_string(j), j);
    }
  }
  pair.max_residual = ctx.real(0L);
  return pair;
}

WitnessPair verify_moment_equality(WitnessPair pair, long N, const PrecisionContext& ctx) {
  if (N < 0) throw DomainError("verify_moment_equality: N must be non-negative");
  const QParam& q = pair.base->q();
  const int needed = required_digits(pair.m, N, q);
  if (ctx.digits() < needed) {
    throw PrecisionExhausted("verifying moments up to n = " + std::to_string(N) + " requires >= " +
                                 std::to_string(needed) + " digits (have " + std::to_string(ctx.digits()) + ")",
                             needed);
  }
  const Real scale = ctx.lift(pair.alpha) * (1 - q.value(ctx));
  pair.residuals.clear();
  pair.max_residual = ctx.real(0L);
  for (long n = 0; n <= N; ++n) {
    ResidualRow row;
    row.n = n;
    row.base_moment = q_moment(*pair.base, n, ctx).value;
    row.witness_moment = q_moment_lattice_sum(*pair.witness, n, ctx).value;
    const PhiEvaluation phi = phi_m_series(pair.m, n, q, ctx);
    row.series_max_term = phi.max_term;
    row.series_residual = phi.relative_residual;
    row.direct_residual = abs(row.witness_moment - row.base_moment) / (scale * phi.max_term);
    pair.max_residual = max(pair.max_residual, max(row.series_residual, row.direct_residual));
    pair.residuals.push_back(std::move(row));
  }
  pair.verified_to = N;
  pair.accepted = pair.max_residual < pow10(-WitnessPair::kGuardDigits, ctx.precision());
  return pair;
}

}  // namespace qmoment
