#include "qmoment/qcore.hpp"

#include <string>

#include "qmoment/errors.hpp"
#include "qmoment/series.hpp"

namespace qmoment {

Real q_power(const QParam& q, long j, const PrecisionContext& ctx) { return pow(q.value(ctx), j); }

Real q_number(long n, const QParam& q, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("q_number: n must be non-negative");
  if (n == 0) return ctx.real(0L);
  const Real qv = q.value(ctx);
  return (1 - pow(qv, n)) / (1 - qv);
}

Real q_factorial(long n, const QParam& q, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("q_factorial: n must be non-negative");
  Real result = ctx.real(1L);
  for (long k = 1; k <= n; ++k) result *= q_number(k, q, ctx);
  return result;
}

Real q_pochhammer(const Real& a, const QParam& q, long j, const PrecisionContext& ctx) {
  if (j < 0) throw DomainError("q_pochhammer: j must be non-negative");
  const Real qv = q.value(ctx);
  Real result = ctx.real(1L);
  Real term = ctx.lift(a);  // a q^s
  for (long s = 0; s < j; ++s) {
    result *= 1 - term;
    term *= qv;
  }
  return result;
}

Real q_pochhammer_inf(const Real& a, const QParam& q, const PrecisionContext& ctx) {
  const Real qv = q.value(ctx);
  const Real threshold = ctx.tol() * (1 - qv);
  Real result = ctx.real(1L);
  Real term = ctx.lift(a);
  for (long s = 0;; ++s) {
    if (abs(term) < threshold) return result;
    if (s >= ctx.max_terms()) throw NonConvergence("q_pochhammer_inf: product did not settle");
    result *= 1 - term;
    if (result.is_zero()) return result;
    term *= qv;
  }
}

Real e_q(const Real& t, const QParam& q, const PrecisionContext& ctx) {
  const Real qv = q.value(ctx);
  const Real threshold = ctx.tol() * (1 - qv);
  const Real pole_tol = ctx.tol() * ctx.tol();
  Real term = ctx.lift(t) * (1 - qv);  // t (1 - q) q^j
  Real denominator = ctx.real(1L);
  for (long j = 0;; ++j) {
    if (abs(term) < threshold) break;
    if (j >= ctx.max_terms()) throw NonConvergence("e_q: product did not settle");
    const Real factor = 1 - term;
    if (abs(factor) < pole_tol) {
      throw PoleError("e_q: factor " + std::to_string(j) + " vanishes at t = " + t.to_string(20));
    }
    denominator *= factor;
    term *= qv;
  }
  return 1 / denominator;
}

Real euler_product(const Real& t, const QParam& q, const PrecisionContext& ctx) {
  const Real qv = q.value(ctx);
  const Real threshold = ctx.tol() * (1 - qv);
  Real term = ctx.lift(t);  // q^j t
  Real result = ctx.real(1L);
  for (long j = 0;; ++j) {
    if (abs(term) < threshold) return result;
    if (j >= ctx.max_terms()) throw NonConvergence("euler_product: product did not settle");
    result *= 1 + term;
    if (result.is_zero()) return result;
    term *= qv;
  }
}

namespace {

SeriesSum euler_series_at(const Real& t, const QParam& q, const PrecisionContext& ctx) {
  const Real qv = q.value(ctx);
  const Real tv = ctx.lift(t);
  Real current = ctx.real(1L);   // q^(j(j-1)/2) t^j / (q;q)_j
  Real q_to_j = ctx.real(1L);    // q^j
  long next = 0;
  return sum_series(
      [&](long j) {
        // sum_series asks for j = 0, 1, 2, ... in order.
        while (next < j) {
          current *= q_to_j * tv;
          q_to_j *= qv;
          current /= 1 - q_to_j;
          ++next;
        }
        return current;
      },
      0, ctx);
}

}  // namespace

Real euler_series(const Real& t, const QParam& q, const PrecisionContext& ctx) {
  constexpr mpfr_prec_t kSlackBits = 24;
  constexpr int kAttempts = 3;
  mpfr_prec_t extra = 0;
  SeriesSum s = euler_series_at(t, q, ctx);
  for (int attempt = 1; attempt < kAttempts; ++attempt) {
    // Bits lost to cancellation: log2(max term / |sum|).
    long lost = 0;
    if (s.sum.is_zero()) {
      lost = static_cast<long>(ctx.precision().bits + extra);
    } else if (!s.max_term.is_zero()) {
      lost = s.max_term.exponent2() - s.sum.exponent2();
    }
    if (lost <= kSlackBits) break;
    extra += lost + kSlackBits;
    s = euler_series_at(t, q, ctx.widened(extra));
  }
  return s.sum.with_precision(ctx.precision());
}

Real zeng_estimate(const Real& t, const QParam& q, const PrecisionContext& ctx) {
  if (!(t > 0)) throw DomainError("zeng_estimate: t must be positive");
  const Real lt = log(ctx.lift(t));
  const Real l_inv_q = -log(q.value(ctx));
  return exp(lt * lt / (2 * l_inv_q) + lt / 2);
}

ZengFit fit_zeng_constants(const QParam& q, const Real& t_lo, const Real& t_hi, int points,
                           const PrecisionContext& ctx) {
  if (points < 2) throw DomainError("fit_zeng_constants: need at least two points");
  if (!(t_lo > 0) || !(t_hi > t_lo)) throw DomainError("fit_zeng_constants: need 0 < t_lo < t_hi");
  const Real log_lo = log(ctx.lift(t_lo));
  const Real log_hi = log(ctx.lift(t_hi));
  const Real log_mid = (log_lo + log_hi) / 2;

  ZengFit fit;
  bool lower_seen = false;
  bool upper_seen = false;
  for (int i = 0; i < points; ++i) {
    const Real u = log_lo + (log_hi - log_lo) * i / (points - 1);
    const Real t = exp(u);
    const Real ratio = euler_product(t, q, ctx) / zeng_estimate(t, q, ctx);
    if (i == 0) {
      fit.c1 = ratio;
      fit.c2 = ratio;
    } else {
      if (ratio < fit.c1) fit.c1 = ratio;
      if (ratio > fit.c2) fit.c2 = ratio;
    }
    if (u <= log_mid) {
      if (!lower_seen || ratio < fit.lower_c1) fit.lower_c1 = ratio;
      if (!lower_seen || ratio > fit.lower_c2) fit.lower_c2 = ratio;
      lower_seen = true;
    }
    if (u >= log_mid) {
      if (!upper_seen || ratio < fit.upper_c1) fit.upper_c1 = ratio;
      if (!upper_seen || ratio > fit.upper_c2) fit.upper_c2 = ratio;
      upper_seen = true;
    }
    fit.samples.push_back({t, ratio});
  }
  if (lower_seen && upper_seen) {
    fit.upper_within_widened_lower = fit.upper_c1 >= fit.lower_c1 / 1.5 && fit.upper_c2 <= fit.lower_c2 * 1.5;
  }
  return fit;
}

namespace {

Real jackson_from_zero(const RealFunction& f, const Real& x, const QParam& q, const PrecisionContext& ctx) {
  if (x.is_zero()) return ctx.real(0L);
  const Real qv = q.value(ctx);
  const Real xv = ctx.lift(x);
  Real point = xv;               // x q^j
  Real weight = ctx.real(1L);    // q^j
  long next = 0;
  const SeriesSum s = sum_series(
      [&](long j) {
        while (next < j) {
          point *= qv;
          weight *= qv;
          ++next;
        }
        return f(point, ctx) * weight;
      },
      0, ctx);
  return xv * (1 - qv) * s.sum;
}

}  // namespace

Real jackson_integral(const RealFunction& f, const Real& a, const Real& b, const QParam& q,
                      const PrecisionContext& ctx) {
  if (a < 0 || b < 0) throw DomainError("jackson_integral: bounds must be non-negative");
  if (a == b) return ctx.real(0L);
  return jackson_from_zero(f, b, q, ctx) - jackson_from_zero(f, a, q, ctx);
}

Real improper_q_integral(const RealFunction& f, const QParam& q, const PrecisionContext& ctx) {
  const Real qv = q.value(ctx);
  const Real one_minus_q = 1 - qv;
  const BilateralSum s = sum_bilateral(
      [&](long j) {
        const Real t = pow(qv, j);
        return one_minus_q * f(t, ctx) * t;
      },
      ctx);
  return s.sum;
}

}  // namespace qmoment
