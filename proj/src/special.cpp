#include "qmoment/special.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "qmoment/errors.hpp"

namespace qmoment {

namespace {

// zeta(2k) for k = 1, 2, ... at a given precision, shared across calls.
class EvenZetaTable {
 public:
  Real get(long k, Precision p) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& row = table_[p.bits];
    while (static_cast<long>(row.size()) < k) {
      row.push_back(zeta(2 * (static_cast<unsigned long>(row.size()) + 1), p));
    }
    return row[static_cast<size_t>(k - 1)];
  }

 private:
  std::mutex mutex_;
  std::map<mpfr_prec_t, std::vector<Real>> table_;
};

EvenZetaTable& even_zeta() {
  static EvenZetaTable table;
  return table;
}

Real stirling_log_gamma(const Real& x, const PrecisionContext& ctx) {
  const Precision p = ctx.precision();
  const Real two_pi = 2 * const_pi(p);
  Real sum = (x - 0.5) * log(x) - x + log(two_pi) / 2;
  const Real inv_x2_scaled = 1 / (two_pi * two_pi * x * x);
  Real g = 2 / (two_pi * two_pi * x);  // 2 (2k-2)! / ((2 pi)^(2k) x^(2k-1))
  Real previous(p);
  Real threshold = ctx.tol() * abs(sum) / 1024;
  if (threshold.is_zero()) threshold = ctx.tol() / 1024;
  for (long k = 1; k < ctx.max_terms(); ++k) {
    Real term = g * even_zeta().get(k, p);
    if (k % 2 == 0) term = -term;
    const Real magnitude = abs(term);
    if (k > 1 && magnitude > previous) {
      throw NonConvergence("log_gamma: asymptotic series diverged before reaching tolerance");
    }
    sum += term;
    if (magnitude <= threshold) return sum;
    previous = magnitude;
    g *= (2 * k) * (2 * k - 1) * inv_x2_scaled;
  }
  throw NonConvergence("log_gamma: asymptotic series did not settle");
}

}  // namespace

Real log_gamma(const Real& x, const PrecisionContext& ctx) {
  if (!(x > 0)) throw DomainError("log_gamma: argument must be positive, got " + x.to_string(20));
  const double shift_to = std::max(ctx.digits() / 2.0, 10.0);
  Real xv = ctx.lift(x);
  if (!(xv < shift_to)) return stirling_log_gamma(xv, ctx);
  // ln Gamma(x) = ln Gamma(x + N) - ln(x (x+1) ... (x+N-1))
  Real product = ctx.real(1L);
  Real shifted = xv;
  while (shifted < shift_to) {
    product *= shifted;
    shifted += 1;
  }
  return stirling_log_gamma(shifted, ctx) - log(product);
}

IncompleteGamma regularized_gamma(const Real& a, const Real& x, const PrecisionContext& ctx) {
  if (!(a > 0)) throw DomainError("regularized_gamma: a must be positive");
  if (x < 0) throw DomainError("regularized_gamma: x must be non-negative");
  const Real av = ctx.lift(a);
  const Real xv = ctx.lift(x);
  if (xv.is_zero()) return {ctx.real(0L), ctx.real(1L)};

  const Real log_prefix = av * log(xv) - xv;
  if (xv < av + 1) {
    // P = x^a e^-x / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k))
    Real term = ctx.real(1L);
    Real sum = ctx.real(1L);
    Real denom = av;
    for (long k = 1;; ++k) {
      if (k >= ctx.max_terms()) throw NonConvergence("regularized_gamma: series did not settle");
      denom += 1;
      term *= xv / denom;
      sum += term;
      if (abs(term) <= ctx.tol() * abs(sum) / 1024) break;
    }
    Real p = exp(log_prefix - log_gamma(av + 1, ctx)) * sum;
    Real q = 1 - p;
    return {p, q};
  }
  // Q via the continued fraction, modified Lentz.
  Real tiny(ctx.precision());
  mpfr_set_ui_2exp(tiny.get(), 1, -4 * static_cast<long>(ctx.precision().bits), MPFR_RNDN);
  Real b = xv + 1 - av;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (long i = 1;; ++i) {
    if (i >= ctx.max_terms()) throw NonConvergence("regularized_gamma: continued fraction did not settle");
    const Real an = -i * (i - av);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Real delta = d * c;
    h *= delta;
    if (abs(delta - 1) <= ctx.tol() / 1024) break;
  }
  Real q = exp(log_prefix - log_gamma(av, ctx)) * h;
  Real p = 1 - q;
  return {p, q};
}

}  // namespace qmoment
