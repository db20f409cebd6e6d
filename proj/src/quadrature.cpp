#include "qmoment/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "qmoment/errors.hpp"

namespace qmoment {

namespace {

GaussLegendreRule compute_rule(int n, Precision p) {
  const Precision work = p.widened(16);
  GaussLegendreRule rule;
  rule.nodes.reserve(static_cast<size_t>(n));
  rule.weights.reserve(static_cast<size_t>(n));
  Real eps(work);
  mpfr_set_ui_2exp(eps.get(), 1, -static_cast<long>(p.bits) - 4, MPFR_RNDN);
  for (int i = 1; i <= n; ++i) {
    Real x(std::cos(M_PI * (i - 0.25) / (n + 0.5)), work);
    Real derivative(work);
    for (int iteration = 0; iteration < 200; ++iteration) {
      Real p0(1L, work);
      Real p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      derivative = n * (x * p1 - p0) / (x * x - 1);
      const Real step = p1 / derivative;
      x -= step;
      if (abs(step) < eps) break;
    }
    rule.nodes.push_back(x.with_precision(p));
    rule.weights.push_back((2 / ((1 - x * x) * derivative * derivative)).with_precision(p));
  }
  return rule;
}

Real apply_rule(const RealMap& g, const Real& a, const Real& b, int n, const PrecisionContext& ctx) {
  const GaussLegendreRule& rule = gauss_legendre(n, ctx.precision());
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;
  Real sum(ctx.precision());
  for (size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return sum * half;
}

Real integrate_impl(const RealMap& g, const Real& a, const Real& b, const PrecisionContext& ctx,
                    const Real& abs_tol, int depth) {
  Real previous = apply_rule(g, a, b, 16, ctx);
  for (int n : {32, 64, 128}) {
    Real current = apply_rule(g, a, b, n, ctx);
    const Real allowed = max(ctx.tol() * abs(current), abs_tol);
    if (abs(current - previous) <= allowed) return current;
    previous = std::move(current);
  }
  if (depth >= 24) throw NonConvergence("integrate: adaptive Gauss-Legendre did not settle");
  const Real mid = (a + b) / 2;
  const Real half_tol = abs_tol / 2;
  return integrate_impl(g, a, mid, ctx, half_tol, depth + 1) + integrate_impl(g, mid, b, ctx, half_tol, depth + 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n, Precision p) {
  static std::mutex mutex;
  static std::map<std::pair<int, mpfr_prec_t>, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, p.bits}];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(n, p));
  return *slot;
}

Real integrate(const RealMap& g, const Real& a, const Real& b, const PrecisionContext& ctx, const Real& abs_tol) {
  if (a == b) return ctx.real(0L);
  return integrate_impl(g, ctx.lift(a), ctx.lift(b), ctx, abs_tol, 0);
}

namespace {

// Integral of h over [lo, hi] in the variable u = ln t.
Real integrate_log_segment(const RealMap& h, const Real& lo, const Real& hi, const PrecisionContext& ctx,
                           const Real& abs_tol) {
  const RealMap in_u = [&](const Real& u) {
    const Real t = exp(u);
    return h(t) * t;
  };
  return integrate(in_u, log(lo), log(hi), ctx, abs_tol);
}

}  // namespace

DecadeIntegral integrate_decades(const RealMap& h, const Real& t0, const Real& t1, const PrecisionContext& ctx) {
  if (!(t0 > 0) || t1 < t0) throw DomainError("integrate_decades: need 0 < t0 <= t1");
  DecadeIntegral out;
  out.value = ctx.real(0L);
  if (t0 == t1) return out;
  const Real lo = ctx.lift(t0);
  const Real hi = ctx.lift(t1);
  long k = floor(log10(lo)).to_long();
  out.first_decade = k;
  const Real zero = ctx.real(0L);
  for (;; ++k) {
    const Real edge_lo = pow10(k, ctx.precision());
    const Real edge_hi = pow10(k + 1, ctx.precision());
    const Real& a = max(edge_lo, lo);
    const Real& b = min(edge_hi, hi);
    if (a < b) {
      Real piece = integrate_log_segment(h, a, b, ctx, zero);
      out.value += piece;
      out.per_decade.push_back(std::move(piece));
    } else {
      out.per_decade.push_back(ctx.real(0L));
    }
    if (!(edge_hi < hi)) break;
  }
  out.last_decade = k;
  return out;
}

DecadeIntegral integrate_half_line(const RealMap& h, const PrecisionContext& ctx) {
  constexpr long kScan = 40;
  constexpr long kMaxDecades = 2000;
  const Real ln10 = log(ctx.real(10L));
  long best = 0;
  Real best_value(ctx.precision());
  for (long k = -kScan; k <= kScan; ++k) {
    const Real u = (ctx.real(k) + 0.5) * ln10;
    const Real t = exp(u);
    const Real v = abs(h(t) * t);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }

  auto decade = [&](long k, const Real& abs_tol) {
    const Real a = pow10(k, ctx.precision());
    const Real b = pow10(k + 1, ctx.precision());
    return integrate_log_segment(h, a, b, ctx, abs_tol);
  };

  std::map<long, Real> pieces;
  Real total = decade(best, ctx.real(0L));
  // Decades away from the peak only need accuracy relative to the total;
  // without this floor a far tail spanning many orders of magnitude would
  // be resolved to full relative precision.
  const Real abs_floor = ctx.tol() * abs(total) / 64;
  pieces.emplace(best, total);
  auto extend = [&](long direction) {
    int quiet = 0;
    for (long k = best + direction;; k += direction) {
      if (static_cast<long>(pieces.size()) > kMaxDecades) {
        throw NonConvergence("integrate_half_line: integrand does not decay within the decade budget");
      }
      Real piece = decade(k, abs_floor);
      total += piece;
      const bool small = abs(piece) <= ctx.tol() * abs(total);
      pieces.emplace(k, std::move(piece));
      quiet = small ? quiet + 1 : 0;
      if (quiet >= 2) return;
    }
  };
  extend(+1);
  extend(-1);

  DecadeIntegral out;
  out.first_decade = pieces.begin()->first;
  out.last_decade = pieces.rbegin()->first;
  out.value = ctx.real(0L);
  for (auto& [k, piece] : pieces) {
    out.value += piece;
    out.per_decade.push_back(piece);
  }
  return out;
}

}  // namespace qmoment
