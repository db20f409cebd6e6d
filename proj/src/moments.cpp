#include "qmoment/moments.hpp"

#include <string>
#include <unordered_map>

#include "qmoment/errors.hpp"
#include "qmoment/quadrature.hpp"
#include "qmoment/series.hpp"
#include "qmoment/witness.hpp"

namespace qmoment {

namespace {

using LatticeValues = std::function<Real(long)>;

void require_non_negative(const Real& value, long j) {
  if (value < 0) {
    throw NegativeDensity("negative lattice value " + value.to_string(20) + " at j = " + std::to_string(j), j);
  }
}

QMomentReport table_moment(const QDensity::Table& t, const QParam& q, long n, const PrecisionContext& ctx,
                           bool check_sign) {
  const Real qv = q.value(ctx);
  QMomentReport out;
  out.n = n;
  out.value = ctx.real(0L);
  out.tail_bound = ctx.real(0L);
  Real best = ctx.real(0L);
  for (long j = t.j_min; j <= t.j_max; ++j) {
    const Real v = t.values[static_cast<size_t>(j - t.j_min)].value(ctx);
    if (check_sign) require_non_negative(v, j);
    const Real term = v * pow(qv, j * (n + 1));
    out.value += term;
    if (abs(term) > best) {
      best = abs(term);
      out.j_peak = j;
    }
  }
  out.value *= 1 - qv;
  out.terms_used = t.j_max - t.j_min + 1;
  return out;
}

QMomentReport bilateral_moment(const LatticeValues& values, const QParam& q, long n, const PrecisionContext& ctx,
                               bool check_sign) {
  const Real qv = q.value(ctx);
  const Real one_minus_q = 1 - qv;
  const BilateralSum s = sum_bilateral(
      [&](long j) {
        Real v = values(j);
        if (check_sign) require_non_negative(v, j);
        return one_minus_q * v * pow(qv, j * (n + 1));
      },
      ctx);
  return QMomentReport{n, s.sum, s.evaluations(), s.tail_bound, s.j_peak};
}

// Lattice values of a closed-form density, each evaluated once.
class LatticeCache {
 public:
  LatticeCache(const QDensity& f, const PrecisionContext& ctx) : f_(f), ctx_(ctx) {}

  Real operator()(long j) {
    auto it = values_.find(j);
    if (it == values_.end()) it = values_.emplace(j, eval_lattice(f_, j, ctx_)).first;
    return it->second;
  }

 private:
  const QDensity& f_;
  const PrecisionContext& ctx_;
  std::unordered_map<long, Real> values_;
};

}  // namespace

QMomentReport q_moment(const QDensity& f, long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("q_moment: order must be non-negative");
  if (const auto* t = f.as_table()) return table_moment(*t, f.q(), n, ctx, true);
  if (const auto* c = f.as_composite()) {
    QMomentReport out = q_moment(*c->base, n, ctx);
    const PhiEvaluation phi = phi_m_series(c->m, n, f.q(), ctx);
    const Real scale = ctx.lift(c->alpha) * (1 - f.q().value(ctx));
    out.value += scale * phi.partial_sums.back();
    out.terms_used += static_cast<long>(phi.partial_sums.size());
    out.tail_bound += abs(scale * phi.partial_sums.back());
    return out;
  }
  return bilateral_moment([&](long j) { return eval_lattice(f, j, ctx); }, f.q(), n, ctx, true);
}

QMomentReport q_moment_lattice_sum(const QDensity& f, long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("q_moment: order must be non-negative");
  if (const auto* t = f.as_table()) return table_moment(*t, f.q(), n, ctx, false);
  return bilateral_moment([&](long j) { return eval_lattice(f, j, ctx); }, f.q(), n, ctx, false);
}

Real psi_eval(const QDensity& f, long k, const PrecisionContext& ctx) {
  const Real qv = f.q().value(ctx);
  if (const auto* t = f.as_table()) {
    Real sum = ctx.real(0L);
    for (long j = -t->j_max; j <= -t->j_min; ++j) {
      sum += t->values[static_cast<size_t>(-j - t->j_min)].value(ctx) * pow(qv, -j * k);
    }
    return sum;
  }
  const SeriesSum upper = sum_series([&](long j) { return eval_lattice(f, -j, ctx) * pow(qv, -j * k); }, 0, ctx);
  const SeriesSum lower = sum_series([&](long j) { return eval_lattice(f, j, ctx) * pow(qv, j * k); }, 1, ctx);
  return upper.sum + lower.sum;
}

GrowthEstimate growth_rate(const QDensity& f, long n_max, const PrecisionContext& ctx) {
  if (n_max < 8) throw DomainError("growth_rate: n_max must be at least 8");
  GrowthEstimate out;
  out.window_lo = (n_max + 1) / 2;
  out.window_hi = n_max;
  LatticeCache cache(f, ctx);
  bool have_max = false;
  for (long n = 1; n <= n_max; ++n) {
    QMomentReport report = f.kind() == QDensity::Kind::Callable
                               ? bilateral_moment([&](long j) { return cache(j); }, f.q(), n, ctx, true)
                               : q_moment(f, n, ctx);
    if (!(report.value > 0)) continue;
    Real a_n = log(report.value) / (n * n);
    if (n >= out.window_lo && (!have_max || a_n > out.A_hat)) {
      out.A_hat = a_n;
      have_max = true;
    }
    out.samples.push_back({n, std::move(report.value), std::move(a_n)});
    ++out.n_used;
  }
  if (!have_max) throw NonConvergence("growth_rate: every moment in the upper half of the window vanished");
  return out;
}

Real classical_moment(const RealFunction& rho, long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("classical_moment: order must be non-negative");
  return integrate_half_line([&](const Real& t) { return pow(t, n) * rho(t, ctx); }, ctx).value;
}

}  // namespace qmoment
