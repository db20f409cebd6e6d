#include "qmoment/lattice.hpp"

#include <cmath>
#include <string>

#include "qmoment/errors.hpp"
#include "qmoment/witness.hpp"

namespace qmoment {

QDensity QDensity::callable(QParam q, Callable f, bool normalized) {
  if (!f) throw DomainError("callable density needs a function");
  return QDensity(std::move(q), normalized, std::move(f));
}

QDensity QDensity::table(QParam q, long j_min, std::vector<Scalar> values, bool normalized) {
  if (values.empty()) throw DomainError("table density needs at least one value");
  Table t;
  t.j_min = j_min;
  t.j_max = j_min + static_cast<long>(values.size()) - 1;
  t.values = std::move(values);
  return QDensity(std::move(q), normalized, std::move(t));
}

QDensity QDensity::composite(std::shared_ptr<const QDensity> base, long m, Real alpha) {
  if (!base) throw DomainError("composite density needs a base");
  if (m < 1) throw DomainError("composite density needs m >= 1");
  Composite c{base, m, std::move(alpha)};
  return QDensity(base->q(), base->normalized(), std::move(c));
}

Real eval_lattice(const QDensity& f, long j, const PrecisionContext& ctx) {
  if (const auto* fn = f.as_callable()) {
    return ctx.lift((*fn)(q_power(f.q(), j, ctx), ctx));
  }
  if (const auto* t = f.as_table()) {
    if (j < t->j_min || j > t->j_max) return ctx.real(0L);
    return t->values[static_cast<size_t>(j - t->j_min)].value(ctx);
  }
  const auto* c = f.as_composite();
  Real value = eval_lattice(*c->base, j, ctx);
  if (j <= 0 && (-j) % c->m == 0) value += ctx.lift(c->alpha) * euler_coeff(-j / c->m, c->m, f.q(), ctx);
  return value;
}

namespace {

// Solves x = q^k for an integer k; throws when x is off the lattice.
long lattice_index(const Real& x, const QParam& q, const PrecisionContext& ctx) {
  if (!(x > 0)) throw DomainError("lattice point must be positive");
  const Real k_real = log(ctx.lift(x)) / log(q.value(ctx));
  const long k = floor(k_real + 0.5).to_long();
  const Real back = q_power(q, k, ctx);
  if (abs(back - x) > ctx.tol() * abs(x)) {
    throw DomainError("x = " + x.to_string(20) + " is not a lattice point q^k; table densities are lattice-only");
  }
  return k;
}

}  // namespace

Real cdf_lattice(const QDensity& f, long k, const PrecisionContext& ctx) {
  const Real qv = f.q().value(ctx);
  const Real one_minus_q = 1 - qv;
  if (const auto* t = f.as_table()) {
    Real sum = ctx.real(0L);
    for (long j = std::max(k, t->j_min); j <= t->j_max; ++j) {
      sum += t->values[static_cast<size_t>(j - t->j_min)].value(ctx) * pow(qv, j);
    }
    return one_minus_q * sum;
  }
  if (const auto* c = f.as_composite()) {
    Real value = cdf_lattice(*c->base, k, ctx);
    if (k <= 0) {
      Real extra = ctx.real(0L);
      for (long i = 0; -c->m * i >= k; ++i) {
        extra += euler_coeff(i, c->m, f.q(), ctx) * pow(qv, -c->m * i);
      }
      value += ctx.lift(c->alpha) * one_minus_q * extra;
    }
    return value;
  }
  return cdf(f, q_power(f.q(), k, ctx), ctx);
}

Real cdf(const QDensity& f, const Real& x, const PrecisionContext& ctx) {
  if (!(x > 0)) throw DomainError("cdf: x must be positive");
  if (f.kind() != QDensity::Kind::Callable) return cdf_lattice(f, lattice_index(x, f.q(), ctx), ctx);
  const auto& fn = *f.as_callable();
  const Real qv = f.q().value(ctx);
  const Real xv = ctx.lift(x);
  Real point = xv;
  Real weight = ctx.real(1L);
  long next = 0;
  const SeriesSum s = sum_series(
      [&](long j) {
        while (next < j) {
          point *= qv;
          weight *= qv;
          ++next;
        }
        return fn(point, ctx) * weight;
      },
      0, ctx);
  return xv * (1 - qv) * s.sum;
}

Real q_derivative(const RealFunction& F, const Real& t, const QParam& q, const PrecisionContext& ctx) {
  if (!(t > 0)) throw DomainError("q_derivative: t must be positive");
  const Real qv = q.value(ctx);
  const Real tv = ctx.lift(t);
  return (F(tv, ctx) - F(qv * tv, ctx)) / (tv * (1 - qv));
}

BilateralSum lattice_mass_sum(const QDensity& f, const PrecisionContext& ctx) {
  const Real qv = f.q().value(ctx);
  const Real one_minus_q = 1 - qv;
  if (const auto* t = f.as_table()) {
    BilateralSum out;
    out.j_lo = t->j_min;
    out.j_hi = t->j_max;
    out.sum = ctx.real(0L);
    out.max_term = ctx.real(0L);
    out.tail_bound = ctx.real(0L);
    Real best(ctx.precision());
    for (long j = t->j_min; j <= t->j_max; ++j) {
      Real term = one_minus_q * t->values[static_cast<size_t>(j - t->j_min)].value(ctx) * pow(qv, j);
      out.sum += term;
      if (abs(term) > out.max_term) {
        out.max_term = abs(term);
        out.j_peak = j;
      }
      out.terms.push_back(std::move(term));
    }
    return out;
  }
  return sum_bilateral([&](long j) { return one_minus_q * eval_lattice(f, j, ctx) * pow(qv, j); }, ctx);
}

Real improper_q_integral(const QDensity& f, const PrecisionContext& ctx) { return lattice_mass_sum(f, ctx).sum; }

Real LatticeDistribution::mass(long j) const {
  if (j < j_lo || j > j_hi()) return Real(0L, total.precision());
  return masses[static_cast<size_t>(j - j_lo)];
}

LatticeDistribution to_discrete(const QDensity& f, const PrecisionContext& ctx) {
  BilateralSum s = lattice_mass_sum(f, ctx);
  if (abs(s.sum - 1) > ctx.normalization_tol()) {
    throw NotNormalized("total lattice mass is " + s.sum.to_string(20) + ", not 1");
  }
  for (long j = s.j_lo; j <= s.j_hi; ++j) {
    if (s.term(j) < 0) throw NegativeDensity("negative lattice mass at j = " + std::to_string(j), j);
  }
  return LatticeDistribution{f.q(), s.j_lo, std::move(s.terms), std::move(s.sum)};
}

bool lattice_equiv(const QDensity& f, const QDensity& g, const PrecisionContext& ctx, LatticeWindow window,
                   const std::optional<Real>& tol) {
  if (!(f.q() == g.q())) throw QMismatch("densities live on different lattices (q differs)");
  const Real limit = tol ? ctx.lift(*tol) : pow10(15 - ctx.digits(), ctx.precision());
  const Real one = ctx.real(1L);
  for (long j = window.lo; j <= window.hi; ++j) {
    const Real a = eval_lattice(f, j, ctx);
    const Real b = eval_lattice(g, j, ctx);
    if (abs(a - b) > limit * max(one, abs(a))) return false;
  }
  return true;
}

QDensity q_density_of_classical(ClassicalCdf F, QParam q) {
  const QParam qp = q;
  auto fn = [F = std::move(F), qp](const Real& t, const PrecisionContext& ctx) {
    const Real qv = qp.value(ctx);
    const Real tv = ctx.lift(t);
    const Real qt = qv * tv;
    Real diff(ctx.precision());
    // Close to one the distribution function loses all its digits; the
    // complement does not.
    if (F.survival && F.cdf(qt, ctx) > 0.5) {
      diff = F.survival(qt, ctx) - F.survival(tv, ctx);
    } else {
      diff = F.cdf(tv, ctx) - F.cdf(qt, ctx);
    }
    return diff / (tv * (1 - qv));
  };
  return QDensity::callable(std::move(q), std::move(fn));
}

QDensity materialize(const QDensity& f, long lo, long hi, const PrecisionContext& ctx) {
  if (hi < lo) throw DomainError("materialize: empty window");
  std::vector<Scalar> values;
  values.reserve(static_cast<size_t>(hi - lo + 1));
  for (long j = lo; j <= hi; ++j) values.push_back(Scalar::parse(eval_lattice(f, j, ctx).to_exact_string()));
  return QDensity::table(f.q(), lo, std::move(values), f.normalized());
}

}  // namespace qmoment
