#include "qmoment/determinacy.hpp"

#include <string>

#include "qmoment/errors.hpp"
#include "qmoment/moments.hpp"
#include "qmoment/quadrature.hpp"

namespace qmoment {

std::string to_string(Status s) {
  switch (s) {
    case Status::Determinate:
      return "Determinate";
    case Status::Indeterminate:
      return "Indeterminate";
    case Status::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(ProofStrength s) { return s == ProofStrength::ExactRule ? "exact-rule" : "finite-evidence"; }

std::string Verdict::find(std::string_view name) const {
  for (const auto& e : evidence) {
    if (e.name == name) return e.value;
  }
  return {};
}

namespace {

std::string text(const Real& x, const PrecisionContext& ctx) { return x.to_string(ctx.digits()); }

// f(q^(-m j)) / q^(m j (j+1) / 2) for j = 0..J.
std::vector<Real> sublattice_ratios(const QDensity& f, long m, long J, const PrecisionContext& ctx) {
  const Real qv = f.q().value(ctx);
  std::vector<Real> r;
  r.reserve(static_cast<size_t>(J + 1));
  for (long j = 0; j <= J; ++j) r.push_back(eval_lattice(f, -m * j, ctx) / pow(qv, m * j * (j + 1) / 2));
  return r;
}

Verdict lower_bound_rule(const char* criterion, const QDensity& f, long m, long J, const PrecisionContext& ctx) {
  if (J < 10) throw DomainError(std::string(criterion) + ": J must be at least 10");
  const std::vector<Real> r = sublattice_ratios(f, m, J, ctx);
  const long half = J / 2;
  Real c_hat = r[0];
  Real first_min = r[0];
  for (long j = 0; j <= J; ++j) {
    if (r[j] < c_hat) c_hat = r[j];
    if (j < half && r[j] < first_min) first_min = r[j];
  }
  Real last_min = r[half];
  for (long j = half; j <= J; ++j) {
    if (r[j] < last_min) last_min = r[j];
  }
  Verdict v;
  v.criterion = criterion;
  v.proof_strength = ProofStrength::FiniteEvidence;
  v.window = Window{"j", 0, J};
  v.add("m", std::to_string(m));
  v.add("C_hat", text(c_hat, ctx));
  v.add("first_half_min", text(first_min, ctx));
  v.add("last_half_min", text(last_min, ctx));
  v.add("ratio_at_J", text(r[J], ctx));
  const bool stable = c_hat > 0 && last_min >= first_min * 0.5;
  v.status = stable ? Status::Indeterminate : Status::Inconclusive;
  return v;
}

}  // namespace

Verdict check_condition_B(const QDensity& f, long J, const PrecisionContext& ctx) {
  if (J < 10) throw DomainError("condition-B: J must be at least 10");
  const std::vector<Real> r = sublattice_ratios(f, 1, J, ctx);
  const long start = J - J / 2;
  bool decreasing = true;
  long break_at = -1;
  for (long j = start; j < J; ++j) {
    const bool ok = r[j + 1] < r[j] || (r[j + 1].is_zero() && r[j].is_zero());
    if (!ok) {
      decreasing = false;
      break_at = j + 1;
      break;
    }
  }
  const Real threshold = pow(ctx.real(10L), ctx.real(-ctx.digits()) / 4);
  const bool small = abs(r[J]) < threshold;
  Verdict v;
  v.criterion = criteria::kConditionB;
  v.proof_strength = ProofStrength::FiniteEvidence;
  v.window = Window{"j", 0, J};
  v.add("ratio_at_0", text(r[0], ctx));
  v.add("ratio_at_J", text(r[J], ctx));
  v.add("threshold", text(threshold, ctx));
  v.add("decreasing_tail", decreasing ? "true" : "false");
  if (break_at >= 0) v.add("tail_not_decreasing_at_j", std::to_string(break_at));
  v.status = decreasing && small ? Status::Determinate : Status::Inconclusive;
  return v;
}

Verdict check_condition_C(const QDensity& f, long J, const PrecisionContext& ctx) {
  return lower_bound_rule(criteria::kConditionC, f, 1, J, ctx);
}

Verdict check_thm3_mj(const QDensity& f, long m, long J, const PrecisionContext& ctx) {
  if (m < 1) throw DomainError("thm3-mj: m must be positive");
  return lower_bound_rule(criteria::kThm3, f, m, J, ctx);
}

Real growth_margin(const QParam& q, const PrecisionContext& ctx) { return -log(q.value(ctx)) / 20; }

namespace {

void add_growth(Verdict& v, const GrowthEstimate& g, const QParam& q, const PrecisionContext& ctx) {
  v.window = Window{"n", g.window_lo, g.window_hi};
  v.add("A_hat", text(g.A_hat, ctx));
  v.add("critical", text(-log(q.value(ctx)) / 2, ctx));
  v.add("margin", text(growth_margin(q, ctx), ctx));
}

}  // namespace

Verdict classify_prop1(const QDensity& f, long n_max, const PrecisionContext& ctx) {
  const GrowthEstimate g = growth_rate(f, n_max, ctx);
  const Real critical = -log(f.q().value(ctx)) / 2;
  Verdict v;
  v.criterion = criteria::kProp1;
  v.proof_strength = ProofStrength::FiniteEvidence;
  add_growth(v, g, f.q(), ctx);
  v.status = g.A_hat < critical - growth_margin(f.q(), ctx) ? Status::Determinate : Status::Inconclusive;
  return v;
}

Verdict classify_thm2(const QDensity& f, long n_max, long J, const PrecisionContext& ctx) {
  if (J < 1) throw DomainError("thm2-logconcave: J must be positive");
  // values[i] = f(q^-(i-1)), i.e. j = -1..J+1
  std::vector<Real> values;
  for (long j = -1; j <= J + 1; ++j) values.push_back(eval_lattice(f, -j, ctx));
  auto at = [&](long j) -> const Real& { return values[static_cast<size_t>(j + 1)]; };
  std::vector<long> violations;
  const Real slack = ctx.tol() * 8;
  for (long j = 0; j <= J; ++j) {
    const Real lhs = at(j + 1) * at(j - 1);
    const Real rhs = at(j) * at(j);
    if (lhs > rhs * (1 + slack)) violations.push_back(j);
  }

  Verdict v;
  v.criterion = criteria::kThm2;
  v.proof_strength = ProofStrength::FiniteEvidence;
  if (!violations.empty()) {
    v.window = Window{"j", 0, J};
    v.add("log_concave", "false");
    v.add("violation_j", std::to_string(violations.front()));
    std::string all;
    for (long j : violations) all += (all.empty() ? "" : ",") + std::to_string(j);
    v.add("violations", all);
    v.status = Status::Inconclusive;
    return v;
  }
  const GrowthEstimate g = growth_rate(f, n_max, ctx);
  const Real critical = -log(f.q().value(ctx)) / 2;
  add_growth(v, g, f.q(), ctx);
  v.add("log_concave", "true");
  v.add("log_concave_window", "j=0.." + std::to_string(J));
  v.status = g.A_hat > critical + growth_margin(f.q(), ctx) ? Status::Indeterminate : Status::Inconclusive;
  return v;
}

Prop4Result classify_prop4(const ClassicalMoments& mu, long n_max, const QParam& q, const PrecisionContext& ctx) {
  if (n_max < 2) throw DomainError("prop4-bridge: n_max must be at least 2");
  const long lo = (n_max + 1) / 2;
  Real L_hat(ctx.precision());
  for (long n = lo; n <= n_max; ++n) {
    const Real m = mu(n, ctx);
    if (!(m > 0)) throw DomainError("prop4-bridge: classical moment " + std::to_string(n) + " is not positive");
    Real l = log(m) / (n * n);
    if (n == lo || l > L_hat) L_hat = std::move(l);
  }
  Prop4Result out;
  out.q0 = L_hat > 0 ? exp(L_hat * -2) : ctx.real(1L);
  out.all_q = out.q0 >= 0.99;
  const Real limit = out.q0 * 0.95;
  Verdict& v = out.verdict;
  v.criterion = criteria::kProp4;
  v.proof_strength = ProofStrength::FiniteEvidence;
  v.window = Window{"n", lo, n_max};
  v.add("L_hat", text(L_hat, ctx));
  v.add("q0", text(out.q0, ctx));
  v.add("q", q.text());
  v.add("determinate_for_all_q", out.all_q ? "true" : "false");
  v.status = q.value(ctx) < limit ? Status::Determinate : Status::Inconclusive;
  return out;
}

namespace {

Rational rational_pow(const Rational& x, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

Verdict erlang_rule(const Scalar& lambda, long r, const QParam& q) {
  if (!(lambda.exact() > 0)) throw DomainError("erlang-rule: lambda must be positive");
  if (r < 1) throw DomainError("erlang-rule: r must be at least 1");
  const Rational value = rational_pow(q.exact(), r) * (1 - q.exact()) * lambda.exact();
  Verdict v;
  v.criterion = criteria::kErlangRule;
  v.proof_strength = ProofStrength::ExactRule;
  v.add("lambda", lambda.text());
  v.add("r", std::to_string(r));
  v.add("q", q.text());
  v.add("q^r*(1-q)*lambda", Scalar(value).text());
  v.status = value <= 1 ? Status::Indeterminate : Status::Determinate;
  return v;
}

Verdict qexp_rule(const Scalar& lambda, const QParam& q) {
  if (!(lambda.exact() > 0)) throw DomainError("qexp-rule: lambda must be positive");
  const Rational value = lambda.exact() * (1 - q.exact());
  Verdict v;
  v.criterion = criteria::kQexpRule;
  v.proof_strength = ProofStrength::ExactRule;
  v.add("lambda", lambda.text());
  v.add("q", q.text());
  v.add("lambda*(1-q)", Scalar(value).text());
  v.status = value > 1 ? Status::Determinate : Status::Indeterminate;
  return v;
}

std::vector<RuleDisagreement> rule_disagreements(const std::vector<Scalar>& lambdas, const std::vector<QParam>& qs) {
  std::vector<RuleDisagreement> out;
  for (const Scalar& lambda : lambdas) {
    for (const QParam& q : qs) {
      const Status e = erlang_rule(lambda, 1, q).status;
      const Status x = qexp_rule(lambda, q).status;
      if (e != x) out.push_back({lambda, q, e, x});
    }
  }
  return out;
}

KreinResult krein_integral(const RealFunction& rho, const Real& t0, const Real& T, const PrecisionContext& ctx,
                           int extra_decades, int samples_per_decade) {
  if (!(t0 > 0)) throw DomainError("krein: t0 must be positive");
  if (T < t0) throw DomainError("krein: T must not be below t0");
  if (samples_per_decade < 2) throw DomainError("krein: need at least two samples per decade");

  auto minus_log_rho_sq = [&](const Real& t) {
    const Real density = rho(t * t, ctx);
    if (!(density > 0)) throw DomainError("krein: rho(t^2) vanishes at t = " + t.to_string(15));
    return -log(density);
  };
  const RealMap integrand = [&](const Real& t) { return minus_log_rho_sq(t) / (1 + t * t); };

  KreinResult out;
  out.value = ctx.real(0L);
  out.c_fit = ctx.real(0L);
  if (t0 == T) {
    out.partials.push_back({ctx.lift(T), ctx.real(0L)});
    return out;
  }

  const DecadeIntegral d = integrate_decades(integrand, t0, T, ctx);
  out.value = d.value;
  const Real lo = ctx.lift(t0);
  const Real hi = ctx.lift(T);
  for (long k = d.first_decade; k <= d.last_decade; ++k) {
    KreinDecade decade;
    decade.decade = k;
    decade.integral = d.per_decade[static_cast<size_t>(k - d.first_decade)];
    decade.c_fit = ctx.real(0L);
    for (int i = 0; i < samples_per_decade; ++i) {
      const Real t = pow(ctx.real(10L), ctx.real(k) + ctx.real(i) / (samples_per_decade - 1));
      if (t < lo || t > hi || !(t > 1)) continue;
      const Real lt = log(t);
      const Real c = minus_log_rho_sq(t) / (lt * lt);
      if (c > decade.c_fit) decade.c_fit = c;
    }
    if (decade.c_fit > out.c_fit) out.c_fit = decade.c_fit;
    out.decades.push_back(std::move(decade));
  }

  Real running = out.value;
  Real edge = hi;
  out.partials.push_back({edge, running});
  for (int i = 0; i < extra_decades; ++i) {
    const Real next = edge * 10;
    running += integrate_decades(integrand, edge, next, ctx).value;
    edge = next;
    out.partials.push_back({edge, running});
  }
  return out;
}

}  // namespace qmoment
