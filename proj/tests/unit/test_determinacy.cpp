#include <doctest.h>

#include "helpers.hpp"
#include "qmoment/determinacy.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/zoo.hpp"

using namespace qmoment;
using testing::rel_err;

namespace {

Rational qpow(const Rational& q, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= q;
  return r;
}

// f(q^-j) = q^(j(j+1)/2 + shift*j) for j = 0..J, so r_j = q^(shift*j).
QDensity shifted_theta(const QParam& q, long shift, long J) {
  std::vector<Scalar> values;
  for (long lattice = -J; lattice <= 0; ++lattice) {
    const long j = -lattice;
    values.emplace_back(qpow(q.exact(), j * (j + 1) / 2 + shift * j));
  }
  return QDensity::table(q, -J, std::move(values), false);
}

}  // namespace

TEST_CASE("status strings") {
  CHECK(to_string(Status::Determinate) == "Determinate");
  CHECK(to_string(Status::Indeterminate) == "Indeterminate");
  CHECK(to_string(Status::Inconclusive) == "Inconclusive");
  CHECK(to_string(ProofStrength::ExactRule) == "exact-rule");
  CHECK(to_string(ProofStrength::FiniteEvidence) == "finite-evidence");
  Verdict v;
  v.add("x", "1");
  CHECK(v.find("x") == "1");
  CHECK(v.find("y").empty());
}

TEST_CASE("Erlang threshold is exact") {
  // q^r (1 - q) lambda = 1 exactly at lambda = 4, r = 1, q = 1/2
  CHECK(erlang_rule(Scalar(4L), 1, QParam("0.5")).status == Status::Indeterminate);
  CHECK(erlang_rule(Scalar::parse("4.000000000000000000000000000001"), 1, QParam("0.5")).status ==
        Status::Determinate);
  CHECK(erlang_rule(Scalar::parse("3.999999999999999999999999999999"), 1, QParam("0.5")).status ==
        Status::Indeterminate);
  // (1/3)^2 (2/3) 27/2 = 1
  CHECK(erlang_rule(Scalar::parse("13.5"), 2, QParam("1/3")).status == Status::Indeterminate);
  const Verdict v = erlang_rule(Scalar(10L), 3, QParam("0.5"));
  CHECK(v.status == Status::Indeterminate);
  CHECK(v.proof_strength == ProofStrength::ExactRule);
  CHECK_FALSE(v.window.has_value());
  CHECK(v.find("q^r*(1-q)*lambda") == "0.625");
  CHECK_THROWS_AS(erlang_rule(Scalar(0L), 1, QParam("0.5")), DomainError);
  CHECK_THROWS_AS(erlang_rule(Scalar(1L), 0, QParam("0.5")), DomainError);
}

TEST_CASE("q-exponential threshold is exact") {
  CHECK(qexp_rule(Scalar(2L), QParam("0.5")).status == Status::Indeterminate);
  CHECK(qexp_rule(Scalar::parse("2.0000000000000000000001"), QParam("0.5")).status == Status::Determinate);
  CHECK(qexp_rule(Scalar(10L), QParam("0.9")).status == Status::Indeterminate);
  CHECK(qexp_rule(Scalar(11L), QParam("0.9")).status == Status::Determinate);
  CHECK(qexp_rule(Scalar(3L), QParam("0.5")).find("lambda*(1-q)") == "1.5");
}

TEST_CASE("the two rules disagree by a factor q at r = 1") {
  const std::vector<Scalar> lambdas{Scalar(1L), Scalar(3L), Scalar(6L), Scalar(10L)};
  const std::vector<QParam> qs{QParam("0.5"), QParam("0.8")};
  const auto d = rule_disagreements(lambdas, qs);
  // lambda (1 - q) in (1, 1/q]: lambda = 3, q = 0.5 and lambda = 6, q = 0.8
  REQUIRE(d.size() == 2);
  CHECK(d[0].lambda == Scalar(3L));
  CHECK(d[0].erlang == Status::Indeterminate);
  CHECK(d[0].qexp == Status::Determinate);
  CHECK(d[1].lambda == Scalar(6L));
  CHECK(d[1].q == QParam("0.8"));
}

TEST_CASE("condition B") {
  const PrecisionContext ctx(50);
  const QParam q("0.5");
  const Verdict det = check_condition_B(shifted_theta(q, 1, 70), 60, ctx);
  CHECK(det.status == Status::Determinate);
  CHECK(det.window->lo == 0);
  CHECK(det.window->hi == 60);
  // r_j = 1: bounded below, never small
  const Verdict flat = check_condition_B(theta_table(q), 60, ctx);
  CHECK(flat.status == Status::Inconclusive);
  CHECK(flat.find("decreasing_tail") == "false");
  // too short a window: r_J still above 10^-12.5
  CHECK(check_condition_B(shifted_theta(q, 1, 70), 30, ctx).status == Status::Inconclusive);
  CHECK_THROWS_AS(check_condition_B(theta_table(q), 5, ctx), DomainError);
}

TEST_CASE("condition C and the m-sublattice version") {
  const PrecisionContext ctx(50);
  const QParam q("0.5");
  const Verdict c = check_condition_C(theta_table(q), 40, ctx);
  CHECK(c.status == Status::Indeterminate);
  CHECK(c.find("C_hat") == Real(1L, ctx.precision()).to_string(50));
  CHECK(check_condition_C(shifted_theta(q, 1, 70), 40, ctx).status == Status::Inconclusive);

  const QDensity m2 = m2_pattern_table(q);
  CHECK(check_condition_C(m2, 40, ctx).status == Status::Inconclusive);
  CHECK(check_thm3_mj(m2, 1, 40, ctx).status == Status::Inconclusive);
  const Verdict t2 = check_thm3_mj(m2, 2, 40, ctx);
  CHECK(t2.status == Status::Indeterminate);
  CHECK(t2.criterion == criteria::kThm3);
  CHECK(t2.find("m") == "2");
}

TEST_CASE("growth criteria") {
  const PrecisionContext ctx(50);
  const QParam half("0.5");
  CHECK(rel_err(growth_margin(half, ctx), log(ctx.real(2L)) / 20) < ctx.tol());

  const Verdict p1 = classify_prop1(*q_erlang(Scalar(100L), 2, half).q_density, 20, ctx);
  CHECK(p1.status == Status::Determinate);
  CHECK(p1.window->index == "n");
  CHECK(p1.window->lo == 10);
  CHECK(p1.window->hi == 20);
  CHECK(classify_prop1(theta_table(half), 20, ctx).status == Status::Inconclusive);

  // log-concave with fast moment growth: f(q^-j) = q^(j(j+1)/4) at q = 1/4
  const QDensity fast = QDensity::table(QParam("0.25"), -60, theta_table(half).as_table()->values, false);
  const Verdict t2 = classify_thm2(fast, 20, 40, ctx);
  CHECK(t2.status == Status::Indeterminate);
  CHECK(t2.find("log_concave") == "true");
}

TEST_CASE("log-concavity violations are reported") {
  const PrecisionContext ctx(50);
  const QParam q("0.5");
  std::vector<Scalar> values = theta_table(q).as_table()->values;
  // lattice -5 sits at index 55
  values[55] = Scalar(values[55].exact() * 10);
  const QDensity spiked = QDensity::table(q, -60, std::move(values), false);
  const Verdict v = classify_thm2(spiked, 20, 40, ctx);
  CHECK(v.status == Status::Inconclusive);
  CHECK(v.find("log_concave") == "false");
  CHECK(v.find("violations") == "4,6");
  CHECK(v.find("violation_j") == "4");
}

TEST_CASE("bridge from classical moments") {
  const PrecisionContext ctx(30);
  // mu_n = exp(n^2 / 2): L = 1/2, q0 = 1/e
  const ClassicalMoments lognormal = [](long n, const PrecisionContext& c) { return exp(c.real(n * n) / 2); };
  const Prop4Result low = classify_prop4(lognormal, 40, QParam("0.3"), ctx);
  CHECK(rel_err(low.q0, exp(ctx.real(-1L))) < ctx.tol());
  CHECK(low.verdict.status == Status::Determinate);
  CHECK_FALSE(low.all_q);
  CHECK(classify_prop4(lognormal, 40, QParam("0.36"), ctx).verdict.status == Status::Inconclusive);

  // mu_n = n!: L_hat shrinks like ln(n)/n
  const ClassicalMoments factorial = [](long n, const PrecisionContext& c) {
    Real r = c.real(1L);
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
  };
  const Prop4Result e = classify_prop4(factorial, 200, QParam("0.8"), ctx);
  CHECK(e.q0 > 0.9);
  CHECK(e.verdict.status == Status::Determinate);
  CHECK(e.verdict.window->lo == 100);
}

TEST_CASE("Krein integral of the classical exponential") {
  const PrecisionContext ctx(30);
  const RealFunction rho = [](const Real& t, const PrecisionContext&) { return exp(-t); };
  // -ln rho(t^2) / (1 + t^2) = 1 - 1 / (1 + t^2)
  const KreinResult k = krein_integral(rho, ctx.real(1L), ctx.real(100L), ctx, 2);
  auto exact = [&](const Real& T) {
    Real at(ctx.precision());
    mpfr_atan(at.get(), T.get(), MPFR_RNDN);
    return T - 1 - (at - const_pi(ctx.precision()) / 4);
  };
  CHECK(rel_err(k.value, exact(ctx.real(100L))) < 100 * ctx.tol());
  REQUIRE(k.partials.size() == 3);
  CHECK(rel_err(k.partials[2].second, exact(ctx.real(10000L))) < 100 * ctx.tol());
  CHECK(k.decades.size() == 2);
  // c_fit = max t^2 / ln^2 t grows without bound
  CHECK(k.decades.back().c_fit > k.decades.front().c_fit);

  const RealFunction zero = [](const Real& t, const PrecisionContext& c) {
    return t > 10 ? c.real(0L) : exp(-t);
  };
  CHECK_THROWS_AS(krein_integral(zero, ctx.real(1L), ctx.real(100L), ctx), DomainError);
  CHECK_THROWS_AS(krein_integral(rho, ctx.real(2L), ctx.real(1L), ctx), DomainError);
}
