#include <doctest.h>

#include <memory>

#include "helpers.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/moments.hpp"
#include "qmoment/witness.hpp"
#include "qmoment/zoo.hpp"

using namespace qmoment;
using testing::rel_err;

TEST_CASE("q-moments against reference values") {
  const PrecisionContext ctx(50);
  struct Case {
    QDensity f;
    long n;
    const char* value;
  };
  const Case cases[] = {
      {*q_exponential(Scalar(1L), QParam("0.5")).q_density, 3, "168"},
      {*q_exponential(Scalar(2L), QParam("0.3")).q_density, 5,
       "7947024.35109691630170855522305636241143663416314566677447976"},
      {*q_erlang(Scalar(1L), 3, QParam("0.5")).q_density, 2, "420"},
      {*q_erlang(Scalar(2L), 5, QParam("0.3")).q_density, 4,
       "10205596955229.2590907104317699479564928818588743551370604984"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.value);
    const QMomentReport r = q_moment(c.f, c.n, ctx);
    CHECK(rel_err(r.value, ctx.parse(c.value)) < 10 * ctx.tol());
    CHECK(r.n == c.n);
    CHECK(r.terms_used > 0);
    CHECK(r.tail_bound <= ctx.tol() * r.value);
  }
}

TEST_CASE("moment of order zero is the mass") {
  const PrecisionContext ctx(50);
  const QDensity f = *q_exponential(Scalar::parse("0.7"), QParam("0.8")).q_density;
  CHECK(rel_err(q_moment(f, 0, ctx).value, improper_q_integral(f, ctx)) < ctx.tol());
}

TEST_CASE("psi route agrees with the moment sum") {
  const PrecisionContext ctx(50);
  const QParam q("0.5");
  const Real qv = q.value(ctx);
  for (const QDensity& f : {*q_exponential(Scalar(1L), q).q_density, *q_erlang(Scalar(3L), 2, q).q_density,
                            theta_table(q), m2_pattern_table(q)}) {
    for (long n = 0; n <= 10; ++n) {
      CAPTURE(n);
      const Real m = q_moment(f, n, ctx).value;
      CHECK(abs(m - (1 - qv) * psi_eval(f, n + 1, ctx)) <= 4 * ctx.tol() * m);
    }
  }
}

TEST_CASE("table moments are exact finite sums") {
  const PrecisionContext ctx(50);
  const QParam q("0.5");
  // values 1 at j = -1 and 2 at j = 1: m(n) = (1/2)(2^(n+1) + 2 * 2^-(n+1))
  const QDensity t = QDensity::table(q, -1, {Scalar(1L), Scalar(0L), Scalar(2L)}, false);
  const Real m2 = q_moment(t, 2, ctx).value;
  CHECK(m2 == (8 + 2 * 0.125) / 2);
  const QDensity neg = QDensity::table(q, 0, {Scalar(1L), Scalar(-1L)}, false);
  CHECK_THROWS_AS(q_moment(neg, 1, ctx), NegativeDensity);
  CHECK(q_moment_lattice_sum(neg, 0, ctx).value == 0.25);
  CHECK_THROWS_AS(q_moment(t, -1, ctx), DomainError);
}

TEST_CASE("composite moments match the base") {
  const PrecisionContext ctx(120);
  const QParam q("0.5");
  auto base = std::make_shared<const QDensity>(theta_table(q));
  const QDensity g = QDensity::composite(base, 1, ctx.parse("0.1"));
  for (long n = 0; n <= 4; ++n) {
    CAPTURE(n);
    const Real mf = q_moment(*base, n, ctx).value;
    CHECK(rel_err(q_moment(g, n, ctx).value, mf) < ctx.tol());
    // the direct lattice sum cancels heavily but still agrees to many digits
    CHECK(rel_err(q_moment_lattice_sum(g, n, ctx).value, mf) < 1e-30);
  }
}

TEST_CASE("growth rate of the log-moments") {
  const PrecisionContext ctx(50);
  const QParam q("0.5");
  const GrowthEstimate g = growth_rate(*q_exponential(Scalar(1L), q).q_density, 12, ctx);
  CHECK(g.samples.size() == 12);
  CHECK(g.n_used == 12);
  CHECK(g.window_lo == 6);
  CHECK(g.window_hi == 12);
  Real best = g.samples[5].a_n;
  for (size_t i = 5; i < g.samples.size(); ++i) {
    const auto& s = g.samples[i];
    CHECK(rel_err(s.a_n, log(s.moment) / (s.n * s.n)) < ctx.tol());
    best = max(best, s.a_n);
  }
  CHECK(g.A_hat == best);
  CHECK_THROWS_AS(growth_rate(theta_table(q), 7, ctx), DomainError);
}

TEST_CASE("classical moments by quadrature") {
  const PrecisionContext ctx(40);
  const RealFunction rho = [](const Real& t, const PrecisionContext&) { return exp(-t); };
  CHECK(rel_err(classical_moment(rho, 0, ctx), ctx.real(1L)) < 100 * ctx.tol());
  CHECK(rel_err(classical_moment(rho, 5, ctx), ctx.real(120L)) < 100 * ctx.tol());
}
