#include <doctest.h>

#include "helpers.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/series.hpp"

using namespace qmoment;

TEST_CASE("geometric series") {
  const PrecisionContext ctx(50);
  const Real r = ctx.parse("0.9");
  const SeriesSum s = sum_series([&](long j) { return pow(r, j); }, 0, ctx);
  CHECK(testing::rel_err(s.sum, ctx.real(10L)) < ctx.tol());
  CHECK(s.terms > 100);
  CHECK(s.max_term == 1);
}

TEST_CASE("series starting later") {
  const PrecisionContext ctx(40);
  const Real half = ctx.parse("0.5");
  // sum_{j>=3} j 2^-j = 2 - 1/2 - 2/4 = 1
  const SeriesSum s = sum_series([&](long j) { return j * pow(half, j); }, 3, ctx);
  CHECK(testing::rel_err(s.sum, ctx.real(1L)) < ctx.tol());
}

TEST_CASE("algebraic decay is not mistaken for convergence") {
  const PrecisionContext ctx(20, 2000);
  CHECK_THROWS_AS(sum_series([&](long j) { return 1 / (ctx.real(j) * j); }, 1, ctx), NonConvergence);
}

TEST_CASE("bilateral gaussian sum") {
  const PrecisionContext ctx(50);
  // sum_j exp(-(j - 30.5)^2 / 10), peak away from the origin
  auto term = [&](long j) {
    const Real x = ctx.real(j) - ctx.parse("30.5");
    return exp(-(x * x) / 10);
  };
  const BilateralSum s = sum_bilateral(term, ctx);
  CHECK((s.j_peak == 30 || s.j_peak == 31));
  Real direct = ctx.real(0L);
  for (long j = -200; j <= 260; ++j) direct += term(j);
  CHECK(testing::rel_err(s.sum, direct) < ctx.tol());
  CHECK(s.term(s.j_peak) == s.max_term);
  CHECK(s.evaluations() == static_cast<long>(s.terms.size()));
}

TEST_CASE("bilateral lattice moment shape") {
  const PrecisionContext ctx(50);
  // q^j / (1 + q^(2j)) summed over Z, symmetric around 0
  const Real q = ctx.parse("0.5");
  auto term = [&](long j) {
    const Real t = pow(q, j);
    return t / (1 + t * t);
  };
  const BilateralSum s = sum_bilateral(term, ctx);
  Real direct = ctx.real(0L);
  for (long j = -300; j <= 300; ++j) direct += term(j);
  CHECK(testing::rel_err(s.sum, direct) < ctx.tol());
  CHECK(s.j_peak == 0);
}

TEST_CASE("divergent series exhausts the budget") {
  const PrecisionContext ctx(20, 200);
  CHECK_THROWS_AS(sum_series([&](long) { return ctx.real(1L); }, 0, ctx), NonConvergence);
  CHECK_THROWS_AS(sum_bilateral([&](long) { return ctx.real(1L); }, ctx), NonConvergence);
}
