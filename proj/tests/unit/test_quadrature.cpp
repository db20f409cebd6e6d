#include <doctest.h>

#include "helpers.hpp"
#include "qmoment/quadrature.hpp"

using namespace qmoment;
using testing::rel_err;

TEST_CASE("Gauss-Legendre rules") {
  const Precision p = Precision::from_digits(50);
  for (int n : {16, 32, 64}) {
    const auto& rule = gauss_legendre(n, p);
    REQUIRE(rule.nodes.size() == static_cast<size_t>(n));
    Real w(0L, p);
    for (const auto& x : rule.weights) w += x;
    CHECK(abs(w - 2) < pow10(-45, p));
    // exact for x^(2n-2)
    Real m(0L, p);
    for (int i = 0; i < n; ++i) m += rule.weights[i] * pow(rule.nodes[i], 2L * n - 2);
    CHECK(rel_err(m, Real(2L, p) / (2 * n - 1)) < pow10(-45, p));
  }
  // shared instance
  CHECK(&gauss_legendre(16, p) == &gauss_legendre(16, p));
}

TEST_CASE("finite interval") {
  const PrecisionContext ctx(50);
  const Real tiny = pow10(-60, ctx.precision());
  const Real v = integrate([](const Real& x) { return exp(x); }, ctx.real(0L), ctx.real(1L), ctx, tiny);
  CHECK(rel_err(v, exp(ctx.real(1L)) - 1) < ctx.tol());
  // kink at 1/3 forces bisection; a loose tolerance lets it settle
  const PrecisionContext loose(30, 20000, Real::parse("1e-6", ctx.precision()));
  const Real third = loose.real(1L) / 3;
  const Real k = integrate([&](const Real& x) { return abs(x - third); }, loose.real(0L), loose.real(1L), loose,
                           pow10(-8, loose.precision()));
  CHECK(rel_err(k, loose.real(5L) / 18) < 1e-6);
}

TEST_CASE("half line in decades") {
  const PrecisionContext ctx(40);
  // int t^3 e^-t dt = 6
  const auto r = integrate_half_line([](const Real& t) { return pow(t, 3L) * exp(-t); }, ctx);
  CHECK(rel_err(r.value, ctx.real(6L)) < 100 * ctx.tol());
  CHECK(r.first_decade < 0);
  CHECK(r.last_decade >= 2);
  // int e^(-t^2) dt = sqrt(pi)/2
  const auto g = integrate_half_line([](const Real& t) { return exp(-(t * t)); }, ctx);
  CHECK(rel_err(g.value, sqrt(const_pi(ctx.precision())) / 2) < 100 * ctx.tol());
}

TEST_CASE("bounded range in decades") {
  const PrecisionContext ctx(40);
  // int_2^5000 dt / t = ln 2500
  const auto r = integrate_decades([](const Real& t) { return 1 / t; }, ctx.real(2L), ctx.real(5000L), ctx);
  CHECK(rel_err(r.value, log(ctx.real(2500L))) < 100 * ctx.tol());
  CHECK(r.first_decade == 0);
  CHECK(r.last_decade == 3);
  Real s = ctx.real(0L);
  for (const auto& d : r.per_decade) s += d;
  CHECK(rel_err(s, r.value) < ctx.tol());
}
