#include <doctest.h>

#include "helpers.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/special.hpp"

using namespace qmoment;
using testing::rel_err;

namespace {

Real mpfr_lgamma_ref(const Real& x) {
  Real r(x.precision());
  mpfr_lngamma(r.get(), x.get(), MPFR_RNDN);
  return r;
}

// Upper incomplete gamma Gamma(a, x) / Gamma(a) from MPFR.
Real mpfr_upper_ref(const Real& a, const Real& x) {
  const Precision wide = a.precision().widened(256);
  Real up(wide);
  Real g(wide);
  mpfr_gamma_inc(up.get(), a.with_precision(wide).get(), x.with_precision(wide).get(), MPFR_RNDN);
  mpfr_gamma(g.get(), a.with_precision(wide).get(), MPFR_RNDN);
  return (up / g).with_precision(a.precision());
}

}  // namespace

TEST_CASE("log gamma against MPFR") {
  const PrecisionContext ctx(50);
  for (const char* xs : {"0.001", "0.5", "1", "2", "3.7", "12.25", "1e3", "123456.789"}) {
    CAPTURE(xs);
    const Real x = ctx.parse(xs);
    const Real want = mpfr_lgamma_ref(x);
    if (abs(want) > 1e-3) {
      CHECK(rel_err(log_gamma(x, ctx), want) < ctx.tol());
    } else {
      CHECK(abs(log_gamma(x, ctx) - want) < ctx.tol());
    }
  }
  CHECK(abs(log_gamma(ctx.real(1L), ctx)) < ctx.tol());
  CHECK(rel_err(log_gamma(ctx.parse("0.5"), ctx),
                ctx.parse("0.572364942924700087071713675676529355823647406457655785756812")) < ctx.tol());
  CHECK_THROWS_AS(log_gamma(ctx.real(0L), ctx), DomainError);
  CHECK_THROWS_AS(log_gamma(ctx.real(-2L), ctx), DomainError);
}

TEST_CASE("regularized incomplete gamma reference values") {
  const PrecisionContext ctx(50);
  const Real tight = pow10(-40, ctx.precision());
  {
    const auto r = regularized_gamma(ctx.parse("2.5"), ctx.parse("0.5"), ctx);
    CHECK(rel_err(r.p, ctx.parse("0.037434226752703631042917910102580765412700678153382")) < tight);
  }
  {
    const auto r = regularized_gamma(ctx.parse("2.5"), ctx.real(30L), ctx);
    CHECK(rel_err(r.q, ctx.parse("1.215456977718303894834852999837757703532238626304e-11")) < tight);
  }
  {
    const auto r = regularized_gamma(ctx.real(100L), ctx.real(90L), ctx);
    CHECK(rel_err(r.p, ctx.parse("0.15822098918643016810496969967091053169982334574335")) < tight);
  }
  {
    const auto r = regularized_gamma(ctx.parse("0.3"), ctx.parse("1e-5"), ctx);
    CHECK(rel_err(r.p, ctx.parse("0.035235360615562571613536452001889080941244989396884")) < tight);
  }
}

TEST_CASE("incomplete gamma against MPFR over a grid") {
  const PrecisionContext ctx(40);
  for (const char* as : {"0.25", "1", "2.5", "7", "40"}) {
    for (const char* xs : {"1e-3", "0.5", "2", "9", "45", "200"}) {
      CAPTURE(as);
      CAPTURE(xs);
      const Real a = ctx.parse(as);
      const Real x = ctx.parse(xs);
      const auto r = regularized_gamma(a, x, ctx);
      const Real q_ref = mpfr_upper_ref(a, x);
      CHECK(rel_err(r.q, q_ref) < 1000 * ctx.tol());
      CHECK(abs(r.p + r.q - 1) < 10 * ctx.tol());
      CHECK(r.p >= 0);
      CHECK(r.q >= 0);
    }
  }
}

TEST_CASE("incomplete gamma edges") {
  const PrecisionContext ctx(30);
  const auto zero = regularized_gamma(ctx.real(2L), ctx.real(0L), ctx);
  CHECK(zero.p == 0);
  CHECK(zero.q == 1);
  // a = 1: Q = exp(-x)
  const auto one = regularized_gamma(ctx.real(1L), ctx.real(3L), ctx);
  CHECK(rel_err(one.q, exp(ctx.real(-3L))) < ctx.tol());
}
