#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"

using namespace qmoment;

TEST_CASE("parse and print") {
  const Precision p = Precision::from_digits(30);
  CHECK(Real::parse("0.5", p).to_string(10) == "5e-1");
  CHECK(Real::parse("-1.25e-3", p).to_string(10) == "-1.25e-3");
  CHECK(Real::parse("  42 ", p).to_long() == 42);
  CHECK_THROWS_AS(Real::parse("inf", p), std::invalid_argument);
  CHECK_THROWS_AS(Real::parse("1.5x", p), std::invalid_argument);
  CHECK_THROWS_AS(Real::parse("", p), std::invalid_argument);
}

TEST_CASE("exact string round trip") {
  const Precision p = Precision::from_digits(40);
  const Real third = Real(1L, p) / 3;
  const Real back = Real::parse(third.to_exact_string(), p);
  CHECK(back == third);
  CHECK(Real(0L, p).to_exact_string() == "0");
}

TEST_CASE("mixed precision widens") {
  const Real a(1L, Precision{64});
  const Real b(1L, Precision{256});
  CHECK((a + b).precision().bits == 256);
  Real c = a;
  c += b;
  CHECK(c.precision().bits == 256);
}

TEST_CASE("scalar arithmetic on both sides") {
  const Precision p{128};
  const Real x(4L, p);
  CHECK((1 - x) == -3);
  CHECK((1 / x) == 0.25);
  CHECK((x / 2) == 2);
  CHECK((2.0 * x) == 8);
  CHECK(x > 3);
  CHECK(x < 4.5);
}

TEST_CASE("elementary functions") {
  const PrecisionContext ctx(50);
  CHECK(testing::rel_err(exp(log(ctx.real(7L))), ctx.real(7L)) < ctx.tol());
  CHECK(pow(ctx.real(2L), 10L) == 1024);
  CHECK(pow10(-3, ctx.precision()) == Real::parse("0.001", ctx.precision()));
  CHECK(floor(ctx.parse("-1.5")) == -2);
  CHECK(testing::rel_err(zeta(2, ctx.precision()), const_pi(ctx.precision()) * const_pi(ctx.precision()) / 6) <
        ctx.tol());
}

TEST_CASE("precision context validation") {
  CHECK_THROWS_AS(PrecisionContext(14), std::invalid_argument);
  CHECK_THROWS_AS(PrecisionContext(20, 63), std::invalid_argument);
  const PrecisionContext ctx(30);
  CHECK(ctx.tol() == pow10(-20, ctx.precision()));
  CHECK(ctx.normalization_tol() == pow10(-15, ctx.precision()));
  CHECK(ctx.widened(64).precision().bits == ctx.precision().bits + 64);
  CHECK_THROWS_AS(PrecisionContext(30, 100, Real(2L, Precision{64})), std::invalid_argument);
}
