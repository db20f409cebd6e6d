#include "qmoment/zoo.hpp"

#include <stdexcept>

#include "qmoment/errors.hpp"
#include "qmoment/qcore.hpp"
#include "qmoment/series.hpp"
#include "qmoment/special.hpp"

namespace qmoment {

namespace {

void require_positive(const Scalar& x, const char* name) {
  if (!(x.exact() > 0)) throw DomainError(std::string(name) + " must be positive, got " + x.text());
}

Rational rational_pow(const Rational& x, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

Real qexp_S(const Real& t, const Scalar& lambda, const QParam& q, const PrecisionContext& ctx) {
  const Real qv = q.value(ctx);
  const Real c = lambda.value(ctx) * (1 - qv) * ctx.lift(t);
  Real qj = ctx.real(1L);
  long next = 0;
  return sum_series(
             [&](long j) {
               while (next < j) {
                 qj *= qv;
                 ++next;
               }
               return qj / (1 + c * qj);
             },
             0, ctx)
      .sum;
}

NamedDistribution q_exponential(const Scalar& lambda, const QParam& q) {
  require_positive(lambda, "lambda");
  NamedDistribution d;
  d.name = "q-exponential";
  d.params = {{"lambda", lambda.text()}, {"q", q.text()}};
  d.q = q;
  d.q_density = std::make_shared<const QDensity>(QDensity::callable(
      q, [lambda, q](const Real& t, const PrecisionContext& ctx) {
        const Real l = lambda.value(ctx);
        return l * e_q(-(l * t), q, ctx);
      }));
  d.classical_cdf.cdf = [lambda, q](const Real& t, const PrecisionContext& ctx) {
    return 1 - e_q(-(lambda.value(ctx) * t), q, ctx);
  };
  d.classical_cdf.survival = [lambda, q](const Real& t, const PrecisionContext& ctx) {
    return e_q(-(lambda.value(ctx) * t), q, ctx);
  };
  d.classical_pdf = [lambda, q](const Real& t, const PrecisionContext& ctx) {
    const Real l = lambda.value(ctx);
    return l * (1 - q.value(ctx)) * e_q(-(l * t), q, ctx) * qexp_S(t, lambda, q, ctx);
  };
  d.known_verdicts.push_back({criteria::kQexpRule, qexp_rule(lambda, q).status});
  return d;
}

NamedDistribution q_erlang(const Scalar& lambda, long r, const QParam& q) {
  require_positive(lambda, "lambda");
  if (r < 1) throw DomainError("q-erlang: r must be at least 1");
  NamedDistribution d;
  d.name = "q-erlang";
  d.params = {{"lambda", lambda.text()}, {"r", std::to_string(r)}, {"q", q.text()}};
  d.q = q;
  const Rational coefficient = rational_pow(q.exact(), r * (r - 1) / 2) * rational_pow(lambda.exact(), r);
  d.q_density = std::make_shared<const QDensity>(QDensity::callable(
      q, [lambda, r, q, coefficient](const Real& t, const PrecisionContext& ctx) {
        const Real c = to_real(coefficient, ctx.precision()) / q_factorial(r - 1, q, ctx);
        return c * pow(ctx.lift(t), r - 1) * e_q(-(lambda.value(ctx) * t), q, ctx);
      }));
  d.known_verdicts.push_back({criteria::kErlangRule, erlang_rule(lambda, r, q).status});
  return d;
}

NamedDistribution hyper_exponential(const Scalar& alpha, const Scalar& beta, const Scalar& gamma,
                                    std::optional<QParam> q) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  NamedDistribution d;
  d.name = "hyper-exponential";
  d.params = {{"alpha", alpha.text()}, {"beta", beta.text()}, {"gamma", gamma.text()}};
  if (q) d.params.push_back({"q", q->text()});
  d.q = q;

  // ln of gamma beta^(-alpha/gamma) / Gamma(alpha/gamma)
  auto log_norm = [alpha, beta, gamma](const PrecisionContext& ctx) {
    const Real a = alpha.value(ctx);
    const Real g = gamma.value(ctx);
    return log(g) - a / g * log(beta.value(ctx)) - log_gamma(a / g, ctx);
  };
  d.classical_pdf = [alpha, beta, gamma, log_norm](const Real& t, const PrecisionContext& ctx) {
    if (!(t > 0)) return ctx.real(0L);
    const Real lt = log(ctx.lift(t));
    return exp(log_norm(ctx) + (alpha.value(ctx) - 1) * lt - exp(gamma.value(ctx) * lt) / beta.value(ctx));
  };
  auto incomplete = [alpha, beta, gamma](const Real& t, const PrecisionContext& ctx) {
    const Real g = gamma.value(ctx);
    const Real x = t > 0 ? pow(ctx.lift(t), g) / beta.value(ctx) : ctx.real(0L);
    return regularized_gamma(alpha.value(ctx) / g, x, ctx);
  };
  d.classical_cdf.cdf = [incomplete](const Real& t, const PrecisionContext& ctx) { return incomplete(t, ctx).p; };
  d.classical_cdf.survival = [incomplete](const Real& t, const PrecisionContext& ctx) {
    return incomplete(t, ctx).q;
  };
  d.known_moments = [alpha, beta, gamma](long n, const PrecisionContext& ctx) {
    const Real a = alpha.value(ctx);
    const Real g = gamma.value(ctx);
    return exp(ctx.real(n) / g * log(beta.value(ctx)) + log_gamma((n + a) / g, ctx) - log_gamma(a / g, ctx));
  };
  const Status classical = gamma.exact() < Rational(1, 2) ? Status::Indeterminate : Status::Determinate;
  d.known_verdicts.push_back({"classical-moment", classical});
  if (q) {
    d.q_density = std::make_shared<const QDensity>(q_density_of_classical(d.classical_cdf, *q));
    d.known_verdicts.push_back({criteria::kProp4, Status::Determinate});
  }
  return d;
}

QDensity theta_table(const QParam& q, long j_max) {
  if (j_max < 0) throw DomainError("theta_table: j_max must be non-negative");
  std::vector<Scalar> values;
  for (long i = -j_max; i <= 0; ++i) {
    const long j = -i;
    values.emplace_back(rational_pow(q.exact(), j * (j + 1) / 2));
  }
  return QDensity::table(q, -j_max, std::move(values), false);
}

QDensity m2_pattern_table(const QParam& q, long i_max) {
  if (i_max < 0) throw DomainError("m2_pattern_table: i_max must be non-negative");
  std::vector<Scalar> values;
  for (long lattice = -i_max; lattice <= 0; ++lattice) {
    const long i = -lattice;
    const long k = i / 2;
    values.emplace_back(rational_pow(q.exact(), i % 2 == 0 ? k * (k + 1) : i * (i + 1)));
  }
  return QDensity::table(q, -i_max, std::move(values), false);
}

QDensity point_mass(const QParam& q) {
  std::vector<Scalar> values{Scalar(Rational(1) / (1 - q.exact()))};
  return QDensity::table(q, 0, std::move(values), true);
}

namespace {

const std::string& need(const ParamMap& params, const char* key, std::string_view name) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument(std::string(name) + " needs parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown(const ParamMap& params, std::initializer_list<const char*> known, std::string_view name) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument(std::string(name) + " has no parameter '" + key + "'");
  }
}

long parse_long(const std::string& text, const char* key) {
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument(std::string("parameter '") + key + "' must be an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

NamedDistribution make_named(std::string_view name, const ParamMap& params) {
  if (name == "q-exponential") {
    reject_unknown(params, {"lambda", "q"}, name);
    return q_exponential(Scalar::parse(need(params, "lambda", name)), QParam(need(params, "q", name)));
  }
  if (name == "q-erlang") {
    reject_unknown(params, {"lambda", "r", "q"}, name);
    return q_erlang(Scalar::parse(need(params, "lambda", name)), parse_long(need(params, "r", name), "r"),
                    QParam(need(params, "q", name)));
  }
  if (name == "hyper-exponential") {
    reject_unknown(params, {"alpha", "beta", "gamma", "q"}, name);
    std::optional<QParam> q;
    if (auto it = params.find("q"); it != params.end()) q.emplace(it->second);
    return hyper_exponential(Scalar::parse(need(params, "alpha", name)), Scalar::parse(need(params, "beta", name)),
                             Scalar::parse(need(params, "gamma", name)), q);
  }
  std::string known;
  for (const auto& n : registry_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string> registry_names() { return {"q-exponential", "q-erlang", "hyper-exponential"}; }

}  // namespace qmoment
