#pragma once

// Named distributions with closed-form q-densities, plus a few lattice
// tables used as reference cases.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmoment/determinacy.hpp"
#include "qmoment/lattice.hpp"
#include "qmoment/scalar.hpp"

namespace qmoment {

struct KnownVerdict {
  std::string criterion;
  Status status;
};

struct NamedDistribution {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<QParam> q;
  DensityPtr q_density;            ///< null when no q was given
  RealFunction classical_pdf;      ///< empty when not available
  ClassicalCdf classical_cdf;      ///< members empty when not available
  ClassicalMoments known_moments;  ///< classical mu_n, empty when not available
  std::vector<KnownVerdict> known_verdicts;
};

/// f(t) = lambda e_q(-lambda t); F(t) = 1 - e_q(-lambda t);
/// rho(t) = lambda (1 - q) e_q(-lambda t) S(t), S(t) = sum_j q^j / (1 + lambda (1 - q) q^j t).
NamedDistribution q_exponential(const Scalar& lambda, const QParam& q);

/// S(t) of the q-exponential classical density.
Real qexp_S(const Real& t, const Scalar& lambda, const QParam& q, const PrecisionContext& ctx);

/// f_r(t) = q^(r(r-1)/2) lambda^r t^(r-1) e_q(-lambda t) / [r-1]_q!.
NamedDistribution q_erlang(const Scalar& lambda, long r, const QParam& q);

/// rho(t) = gamma beta^(-alpha/gamma) / Gamma(alpha/gamma) t^(alpha-1) exp(-t^gamma / beta),
/// mu_n = beta^(n/gamma) Gamma((n+alpha)/gamma) / Gamma(alpha/gamma). The q-density
/// (when q is given) comes from the distribution function P(alpha/gamma, t^gamma/beta).
NamedDistribution hyper_exponential(const Scalar& alpha, const Scalar& beta, const Scalar& gamma,
                                    std::optional<QParam> q = std::nullopt);

/// f(q^-j) = q^(j(j+1)/2) for 0 <= j <= j_max, zero elsewhere (unnormalized).
QDensity theta_table(const QParam& q, long j_max = 60);

/// f(q^-2k) = q^(k(k+1)), f(q^-i) = q^(i(i+1)) for odd i, 0 <= i <= i_max
/// (unnormalized). Satisfies the m = 2 lower bound but not the m = 1 one.
QDensity m2_pattern_table(const QParam& q, long i_max = 80);

/// Unit mass at t = 1: f(1) = 1 / (1 - q).
QDensity point_mass(const QParam& q);

using ParamMap = std::map<std::string, std::string, std::less<>>;

/// Registry lookup: "q-exponential" (lambda, q), "q-erlang" (lambda, r, q),
/// "hyper-exponential" (alpha, beta, gamma, optional q).
/// Throws std::invalid_argument for unknown names or parameters.
NamedDistribution make_named(std::string_view name, const ParamMap& params);

std::vector<std::string> registry_names();

}  // namespace qmoment
