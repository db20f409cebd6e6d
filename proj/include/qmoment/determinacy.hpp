#pragma once

// Criteria deciding whether a q-density is fixed by its q-moments.
//
// The asymptotic criteria can only be observed on a finite window; their
// verdicts are labelled finite-evidence and carry that window. The two
// closed-form thresholds are exact.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmoment/lattice.hpp"
#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"
#include "qmoment/scalar.hpp"

namespace qmoment {

enum class Status { Determinate, Indeterminate, Inconclusive };
enum class ProofStrength { ExactRule, FiniteEvidence };

std::string to_string(Status s);
std::string to_string(ProofStrength s);

struct Evidence {
  std::string name;
  std::string value;
};

struct Window {
  std::string index;  ///< "j" or "n"
  long lo = 0;
  long hi = 0;
};

struct Verdict {
  Status status = Status::Inconclusive;
  std::string criterion;
  ProofStrength proof_strength = ProofStrength::FiniteEvidence;
  std::optional<Window> window;
  std::vector<Evidence> evidence;

  void add(std::string name, std::string value) { evidence.push_back({std::move(name), std::move(value)}); }
  /// Value of the named evidence item, or empty.
  std::string find(std::string_view name) const;
};

namespace criteria {
inline constexpr const char* kConditionB = "condition-B";
inline constexpr const char* kConditionC = "condition-C";
inline constexpr const char* kProp1 = "prop1-A";
inline constexpr const char* kThm2 = "thm2-logconcave";
inline constexpr const char* kThm3 = "thm3-mj";
inline constexpr const char* kProp4 = "prop4-bridge";
inline constexpr const char* kErlangRule = "erlang-rule";
inline constexpr const char* kQexpRule = "qexp-rule";
}  // namespace criteria

/// r_j = f(q^-j) / q^(j(j+1)/2), j = 0..J. Determinate when r is strictly
/// decreasing (or identically zero) on the last J/2 points and
/// r_J < 10^(-digits/4).
Verdict check_condition_B(const QDensity& f, long J, const PrecisionContext& ctx);

/// C_hat = min r_j. Indeterminate when C_hat > 0 and the minimum over the
/// last half is at least half the minimum over the first half.
Verdict check_condition_C(const QDensity& f, long J, const PrecisionContext& ctx);

/// Same rule as condition C on f(q^(-m j)) / q^(m j (j+1)/2).
Verdict check_thm3_mj(const QDensity& f, long m, long J, const PrecisionContext& ctx);

/// Margin around the critical growth rate ln(1/q)/2: 0.05 ln(1/q).
Real growth_margin(const QParam& q, const PrecisionContext& ctx);

/// Determinate when A_hat < ln(1/q)/2 - margin.
Verdict classify_prop1(const QDensity& f, long n_max, const PrecisionContext& ctx);

/// Log-concavity f(q^(-j-1)) f(q^(-j+1)) <= f(q^-j)^2 for j = 0..J together
/// with A_hat > ln(1/q)/2 + margin gives Indeterminate.
Verdict classify_thm2(const QDensity& f, long n_max, long J, const PrecisionContext& ctx);

/// Classical moments mu_n, n >= 0.
using ClassicalMoments = std::function<Real(long, const PrecisionContext&)>;

struct Prop4Result {
  Real q0;
  bool all_q = false;  ///< q0 >= 0.99: determinate for every q in the sampled sense
  Verdict verdict;
};

/// L_hat = max of ln(mu_n)/n^2 over n in [n_max/2, n_max]; q0 = exp(-2 L_hat).
/// Determinate when q < q0 (1 - 0.05).
Prop4Result classify_prop4(const ClassicalMoments& mu, long n_max, const QParam& q, const PrecisionContext& ctx);

/// Indeterminate iff q^r (1 - q) lambda <= 1, exactly.
Verdict erlang_rule(const Scalar& lambda, long r, const QParam& q);

/// Determinate iff lambda (1 - q) > 1, exactly.
Verdict qexp_rule(const Scalar& lambda, const QParam& q);

/// A grid point where the Erlang rule at r = 1 and the q-exponential rule
/// disagree.
struct RuleDisagreement {
  Scalar lambda;
  QParam q;
  Status erlang;
  Status qexp;
};
std::vector<RuleDisagreement> rule_disagreements(const std::vector<Scalar>& lambdas, const std::vector<QParam>& qs);

struct KreinDecade {
  long decade = 0;  ///< covers [10^decade, 10^(decade+1)] clipped to the range
  Real c_fit;       ///< max of -ln rho(t^2) / ln^2 t over the decade's sample points
  Real integral;    ///< contribution of the decade
};

struct KreinResult {
  Real value;  ///< integral over [t0, T]
  Real c_fit;  ///< max over all sample points with t > 1
  std::vector<KreinDecade> decades;
  /// Running integral at T and at each extra decade beyond it.
  std::vector<std::pair<Real, Real>> partials;
};

/// int_{t0}^{T} -ln rho(t^2) / (1 + t^2) dt by decade quadrature, with
/// `extra_decades` further partial integrals at 10 T, 100 T, ... .
/// Throws DomainError when rho(t^2) <= 0 or T < t0.
KreinResult krein_integral(const RealFunction& rho, const Real& t0, const Real& T, const PrecisionContext& ctx,
                           int extra_decades = 2, int samples_per_decade = 16);

}  // namespace qmoment
