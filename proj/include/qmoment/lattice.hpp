#pragma once

// q-densities seen through their values on the lattice {q^j : j in Z}.

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "qmoment/precision.hpp"
#include "qmoment/qcore.hpp"
#include "qmoment/real.hpp"
#include "qmoment/scalar.hpp"
#include "qmoment/series.hpp"

namespace qmoment {

class QDensity {
 public:
  /// Closed form t -> f(t); only ever called at t = q^j.
  using Callable = RealFunction;

  /// f(q^j) = values[j - j_min] for j_min <= j <= j_max, zero elsewhere.
  struct Table {
    long j_min = 0;
    long j_max = 0;
    std::vector<Scalar> values;
  };

  /// base plus alpha * c_k at j = -m k (k >= 0), c_k the Euler coefficients
  /// of the witness construction. Never materialized.
  struct Composite {
    std::shared_ptr<const QDensity> base;
    long m = 1;
    Real alpha;
  };

  enum class Kind { Callable, Table, Composite };

  static QDensity callable(QParam q, Callable f, bool normalized = true);
  static QDensity table(QParam q, long j_min, std::vector<Scalar> values, bool normalized = true);
  static QDensity composite(std::shared_ptr<const QDensity> base, long m, Real alpha);

  const QParam& q() const { return q_; }
  bool normalized() const { return normalized_; }
  Kind kind() const { return static_cast<Kind>(form_.index()); }

  const Callable* as_callable() const { return std::get_if<Callable>(&form_); }
  const Table* as_table() const { return std::get_if<Table>(&form_); }
  const Composite* as_composite() const { return std::get_if<Composite>(&form_); }

 private:
  QDensity(QParam q, bool normalized, std::variant<Callable, Table, Composite> form)
      : q_(std::move(q)), normalized_(normalized), form_(std::move(form)) {}

  QParam q_;
  bool normalized_;
  std::variant<Callable, Table, Composite> form_;
};

using DensityPtr = std::shared_ptr<const QDensity>;

/// f(q^j).
Real eval_lattice(const QDensity& f, long j, const PrecisionContext& ctx);

/// F(x) = x (1 - q) sum_{j>=0} f(x q^j) q^j. Table and Composite densities
/// are only defined on the lattice, so x must be a lattice point for them
/// (DomainError otherwise).
Real cdf(const QDensity& f, const Real& x, const PrecisionContext& ctx);

/// F(q^k).
Real cdf_lattice(const QDensity& f, long k, const PrecisionContext& ctx);

/// (F(t) - F(q t)) / (t (1 - q)).
Real q_derivative(const RealFunction& F, const Real& t, const QParam& q, const PrecisionContext& ctx);

/// The bilateral sum (1 - q) sum_j f(q^j) q^j with its individual terms.
/// Table densities are summed exactly over their window.
BilateralSum lattice_mass_sum(const QDensity& f, const PrecisionContext& ctx);

/// Total mass of f.
Real improper_q_integral(const QDensity& f, const PrecisionContext& ctx);

struct LatticeDistribution {
  QParam q;
  long j_lo = 0;
  std::vector<Real> masses;  ///< masses[i] = P{X = q^(j_lo + i)}
  Real total;

  long j_hi() const { return j_lo + static_cast<long>(masses.size()) - 1; }
  Real mass(long j) const;
};

/// p_j = f(q^j) q^j (1 - q), taken from the same summation as the total
/// mass. Throws NotNormalized when the total misses one by more than
/// ctx.normalization_tol().
LatticeDistribution to_discrete(const QDensity& f, const PrecisionContext& ctx);

struct LatticeWindow {
  long lo = -40;
  long hi = 40;
};

/// |f(q^j) - g(q^j)| <= tol max(1, |f(q^j)|) on the window; tol defaults
/// to 10^(15 - digits). Throws QMismatch when the lattices differ.
bool lattice_equiv(const QDensity& f, const QDensity& g, const PrecisionContext& ctx, LatticeWindow window = {},
                   const std::optional<Real>& tol = std::nullopt);

/// Classical distribution function, with its complement when one is
/// available in closed form (used where F is close to one).
struct ClassicalCdf {
  RealFunction cdf;
  RealFunction survival;
};

/// The q-density whose lattice values are (F(q^j) - F(q^(j+1))) / (q^j (1 - q)).
QDensity q_density_of_classical(ClassicalCdf F, QParam q);

/// Table holding the lattice values of f on [lo, hi]. The values keep the
/// full working precision (exact decimal expansions of the binary values).
QDensity materialize(const QDensity& f, long lo, long hi, const PrecisionContext& ctx);

}  // namespace qmoment
