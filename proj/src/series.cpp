#include "qmoment/series.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "qmoment/errors.hpp"

namespace qmoment {

namespace {

// Tracks the stop rule along one direction of a series.
class SideMonitor {
 public:
  SideMonitor(const PrecisionContext& ctx, int k_stop) : ctx_(ctx), k_stop_(k_stop) {}

  // Feeds the next term in walking order; returns true once the side is closed.
  bool feed(const Real& term, const Real& partial_sum, const Real& max_term) {
    const Real magnitude = abs(term);
    recent_.push_back(magnitude);
    if (static_cast<int>(recent_.size()) > k_stop_ + 1) recent_.pop_front();

    if (magnitude.is_zero()) {
      rate_ = Real(0L, ctx_.precision());
      ++streak_;
      return streak_ >= k_stop_;
    }
    // Geometric decay estimate over the window.
    const Real& oldest = recent_.front();
    const long span = static_cast<long>(recent_.size()) - 1;
    bool decaying = false;
    if (span > 0 && !oldest.is_zero() && magnitude < oldest) {
      Real ratio = magnitude / oldest;
      rate_ = span == 1 ? ratio : exp(log(ratio) / span);
      decaying = rate_ < 1;
    }
    if (!decaying) {
      streak_ = 0;
      return false;
    }
    Real scale = abs(partial_sum);
    Real floor = max_term;
    mpfr_mul_2si(floor.get(), floor.get(), -static_cast<long>(ctx_.precision().bits), MPFR_RNDN);
    if (floor > scale) scale = floor;
    Real threshold = ctx_.tol() * scale * (1 - rate_) / 2;
    if (magnitude <= threshold) {
      ++streak_;
    } else {
      streak_ = 0;
    }
    return streak_ >= k_stop_;
  }

  // Remainder estimate after the last fed term.
  Real tail_estimate() const {
    if (recent_.empty() || recent_.back().is_zero()) return Real(0L, ctx_.precision());
    if (rate_ >= 1) return recent_.back() * k_stop_;
    return recent_.back() * rate_ / (1 - rate_);
  }

 private:
  const PrecisionContext& ctx_;
  int k_stop_;
  int streak_ = 0;
  std::deque<Real> recent_;
  Real rate_{Precision{64}};
};

}  // namespace

SeriesSum sum_series(const IndexedTerm& term, long start, const PrecisionContext& ctx, int k_stop) {
  SeriesSum out{Real(ctx.precision()), 0, Real(ctx.precision()), Real(ctx.precision())};
  SideMonitor monitor(ctx, k_stop);
  for (long j = start;; ++j) {
    if (out.terms >= ctx.max_terms()) {
      throw NonConvergence("series did not converge within " + std::to_string(ctx.max_terms()) + " terms");
    }
    Real t = ctx.lift(term(j));
    ++out.terms;
    out.sum += t;
    if (abs(t) > out.max_term) out.max_term = abs(t);
    if (monitor.feed(t, out.sum, out.max_term)) break;
  }
  out.tail_bound = monitor.tail_estimate();
  return out;
}

BilateralSum sum_bilateral(const IndexedTerm& term, const PrecisionContext& ctx, const BilateralOptions& options) {
  const long radius_cap = std::min(options.scan_radius_max, ctx.max_terms() / 4);
  std::deque<Real> values;  // values[i] = term(lo + i)
  long lo = 0;
  long hi = -1;
  Real running(ctx.precision());
  Real max_term(ctx.precision());

  auto evaluations = [&] { return hi - lo + 1; };
  auto check_budget = [&] {
    if (evaluations() > ctx.max_terms()) {
      throw NonConvergence("bilateral series did not converge within " + std::to_string(ctx.max_terms()) +
                           " terms (lattice window [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
  };
  auto push_right = [&] {
    ++hi;
    values.push_back(ctx.lift(term(hi)));
    running += values.back();
    if (abs(values.back()) > max_term) max_term = abs(values.back());
    check_budget();
  };
  auto push_left = [&] {
    --lo;
    values.push_front(ctx.lift(term(lo)));
    running += values.front();
    if (abs(values.front()) > max_term) max_term = abs(values.front());
    check_budget();
  };
  auto at = [&](long j) -> const Real& { return values[static_cast<size_t>(j - lo)]; };

  // Initial scan window [-r, r].
  long radius = std::max(1L, std::min(options.scan_radius, radius_cap));
  push_right();
  while (hi < radius) push_right();
  while (lo > -radius) push_left();

  long peak = 0;
  auto locate_peak = [&] {
    Real best(ctx.precision());
    bool found = false;
    for (long j = lo; j <= hi; ++j) {
      const Real m = abs(at(j));
      if (!found || m > best) {
        best = m;
        peak = j;
        found = true;
      }
    }
    return !best.is_zero();
  };
  bool nonzero = locate_peak();
  while (radius < radius_cap && (!nonzero || peak == lo || peak == hi)) {
    radius = std::min(radius * 2, radius_cap);
    while (hi < radius) push_right();
    while (lo > -radius) push_left();
    nonzero = locate_peak();
  }

  BilateralSum out;
  if (!nonzero) {
    out.sum = Real(ctx.precision());
    out.j_lo = lo;
    out.j_hi = hi;
    out.j_peak = 0;
    out.terms.assign(values.begin(), values.end());
    out.tail_bound = Real(ctx.precision());
    out.max_term = Real(ctx.precision());
    return out;
  }

  // Walk outward from the peak on each side.
  SideMonitor right(ctx, options.k_stop);
  SideMonitor left(ctx, options.k_stop);
  bool right_done = false;
  bool left_done = false;
  long r = peak;
  long l = peak;
  while (!right_done || !left_done) {
    if (!right_done) {
      ++r;
      if (r > hi) push_right();
      right_done = right.feed(at(r), running, max_term);
    }
    if (!left_done) {
      --l;
      if (l < lo) push_left();
      left_done = left.feed(at(l), running, max_term);
    }
  }

  out.j_lo = lo;
  out.j_hi = hi;
  out.j_peak = peak;
  out.terms.assign(values.begin(), values.end());
  out.sum = Real(ctx.precision());
  for (const Real& t : out.terms) out.sum += t;
  out.tail_bound = right.tail_estimate() + left.tail_estimate();
  out.max_term = max_term;
  return out;
}

}  // namespace qmoment
