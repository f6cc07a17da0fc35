#pragma once

// Shared truncation machinery for the series in this library.

#include <cmath>
#include <limits>
#include <string>

#include "msm/errors.hpp"
#include "msm/series.hpp"

namespace msm::detail {

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex t) {
    add_component(sum_re_, comp_re_, t.real());
    add_component(sum_im_, comp_im_, t.imag());
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

struct Term {
  Complex value;
  double magnitude;  // used by the stop rule; |value| unless cancellation matters
};

/// Geometric tail bound from the last included term and the first omitted one.
inline double tail_bound(double last, double next) {
  if (next == 0.0) return 0.0;
  if (last == 0.0) return std::numeric_limits<double>::infinity();
  const double r = next / last;
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return next / (1.0 - r);
}

/// Three-consecutive-small-terms rule; zero terms ahead of a non-zero partial
/// sum are not counted.
class StopRule {
 public:
  explicit StopRule(double tol) : tol_(tol) {}
  void observe(double magnitude, double partial_sum) {
    if (partial_sum > 0.0 && magnitude < tol_ * partial_sum) {
      ++run_;
    } else {
      run_ = 0;
    }
  }
  bool armed() const { return run_ >= 3; }
  bool accepts(double estimate, double partial_sum) const {
    return estimate <= tol_ * std::max(1.0, partial_sum);
  }

 private:
  double tol_;
  int run_ = 0;
};

/// Sums term(0), term(1), ... (each index requested exactly once, in order).
template <class TermFn>
SeriesResult sum_series(TermFn&& term, const SeriesOptions& opt,
                        const char* what, int min_terms = 0) {
  CompensatedSum sum;
  StopRule rule(opt.tol);
  Term t = term(0);
  for (int k = 0;; ++k) {
    if (k >= opt.k_max) {
      const double s = std::abs(sum.value());
      if (opt.strict) {
        throw NonConvergence(std::string(what) + ": no convergence after " +
                             std::to_string(opt.k_max) + " terms");
      }
      return {sum.value(), k, std::max(t.magnitude, opt.tol * s), false};
    }
    sum.add(t.value);
    const double s = std::abs(sum.value());
    rule.observe(t.magnitude, s);
    Term next = term(k + 1);
    if (rule.armed() && k + 1 >= min_terms) {
      const double est = tail_bound(t.magnitude, next.magnitude);
      if (rule.accepts(est, s)) {
        return {sum.value(), k + 1, est, true};
      }
    }
    t = next;
  }
}

}  // namespace msm::detail
