#include <cmath>

#include "msm/errors.hpp"
#include "msm/series.hpp"
#include "summation.hpp"

namespace msm {

namespace {

constexpr double kIndexTolerance = 1e-12;

// First index past which every Gamma argument has positive real part; the
// stop rule is not trusted before it.
int past_negative_region(const FoxWrightSpec& spec) {
  int k = 0;
  auto scan = [&k](const WeightedParam& w) {
    if (w.weight > 0.0 && w.shift.real() <= 0.0) {
      k = std::max(k, static_cast<int>(std::ceil(-w.shift.real() / w.weight)) + 2);
    }
  };
  for (const auto& w : spec.upper) scan(w);
  for (const auto& w : spec.lower) scan(w);
  return k;
}

}  // namespace

double convergence_index(const FoxWrightSpec& spec) {
  double lower = 0.0;
  double upper = 0.0;
  for (const auto& w : spec.lower) lower += w.weight;
  for (const auto& w : spec.upper) upper += w.weight;
  return lower - upper;
}

SeriesResult fox_wright(const FoxWrightSpec& spec, Complex z,
                        const SeriesOptions& opt) {
  const double delta = convergence_index(spec);
  if (delta < -1.0 - kIndexTolerance) {
    throw DivergenceError("fox_wright: convergence index " +
                          std::to_string(delta) + " < -1");
  }
  if (delta <= -1.0 + kIndexTolerance && std::abs(z) >= 1.0) {
    throw DivergenceError("fox_wright: convergence index -1 requires |z| < 1");
  }

  const bool zero_argument = (z == Complex(0.0));
  const Complex log_z = zero_argument ? Complex(0.0) : std::log(z);

  auto term = [&](int k) -> detail::Term {
    if (zero_argument && k > 0) return {0.0, 0.0};
    const double kd = static_cast<double>(k);
    Complex log_term = kd * log_z - std::lgamma(kd + 1.0);
    for (const auto& u : spec.upper) {
      const Complex arg = u.shift + u.weight * kd;
      if (is_nonpositive_integer(arg)) {
        throw PoleError("fox_wright: upper Gamma argument at a pole (k = " +
                        std::to_string(k) + ")");
      }
      log_term += log_gamma(arg);
    }
    for (const auto& l : spec.lower) {
      const Complex arg = l.shift + l.weight * kd;
      if (is_nonpositive_integer(arg)) return {0.0, 0.0};
      log_term -= log_gamma(arg);
    }
    const Complex value = std::exp(log_term);
    return {value, std::abs(value)};
  };

  if (zero_argument) {
    const detail::Term t0 = term(0);
    return {t0.value, 1, 0.0, true};
  }
  return detail::sum_series(term, opt, "fox_wright", past_negative_region(spec));
}

SeriesResult hypergeometric_pfq(std::span<const Complex> a,
                                std::span<const Complex> b, Complex z,
                                const SeriesOptions& opt) {
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  for (const Complex& bj : b) {
    if (is_nonpositive_integer(bj)) {
      throw PoleError("hypergeometric_pfq: lower parameter is a non-positive integer");
    }
  }
  // A numerator -N makes the series a polynomial of degree N, valid for every z.
  int degree = -1;
  for (const Complex& aj : a) {
    if (is_nonpositive_integer(aj)) {
      const int n = static_cast<int>(std::round(-aj.real()));
      degree = degree < 0 ? n : std::min(degree, n);
    }
  }
  if (degree >= 0) {
    Complex term = 1.0;
    Complex sum = 0.0;
    Complex comp = 0.0;
    for (int n = 0; n <= degree; ++n) {
      const Complex y = term - comp;
      const Complex t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      const double nd = static_cast<double>(n);
      Complex ratio = z / (nd + 1.0);
      for (const Complex& aj : a) ratio *= aj + nd;
      for (const Complex& bj : b) ratio /= bj + nd;
      term *= ratio;
    }
    return {sum, degree + 1, 0.0, true};
  }
  if (p > q + 1 || (p == q + 1 && std::abs(z) >= 1.0)) {
    throw DivergenceError("hypergeometric_pfq: outside the domain of convergence");
  }

  Complex current = 1.0;
  auto term = [&](int n) -> detail::Term {
    if (n > 0) {
      const double prev = static_cast<double>(n - 1);
      Complex ratio = z / static_cast<double>(n);
      for (const Complex& aj : a) ratio *= aj + prev;
      for (const Complex& bj : b) ratio /= bj + prev;
      current *= ratio;
    }
    return {current, std::abs(current)};
  };
  return detail::sum_series(term, opt, "hypergeometric_pfq");
}

}  // namespace msm
