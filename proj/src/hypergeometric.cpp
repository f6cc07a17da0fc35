#include <cmath>
#include <numbers>

#include "msm/errors.hpp"
#include "msm/series.hpp"
#include "summation.hpp"

namespace msm {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

bool near_integer(Complex z, int& nearest) {
  const double r = std::round(z.real());
  if (std::abs(z.imag()) <= kPoleTolerance && std::abs(z.real() - r) <= kPoleTolerance) {
    nearest = static_cast<int>(r);
    return true;
  }
  return false;
}

// Plain Gauss series; used for |w| <= 1/2 and for terminating parameters.
Complex gauss_series(Complex a, Complex b, Complex c, double w) {
  Complex current = 1.0;
  auto term = [&](int n) -> detail::Term {
    if (n > 0) {
      const double prev = static_cast<double>(n - 1);
      current *= (a + prev) * (b + prev) / ((c + prev) * static_cast<double>(n)) * w;
    }
    return {current, std::abs(current)};
  };
  return detail::sum_series(term, SeriesOptions{.tol = 1e-16, .k_max = 100000},
                            "gauss_2f1")
      .value;
}

}  // namespace

Gauss2F1::UnitInterval::UnitInterval(Complex a, Complex b, Complex c)
    : a_(a), b_(b), c_(c) {
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    mode_ = Mode::kTerminating;
    return;
  }
  const Complex d = c - a - b;
  int m = 0;
  if (!near_integer(d, m)) {
    mode_ = Mode::kGeneral;
    d_ = d;
    const Complex num_a[] = {c, d};
    const Complex den_a[] = {c - a, c - b};
    const Complex num_b[] = {c, -d};
    const Complex den_b[] = {a, b};
    coef_a_ = gamma_ratio(num_a, den_a);
    coef_b_ = gamma_ratio(num_b, den_b);
    return;
  }

  mode_ = Mode::kLogarithmic;
  // For c - a - b = -m < 0 use Euler: F(a,b;c;w) = v^{-m} F(c-a, c-b; c; w),
  // whose parameters satisfy c' - a' - b' = m > 0.
  la_ = a;
  lb_ = b;
  if (m < 0) {
    euler_ = true;
    m = -m;
    la_ = c - a;
    lb_ = c - b;
    if (is_nonpositive_integer(la_) || is_nonpositive_integer(lb_)) {
      // Euler-transformed series terminates; handled in evaluate().
      mode_ = Mode::kTerminating;
      return;
    }
  }
  m_ = m;
  const Complex num[] = {c};
  const Complex den[] = {la_, lb_};
  log_coef_ = gamma_ratio(num, den);
  if (m_ > 0) {
    const Complex fnum[] = {static_cast<double>(m_), c};
    const Complex fden[] = {la_ + static_cast<double>(m_), lb_ + static_cast<double>(m_)};
    finite_coef_ = gamma_ratio(fnum, fden);
  }
  psi_a_ = digamma(la_ + static_cast<double>(m_));
  psi_b_ = digamma(lb_ + static_cast<double>(m_));
}

// F(a, b; a + b + m; 1 - v) for integer m >= 0, via the logarithmic connection
// formula:
//   sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) v^n * Gamma(m) Gamma(c) / (Gamma(a+m) Gamma(b+m))
//   - (-1)^m Gamma(c) / (Gamma(a) Gamma(b)) sum_n (a+m)_n (b+m)_n / (n! (n+m)!) v^n
//       * [ln v - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)].
Complex Gauss2F1::UnitInterval::logarithmic(double v) const {
  const double md = static_cast<double>(m_);
  Complex finite = 0.0;
  if (m_ > 0) {
    Complex t = 1.0;
    for (int n = 0; n < m_; ++n) {
      finite += t;
      const double nd = static_cast<double>(n);
      t *= (la_ + nd) * (lb_ + nd) / ((nd + 1.0) * (1.0 - md + nd)) * v;
    }
    finite *= finite_coef_;
  }

  const double log_v = std::log(v);
  double psi_n1 = -kEulerGamma;   // psi(n + 1)
  double psi_nm1 = -kEulerGamma;  // psi(n + m + 1)
  for (int j = 1; j <= m_; ++j) psi_nm1 += 1.0 / j;
  Complex psi_a = psi_a_;
  Complex psi_b = psi_b_;
  Complex coef = 1.0 / std::tgamma(md + 1.0);

  auto term = [&](int n) -> detail::Term {
    const double nd = static_cast<double>(n);
    if (n > 0) {
      const double prev = nd - 1.0;
      coef *= (la_ + md + prev) * (lb_ + md + prev) / (nd * (nd + md)) * v;
      psi_n1 += 1.0 / nd;
      psi_nm1 += 1.0 / (nd + md);
      psi_a += 1.0 / (la_ + md + prev);
      psi_b += 1.0 / (lb_ + md + prev);
    }
    const Complex value = coef * (log_v - psi_n1 - psi_nm1 + psi_a + psi_b);
    return {value, std::abs(value)};
  };
  const Complex series =
      detail::sum_series(term, SeriesOptions{.tol = 1e-16, .k_max = 10000},
                         "gauss_2f1 (logarithmic)")
          .value;
  // (w - 1)^m = (-v)^m
  const double sign = (m_ % 2 == 0) ? 1.0 : -1.0;
  return finite - sign * std::pow(v, md) * log_coef_ * series;
}

Complex Gauss2F1::UnitInterval::evaluate(double w, double v, Complex log_scale) const {
  // Near 1 the complement v is authoritative; w itself may have rounded to 1.
  if (w < 0.0 || w > 1.0 || !(v > 0.0)) {
    throw DomainError("gauss_2f1: internal argument outside [0, 1)");
  }
  const Complex scale = std::exp(log_scale);
  if (mode_ == Mode::kTerminating) {
    if (euler_) {
      return std::exp((c_ - a_ - b_) * std::log(v) + log_scale) *
             gauss_series(c_ - a_, c_ - b_, c_, w);
    }
    return scale * gauss_series(a_, b_, c_, w);
  }
  if (w <= 0.5) {
    return scale * gauss_series(a_, b_, c_, w);
  }
  if (mode_ == Mode::kGeneral) {
    const Complex first = gauss_series(a_, b_, 1.0 - d_, v);
    const Complex second = gauss_series(c_ - a_, c_ - b_, d_ + 1.0, v);
    const Complex value =
        coef_a_ * scale * first + coef_b_ * std::exp(d_ * std::log(v) + log_scale) * second;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw TransformError("gauss_2f1: connection formula produced a non-finite value");
    }
    return value;
  }
  const Complex value = logarithmic(v);
  if (euler_) {
    return std::exp(static_cast<double>(-m_) * std::log(v) + log_scale) * value;
  }
  return scale * value;
}

Gauss2F1::Gauss2F1(Complex a, Complex b, Complex c)
    : a_(a), b_(b), c_(c), direct_(a, b, c), pfaff_(a, c - b, c) {
  if (is_nonpositive_integer(c)) {
    throw PoleError("gauss_2f1: c is a non-positive integer");
  }
}

Complex Gauss2F1::evaluate(double w, double one_minus_w, Complex log_scale) const {
  if (!(w < 1.0) && !(w == 1.0 && one_minus_w > 0.0)) {
    throw DomainError("gauss_2f1: w must be < 1");
  }
  if (w >= 0.0) {
    return direct_.evaluate(w, one_minus_w, log_scale);
  }
  // Pfaff: F(a,b;c;w) = (1-w)^{-a} F(a, c-b; c; w/(w-1)), w/(w-1) in (0, 1).
  const double inv = 1.0 / one_minus_w;  // 1 - w/(w-1)
  const double mapped = -w * inv;
  return pfaff_.evaluate(mapped, inv, log_scale - a_ * std::log(one_minus_w));
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double w) {
  return Gauss2F1(a, b, c)(w);
}

}  // namespace msm
