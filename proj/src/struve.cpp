#include <cmath>

#include "msm/errors.hpp"
#include "msm/series.hpp"
#include "summation.hpp"

namespace msm {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using Extended = __float128;
#else
using Extended = long double;
#endif

struct ExtComplex {
  Extended re = 0;
  Extended im = 0;

  static ExtComplex from(Complex z) { return {z.real(), z.imag()}; }
  Complex to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  ExtComplex operator+(const ExtComplex& o) const { return {re + o.re, im + o.im}; }
  ExtComplex operator+(Extended x) const { return {re + x, im}; }
  ExtComplex operator*(const ExtComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ExtComplex operator/(const ExtComplex& o) const {
    const Extended den = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
};

Complex int_power(Complex base, int k) {
  Complex result = 1.0;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

bool integer_weight(double alpha) {
  return alpha >= 1.0 && std::abs(alpha - std::round(alpha)) < 1e-14 && alpha <= 64.0;
}

Complex leading_power(Complex z, Complex p) {
  // principal branch of (z/2)^{p+1}
  return std::exp((p + 1.0) * std::log(z / 2.0));
}

}  // namespace

Complex struve_coefficient(const StruveParams& sp, int k) {
  if (k > 0 && sp.c == Complex(0.0)) return 0.0;
  const double kd = static_cast<double>(k);
  return int_power(-sp.c, k) * reciprocal_gamma(sp.alpha * kd + sp.mu) *
         reciprocal_gamma(static_cast<double>(sp.a) * kd + sp.second_shift());
}

SeriesResult struve_generalized(const StruveParams& sp, Complex z,
                                const SeriesOptions& opt) {
  if (sp.a < 1 || !(sp.alpha > 0.0) || !(sp.xi_s > 0.0)) {
    throw DomainError("struve_generalized: requires a >= 1, alpha > 0, xi_s > 0");
  }
  if (z == Complex(0.0)) {
    if ((sp.p + 1.0).real() > 0.0) return {0.0, 1, 0.0, true};
    throw DomainError("struve_generalized: (z/2)^{p+1} is singular at z = 0");
  }
  const Complex lead = leading_power(z, sp.p);
  const Complex z2 = (z / 2.0) * (z / 2.0);

  auto direct_term = [&](int k) -> Complex {
    return struve_coefficient(sp, k) * int_power(z2, k) * lead;
  };

  if (sp.c == Complex(0.0)) {
    return {direct_term(0), 1, 0.0, true};
  }

  if (!integer_weight(sp.alpha)) {
    auto term = [&](int k) -> detail::Term {
      const Complex t = direct_term(k);
      return {t, std::abs(t)};
    };
    return detail::sum_series(term, opt, "struve_generalized");
  }

  // Integer alpha: every term ratio is rational in k. Start the recurrence
  // once all Gamma arguments have positive real part so that no pole is crossed.
  const int alpha = static_cast<int>(std::round(sp.alpha));
  const Complex q = sp.second_shift();
  int k0 = 0;
  while ((sp.alpha * k0 + sp.mu).real() <= 0.0 ||
         (static_cast<double>(sp.a) * k0 + q).real() <= 0.0) {
    ++k0;
  }

  detail::CompensatedSum head;
  detail::StopRule rule(opt.tol);
  for (int k = 0; k < k0; ++k) {
    const Complex t = direct_term(k);
    head.add(t);
  }

  const ExtComplex factor = ExtComplex::from(-sp.c) * ExtComplex::from(z2);
  const ExtComplex mu = ExtComplex::from(sp.mu);
  const ExtComplex qx = ExtComplex::from(q);
  const Complex head_value = head.value();
  ExtComplex sum = ExtComplex::from(head_value);
  ExtComplex term = ExtComplex::from(direct_term(k0));

  auto advance = [&](const ExtComplex& t, int k) {
    ExtComplex den{1, 0};
    const Extended kk = static_cast<Extended>(k);
    for (int j = 0; j < alpha; ++j) den = den * (mu + (static_cast<Extended>(alpha) * kk + j));
    for (int j = 0; j < sp.a; ++j) den = den * (qx + (static_cast<Extended>(sp.a) * kk + j));
    return t * factor / den;
  };

  for (int k = k0;; ++k) {
    if (k >= opt.k_max) {
      if (opt.strict) {
        throw NonConvergence("struve_generalized: no convergence after " +
                             std::to_string(opt.k_max) + " terms");
      }
      return {sum.to_double(), k, std::abs(term.to_double()), false};
    }
    sum = sum + term;
    const double s = std::abs(sum.to_double());
    const double mag = std::abs(term.to_double());
    rule.observe(mag, s);
    const ExtComplex next = advance(term, k);
    if (rule.armed()) {
      const double est = detail::tail_bound(mag, std::abs(next.to_double()));
      if (rule.accepts(est, s)) {
        return {sum.to_double(), k + 1, est, true};
      }
    }
    term = next;
  }
}

}  // namespace msm
