#include "msm/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "msm/errors.hpp"
#include "msm/series.hpp"

namespace msm {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool is_zero(Complex z) { return z == Complex(0.0); }

// Positive real base raised to a complex power.
Complex real_pow(double base, Complex e) {
  if (e == Complex(0.0)) return 1.0;
  return std::exp(e * std::log(base));
}

// F3(lambda, lambda2, xi1, xi2; gamma; 1 - u, 1 - 1/u) for u in (0, 1]. Both
// operators reduce to this form: u = t/x on the left, u = x/t on the right.
class Kernel {
 public:
  enum class Mode { kUnit, kFirst, kSecond, kGeneral };

  explicit Kernel(const MsmParams& m) : m_(m) {
    const bool first_dead = is_zero(m.lambda) || is_zero(m.xi1);
    const bool second_dead = is_zero(m.lambda2) || is_zero(m.xi2);
    if (first_dead && second_dead) {
      mode_ = Mode::kUnit;
    } else if (second_dead) {
      mode_ = Mode::kFirst;
      gauss_.emplace_back(m.lambda, m.xi1, m.gamma);
    } else if (first_dead) {
      // 2F1(l2, x2; g; 1 - 1/u) = u^l2 2F1(l2, g - x2; g; 1 - u)
      mode_ = Mode::kSecond;
      gauss_.emplace_back(m.lambda2, m.gamma - m.xi2, m.gamma);
    } else {
      mode_ = Mode::kGeneral;
    }
  }

  Mode mode() const { return mode_; }
  bool global() const { return mode_ != Mode::kGeneral; }

  // Exponents kappa with K(u) ~ sum u^kappa as u -> 0 (log factors aside).
  std::vector<Complex> exponents_at_zero() const {
    switch (mode_) {
      case Mode::kUnit:
        return {0.0};
      case Mode::kFirst:
        if (is_nonpositive_integer(m_.lambda) || is_nonpositive_integer(m_.xi1)) {
          return {0.0};
        }
        return {0.0, m_.gamma - m_.lambda - m_.xi1};
      case Mode::kSecond:
        if (is_nonpositive_integer(m_.lambda2) ||
            is_nonpositive_integer(m_.gamma - m_.xi2)) {
          return {m_.lambda2};
        }
        return {m_.lambda2, m_.xi2};
      case Mode::kGeneral:
        break;
    }
    return {};
  }

  // exp(log_scale) * K(u).
  Complex operator()(double u, double one_minus_u, Complex log_scale = 0.0) const {
    switch (mode_) {
      case Mode::kUnit:
        return std::exp(log_scale);
      case Mode::kFirst:
        return gauss_.front().evaluate(one_minus_u, u, log_scale);
      case Mode::kSecond:
        return gauss_.front().evaluate(one_minus_u, u, log_scale + m_.lambda2 * std::log(u));
      case Mode::kGeneral:
        break;
    }
    const double w = one_minus_u;
    const double z = -one_minus_u / u;
    if (!(std::abs(z) < 1.0)) {
      throw DomainError("kernel_value: Appell series diverges at t/x = " +
                        sci(u) + " and no collapse applies");
    }
    return std::exp(log_scale) *
           appell_f3(m_.lambda, m_.lambda2, m_.xi1, m_.xi2, m_.gamma, w, z).value;
  }

 private:
  MsmParams m_;
  Mode mode_ = Mode::kUnit;
  std::vector<Gauss2F1> gauss_;  // at most one; Gauss2F1 has no default state
};

void check_common(const MsmParams& msm, double x, const char* what) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(what) + ": x must be positive");
  }
  if (!(msm.gamma.real() > 0.0)) {
    throw DomainError(std::string(what) + ": requires Re(gamma) > 0");
  }
}

double restricted_fraction(const OperatorOptions& opt, const char* what) {
  const double r = *opt.restricted_support;
  if (!(r > 0.5 && r < 1.0)) {
    throw DomainError(std::string(what) + ": restricted support fraction must lie in (1/2, 1)");
  }
  return r;
}

// Integrand exponent e (in u) is kernel exponent + `shift`; margin is Re(e) + 1.
double zero_margin(const Kernel& kernel, Complex shift) {
  double margin = std::numeric_limits<double>::infinity();
  for (Complex kappa : kernel.exponents_at_zero()) {
    margin = std::min(margin, (kappa + shift).real() + 1.0);
  }
  return margin;
}

// int_0^1 (1 - u)^(gamma-1) u^power K(u) f(scale(u)) du, or over (r, 1) in
// restricted mode.
QuadratureResult unit_integral(const Kernel& kernel, const MsmParams& msm,
                               Complex power, Complex declared_shift,
                               const std::function<Complex(double)>& f_of_u,
                               const OperatorOptions& opt, const char* what) {
  const Complex gm1 = msm.gamma - 1.0;
  if (opt.restricted_support) {
    const double r = restricted_fraction(opt, what);
    const double width = 1.0 - r;
    UnitIntegrand g = [&](double y, double one_minus_y) -> Complex {
      const double u = r + width * y;
      const double one_minus_u = width * one_minus_y;
      return width * real_pow(one_minus_u, gm1) * real_pow(u, power) *
             kernel(u, one_minus_u) * f_of_u(u);
    };
    return integrate_unit(g, {1.0, msm.gamma.real()}, opt.quadrature);
  }
  if (!kernel.global()) {
    throw DomainError(std::string(what) +
                      ": kernel does not collapse; the Appell series only converges on "
                      "part of the range (use restricted support)");
  }
  const double margin = zero_margin(kernel, power + declared_shift);
  if (!(margin > 0.0)) {
    throw ConvergenceError(std::string(what) +
                           ": integral diverges for the declared exponent (margin " +
                           sci(margin) + ")");
  }
  // The weights and the declared power of f are folded into the kernel's
  // exponent so that large and small factors never meet in floating point.
  UnitIntegrand g = [&](double u, double one_minus_u) -> Complex {
    const Complex fu = f_of_u(u);
    if (fu == Complex(0.0)) return 0.0;
    const double log_u = std::log(u);
    const Complex log_scale = gm1 * std::log(one_minus_u) + (power + declared_shift) * log_u;
    return kernel(u, one_minus_u, log_scale) * std::exp(std::log(fu) - declared_shift * log_u);
  };
  return integrate_unit(g, {margin, msm.gamma.real()}, opt.quadrature);
}

QuadratureResult scaled(QuadratureResult r, Complex factor) {
  r.value *= factor;
  r.abs_error_estimate *= std::abs(factor);
  return r;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

struct Difference {
  Complex value;
  double quadrature_error = 0.0;
  int nodes = 0;
};

template <class Inner>
Difference central_difference(const Inner& inner, int n, double x, double h) {
  Difference d;
  for (int j = 0; j <= n; ++j) {
    const QuadratureResult r = inner(x + (0.5 * n - j) * h);
    const double c = binomial(n, j) * ((j % 2) ? -1.0 : 1.0);
    d.value += c * r.value;
    d.quadrature_error += std::abs(c) * r.abs_error_estimate;
    d.nodes += r.nodes;
  }
  const double hn = std::pow(h, n);
  d.value /= hn;
  d.quadrature_error /= hn;
  return d;
}

QuadratureResult derivative(const MsmParams& msm, const Integrand& f, double x,
                            const OperatorOptions& opt, Side side) {
  const char* what = side == Side::kLeft ? "msm_derivative_left" : "msm_derivative_right";
  if (!(x > 0.0)) throw DomainError(std::string(what) + ": x must be positive");
  const int n = derivative_order(msm.gamma);
  const MsmParams inner_params = inner_parameters(msm, side);

  OperatorOptions inner_opt = opt;
  inner_opt.quadrature.tol = std::min(opt.quadrature.tol, 1e-13);
  inner_opt.quadrature.strict = false;
  auto inner = [&](double y) {
    return side == Side::kLeft ? msm_integral_left(inner_params, f, y, inner_opt)
                               : msm_integral_right(inner_params, f, y, inner_opt);
  };

  const double sign = (side == Side::kRight && n % 2) ? -1.0 : 1.0;
  const double tol = std::max(opt.quadrature.tol, 1e-4);
  if (n == 0) {
    QuadratureResult r = inner(x);
    r.converged = r.abs_error_estimate <= tol * std::max(1.0, std::abs(r.value));
    return r;
  }

  const double h0 = 0.01 * x;
  const Difference d0 = central_difference(inner, n, x, h0);
  const Difference d1 = central_difference(inner, n, x, h0 / 2);
  const Difference d2 = central_difference(inner, n, x, h0 / 4);
  // Even error expansion in h: eliminate h^2, then h^4.
  const Complex r0 = (4.0 * d1.value - d0.value) / 3.0;
  const Complex r1 = (4.0 * d2.value - d1.value) / 3.0;
  const Complex r2 = (16.0 * r1 - r0) / 15.0;

  const double before = std::abs(d2.value - d1.value);
  const double after = std::abs(r2 - r1);
  const double noise = d2.quadrature_error;
  const double scale = std::max(1.0, std::abs(r2));
  if (after > before && after > tol * scale) {
    throw StepError(std::string(what) + ": Richardson extrapolation did not reduce the "
                    "error estimate (" + sci(before) + " -> " +
                    sci(after) + ")");
  }

  QuadratureResult out;
  out.value = sign * r2;
  out.abs_error_estimate = after + noise;
  out.nodes = d0.nodes + d1.nodes + d2.nodes;
  out.converged = out.abs_error_estimate <= tol * scale;
  if (!out.converged && opt.quadrature.strict) {
    throw NonConvergence(std::string(what) + ": error estimate " +
                         sci(out.abs_error_estimate) + " above tolerance");
  }
  return out;
}

}  // namespace

double integrability_margin(const MsmParams& msm, Complex declared_exponent, Side side) {
  const Kernel kernel(msm);
  if (!kernel.global()) return std::numeric_limits<double>::infinity();
  return side == Side::kLeft
             ? zero_margin(kernel, -msm.lambda2 + declared_exponent)
             : zero_margin(kernel, msm.lambda - msm.gamma - 1.0 - declared_exponent);
}

int derivative_order(Complex gamma) {
  return static_cast<int>(std::floor(gamma.real())) + 1;
}

MsmParams inner_parameters(const MsmParams& msm, Side side) {
  const double n = derivative_order(msm.gamma);
  if (side == Side::kLeft) {
    return {-msm.lambda2, -msm.lambda, -msm.xi2 + n, -msm.xi1, -msm.gamma + n};
  }
  return {-msm.lambda2, -msm.lambda, -msm.xi2, -msm.xi1 + n, -msm.gamma + n};
}

Complex kernel_value(const MsmParams& msm, double x, double t, Side side) {
  if (!(x > 0.0) || !(t > 0.0)) {
    throw DomainError("kernel_value: x and t must be positive");
  }
  if (side == Side::kLeft ? !(t < x) : !(t > x)) {
    throw DomainError("kernel_value: t outside the operator's range");
  }
  const double u = side == Side::kLeft ? t / x : x / t;
  const double one_minus_u = side == Side::kLeft ? (x - t) / x : (t - x) / t;
  return Kernel(msm)(u, one_minus_u);
}

QuadratureResult msm_integral_left(const MsmParams& msm, const Integrand& f, double x,
                                   const OperatorOptions& opt) {
  check_common(msm, x, "msm_integral_left");
  const Kernel kernel(msm);
  // t = x u: x^(gamma - lambda2) int_0^1 (1-u)^(gamma-1) u^-lambda2 K f(xu) du
  auto f_of_u = [&](double u) { return f.f(x * u); };
  const QuadratureResult r = unit_integral(kernel, msm, -msm.lambda2, f.exponent,
                                           f_of_u, opt, "msm_integral_left");
  return scaled(r, real_pow(x, msm.gamma - msm.lambda - msm.lambda2) *
                       reciprocal_gamma(msm.gamma));
}

QuadratureResult msm_integral_right(const MsmParams& msm, const Integrand& f, double x,
                                    const OperatorOptions& opt) {
  check_common(msm, x, "msm_integral_right");
  const Kernel kernel(msm);
  // t = x / v: x^(gamma - lambda) int_0^1 (1-v)^(gamma-1) v^(lambda-gamma-1) K f(x/v) dv
  auto f_of_v = [&](double v) { return f.f(x / v); };
  const QuadratureResult r =
      unit_integral(kernel, msm, msm.lambda - msm.gamma - 1.0, -f.exponent, f_of_v, opt,
                    "msm_integral_right");
  return scaled(r, real_pow(x, msm.gamma - msm.lambda - msm.lambda2) *
                       reciprocal_gamma(msm.gamma));
}

QuadratureResult msm_derivative_left(const MsmParams& msm, const Integrand& f, double x,
                                     const OperatorOptions& opt) {
  return derivative(msm, f, x, opt, Side::kLeft);
}

QuadratureResult msm_derivative_right(const MsmParams& msm, const Integrand& f, double x,
                                      const OperatorOptions& opt) {
  return derivative(msm, f, x, opt, Side::kRight);
}

}  // namespace msm
