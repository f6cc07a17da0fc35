#pragma once

#include <functional>
#include <optional>

#include "msm/gamma.hpp"
#include "msm/quadrature.hpp"

namespace msm {

/// Operator parameters. xi1/xi2 are the operator's xi and xi', kept apart from
/// the Struve function's own xi (StruveParams::xi_s).
struct MsmParams {
  Complex lambda = 0.0;
  Complex lambda2 = 0.0;
  Complex xi1 = 0.0;
  Complex xi2 = 0.0;
  Complex gamma = 1.0;
};

/// f(t) for t > 0 together with its declared behaviour |f(t)| = O(t^Re(exponent))
/// as t -> 0 (left operators) or t -> infinity (right operators). The rule must
/// be safe to call concurrently.
struct Integrand {
  std::function<Complex(double)> f;
  Complex exponent = 0.0;
};

enum class Side { kLeft, kRight };

struct OperatorOptions {
  QuadratureOptions quadrature;
  /// Restricted-support mode for the uncollapsed kernel: f is taken to vanish
  /// outside [r x, x] (left) or [x, x / r] (right), r in (1/2, 1), which keeps
  /// both Appell arguments inside the unit disc.
  std::optional<double> restricted_support;
};

/// Appell F3 factor of the operator kernel. Left (0 < t < x):
/// F3(lambda, lambda2, xi1, xi2; gamma; 1 - t/x, 1 - x/t). Right (t > x): the
/// arguments are swapped, F3(...; 1 - x/t, 1 - t/x). Vanishing lambda or xi1
/// (resp. lambda2 or xi2) collapses the kernel to a Gauss function that is
/// evaluable on the whole range; otherwise t must lie in (x/2, x) or (x, 2x).
Complex kernel_value(const MsmParams& msm, double x, double t, Side side);

/// x^-lambda / Gamma(gamma) * int_0^x (x - t)^(gamma-1) t^-lambda2 F3(...) f(t) dt.
QuadratureResult msm_integral_left(const MsmParams& msm, const Integrand& f,
                                   double x, const OperatorOptions& opt = {});

/// x^-lambda2 / Gamma(gamma) * int_x^inf (t - x)^(gamma-1) t^-lambda F3(...) f(t) dt,
/// computed after t = x / v.
QuadratureResult msm_integral_right(const MsmParams& msm, const Integrand& f,
                                    double x, const OperatorOptions& opt = {});

/// (d/dx)^n of the left integral with parameters
/// (-lambda2, -lambda, -xi2 + n, -xi1, -gamma + n), n = floor(Re gamma) + 1.
/// Central differences with two Richardson levels from h = x / 100. The
/// achievable accuracy is limited; the tolerance is floored at 1e-4.
QuadratureResult msm_derivative_left(const MsmParams& msm, const Integrand& f,
                                     double x, const OperatorOptions& opt = {});

/// (-d/dx)^n of the right integral with parameters
/// (-lambda2, -lambda, -xi2, -xi1 + n, -gamma + n).
QuadratureResult msm_derivative_right(const MsmParams& msm, const Integrand& f,
                                      double x, const OperatorOptions& opt = {});

/// Smallest integrability margin Re(e) + 1 over the exponents e of the
/// substituted integrand at u -> 0, for f with the given declared exponent.
/// Infinite when the kernel does not collapse (restricted support only).
double integrability_margin(const MsmParams& msm, Complex declared_exponent, Side side);

/// Order n = floor(Re gamma) + 1 of the derivative operators.
int derivative_order(Complex gamma);

/// Parameters of the inner integral used by the derivative operators.
MsmParams inner_parameters(const MsmParams& msm, Side side);

}  // namespace msm
