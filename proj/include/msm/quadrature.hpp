#pragma once

#include <functional>

#include "msm/gamma.hpp"

namespace msm {

struct QuadratureOptions {
  double tol = 1e-12;
  /// Finest level: step 2^-max_level in the double-exponential variable.
  int max_level = 9;
  int min_level = 3;
  /// When false, running out of levels returns converged = false instead of
  /// throwing NonConvergence.
  bool strict = true;
};

struct QuadratureResult {
  Complex value;
  double abs_error_estimate = 0.0;
  int nodes = 0;
  bool converged = false;
};

/// Integrand on (0, 1) receiving both u and 1 - u, so that endpoint
/// singularities can be evaluated without cancellation.
using UnitIntegrand = std::function<Complex(double u, double one_minus_u)>;

/// Integrability margins of an integrand on (0, 1): if g(u) ~ u^(e0) near 0
/// and (1 - u)^(e1) near 1, the margins are Re(e0) + 1 and Re(e1) + 1. Both
/// must be positive.
struct EndpointMargins {
  double at_zero = 1.0;
  double at_one = 1.0;
};

/// Integral of g over (0, 1).
///
/// The interval is split at 1/2; each half gets a power substitution
/// u = s^m / 2 (mirrored at 1) with m = max(1, 1/margin), which turns the
/// endpoint behaviour into a bounded one, followed by tanh-sinh quadrature.
/// Levels halve the step; the error estimate is the difference between the
/// last two levels.
QuadratureResult integrate_unit(const UnitIntegrand& g, EndpointMargins margins,
                                const QuadratureOptions& opt = {});

}  // namespace msm
