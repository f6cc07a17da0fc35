#include "msm/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "msm/errors.hpp"

namespace msm {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

constexpr double kPi = std::numbers::pi;
constexpr double kTauMax = 4.5;

double power_for(double margin) {
  if (!(margin > 0.0)) {
    throw ConvergenceError("integrate_unit: non-integrable endpoint (margin " +
                           sci(margin) + ")");
  }
  return margin >= 1.0 ? 1.0 : 1.0 / margin;
}

class HalfIntervalRule {
 public:
  HalfIntervalRule(const UnitIntegrand& g, double power, bool mirrored)
      : g_(g), power_(power), mirrored_(mirrored) {}

  // Contribution of the DE node at tau (without the step factor h).
  Complex node(double tau, int& evaluations) const {
    const double y = kPi * std::sinh(tau);
    // s = 1/(1 + e^-y), 1 - s = 1/(1 + e^y)
    const double s = 1.0 / (1.0 + std::exp(-y));
    const double one_minus_s = 1.0 / (1.0 + std::exp(y));
    const double ds = s * one_minus_s * kPi * std::cosh(tau);
    if (s == 0.0 || ds == 0.0) return 0.0;
    // near = s^m / 2 is the distance to the singular endpoint
    const double near = 0.5 * std::pow(s, power_);
    if (near == 0.0) return 0.0;
    const double jac = 0.5 * power_ * std::pow(s, power_ - 1.0) * ds;
    if (jac == 0.0) return 0.0;
    const double far = 1.0 - near;
    ++evaluations;
    const Complex value = mirrored_ ? g_(far, near) : g_(near, far);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw DomainError("integrate_unit: integrand is not finite at u = " +
                        sci(mirrored_ ? far : near));
    }
    return value * jac;
  }

 private:
  const UnitIntegrand& g_;
  double power_;
  bool mirrored_;
};

}  // namespace

QuadratureResult integrate_unit(const UnitIntegrand& g, EndpointMargins margins,
                                const QuadratureOptions& opt) {
  const HalfIntervalRule left(g, power_for(margins.at_zero), false);
  const HalfIntervalRule right(g, power_for(margins.at_one), true);
  int evaluations = 0;
  auto both = [&](double tau) {
    return left.node(tau, evaluations) + right.node(tau, evaluations);
  };

  // Level 0: step 1 on [-kTauMax, kTauMax].
  double h = 1.0;
  Complex raw = both(0.0);
  for (double tau = 1.0; tau <= kTauMax; tau += 1.0) {
    raw += both(tau) + both(-tau);
  }
  Complex estimate = raw * h;
  double error = std::abs(estimate);

  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    Complex fresh = 0.0;
    for (double tau = h; tau <= kTauMax; tau += 2.0 * h) {
      fresh += both(tau) + both(-tau);
    }
    raw += fresh;
    const Complex next = raw * h;
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= opt.min_level &&
        error <= opt.tol * std::max(1.0, std::abs(estimate))) {
      return {estimate, error, evaluations, true};
    }
  }
  if (opt.strict) {
    throw NonConvergence("integrate_unit: tolerance not met at level " +
                         std::to_string(opt.max_level) + " (error estimate " +
                         sci(error) + ")");
  }
  return {estimate, error, evaluations, false};
}

}  // namespace msm
