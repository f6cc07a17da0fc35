#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "msm/errors.hpp"
#include "msm/images.hpp"
#include "msm/operators.hpp"
#include "msm/quadrature.hpp"
#include "msm/series.hpp"

using msm::Complex;
using msm::Side;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

msm::Integrand monomial(double e) {
  return {[e](double t) { return Complex(std::pow(t, e)); }, e};
}

msm::MsmParams params(double lambda, double lambda2, double xi1, double xi2, double gamma) {
  msm::MsmParams m;
  m.lambda = lambda;
  m.lambda2 = lambda2;
  m.xi1 = xi1;
  m.xi2 = xi2;
  m.gamma = gamma;
  return m;
}

const double kSqrtPi = std::sqrt(std::numbers::pi);

// F3 over the rectangle m, n <= 300.
double f3_rectangle(double a, double a2, double b, double b2, double c, double w, double z) {
  long double total = 0.0L, row = 1.0L;
  for (int m = 0; m <= 300; ++m) {
    long double term = row;
    for (int n = 0; n <= 300; ++n) {
      total += term;
      term *= (a2 + n) * (b2 + n) / ((c + m + n) * (n + 1.0L)) * z;
    }
    row *= (a + m) * (b + m) / ((c + m) * (m + 1.0L)) * w;
  }
  return static_cast<double>(total);
}

}  // namespace

TEST_SUITE("msm_operators") {

TEST_CASE("integrate_unit on Beta integrals") {
  for (auto [p, q] : {std::pair{0.5, 0.5}, {0.1, 1.0}, {2.0, 0.05}, {0.05, 0.3}}) {
    const auto r = msm::integrate_unit(
        [p, q](double u, double v) { return Complex(std::pow(u, p - 1) * std::pow(v, q - 1)); },
        {p, q});
    const double beta = std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
    CHECK(rel(r.value, beta) < 1e-11);
    CHECK(r.converged);
  }
  CHECK_THROWS_AS(msm::integrate_unit([](double, double) { return Complex(1.0); }, {0.0, 1.0}),
                  msm::ConvergenceError);
}

TEST_CASE("doubling the node budget shrinks the error estimate") {
  for (double gamma : {0.5, 1.0, 1.7, 2.5}) {
    const auto m = params(0.0, 0.0, 0.0, 0.0, gamma);
    for (double rho : {0.7, 2.0}) {
      double prev = -1.0;
      for (int level = 2; level <= 4; ++level) {
        msm::OperatorOptions opt;
        opt.quadrature.tol = 1e-300;
        opt.quadrature.strict = false;
        opt.quadrature.min_level = 1;
        opt.quadrature.max_level = level;
        const double err = msm::msm_integral_left(m, monomial(rho - 1.0), 1.0, opt).abs_error_estimate;
        if (prev > 0.0 && prev > 1e-13) CHECK(err * 4.0 <= prev);
        prev = err;
      }
    }
  }
}

TEST_CASE("kernel_value") {
  const auto zero = params(0.0, 0.0, 0.0, 0.0, 1.7);
  for (double t : {0.1, 0.6, 0.99}) CHECK(msm::kernel_value(zero, 1.0, t, Side::kLeft) == Complex(1.0));
  for (double t : {1.01, 3.0, 50.0}) CHECK(msm::kernel_value(zero, 1.0, t, Side::kRight) == Complex(1.0));

  const auto first = params(1.0, 0.0, 1.0, 0.3, 2.0);
  CHECK(rel(msm::kernel_value(first, 1.0, 0.1, Side::kLeft), -std::log(0.1) / 0.9) < 1e-14);
  CHECK(rel(msm::kernel_value(first, 3.0, 0.3, Side::kLeft), -std::log(0.1) / 0.9) < 1e-14);

  const auto generic = params(0.2, 0.4, 0.6, 0.8, 1.5);
  const double x = 1.0, t = 0.8;
  CHECK(rel(msm::kernel_value(generic, x, t, Side::kLeft),
            f3_rectangle(0.2, 0.4, 0.6, 0.8, 1.5, 1.0 - t / x, 1.0 - x / t)) < 1e-12);
  const double tr = 1.25;
  CHECK(rel(msm::kernel_value(generic, x, tr, Side::kRight),
            f3_rectangle(0.2, 0.4, 0.6, 0.8, 1.5, 1.0 - x / tr, 1.0 - tr / x)) < 1e-12);
  CHECK_THROWS_AS(msm::kernel_value(generic, 1.0, 0.3, Side::kLeft), msm::DomainError);
  CHECK_THROWS_AS(msm::kernel_value(generic, 1.0, 2.5, Side::kRight), msm::DomainError);
}

TEST_CASE("left integral reduces to Riemann-Liouville") {
  CHECK(rel(msm::msm_integral_left(params(0, 0, 0, 0, 1.0), monomial(0.0), 2.0).value, 2.0) < 1e-12);
  CHECK(rel(msm::msm_integral_left(params(0, 0, 0, 0, 0.5), monomial(0.0), 1.0).value, 2.0 / kSqrtPi) <
        1e-12);
  for (double gamma : {0.3, 1.0, 2.6}) {
    for (double rho : {0.2, 1.0, 3.5}) {
      const double x = 1.7;
      const double expected = std::tgamma(rho) / std::tgamma(rho + gamma) * std::pow(x, rho + gamma - 1.0);
      CHECK(rel(msm::msm_integral_left(params(0, 0, 0, 0, gamma), monomial(rho - 1.0), x).value,
                expected) < 1e-8);
    }
  }
}

TEST_CASE("right integral reduces to Weyl") {
  CHECK(rel(msm::msm_integral_right(params(0, 0, 0, 0, 1.0), monomial(-2.0), 1.0).value, 1.0) < 1e-12);
  CHECK(rel(msm::msm_integral_right(params(0, 0, 0, 0, 0.5), monomial(-2.0), 1.0).value, kSqrtPi / 2.0) <
        1e-12);
  for (double gamma : {0.3, 1.0, 1.8}) {
    for (double rho : {2.0, 3.5}) {
      const double x = 0.6;
      const double expected = std::tgamma(rho - gamma) / std::tgamma(rho) * std::pow(x, gamma - rho);
      CHECK(rel(msm::msm_integral_right(params(0, 0, 0, 0, gamma), monomial(-rho), x).value, expected) <
            1e-8);
    }
  }
}

TEST_CASE("collapsed-kernel integrals match the lemmas") {
  const auto left = params(0.3, 0.0, 0.2, 0.0, 1.5);
  const double rho = 2.0;
  const auto l1 = msm::power_image(msm::LemmaId::kL1, left, rho);
  CHECK(rel(msm::msm_integral_left(left, monomial(rho - 1.0), 1.0).value, l1.coefficient) < 1e-6);

  const auto right = params(0.0, 0.4, 0.0, 0.1, 1.2);
  const auto l2 = msm::power_image(msm::LemmaId::kL2, right, 3.0);
  CHECK(rel(msm::msm_integral_right(right, monomial(-3.0), 1.0).value, l2.coefficient) < 1e-6);

  // The other collapse on each side.
  const auto left2 = params(0.0, 0.35, 0.4, 0.25, 1.3);
  const auto l1b = msm::power_image(msm::LemmaId::kL1, left2, 1.5);
  CHECK(rel(msm::msm_integral_left(left2, monomial(0.5), 2.0).value,
            l1b.coefficient * std::pow(2.0, l1b.exponent)) < 1e-6);
}

TEST_CASE("homogeneity in x") {
  const auto m = params(0.3, 0.0, 0.2, 0.6, 1.5);
  const double rho = 1.4;
  const Complex at1 = msm::msm_integral_left(m, monomial(rho - 1.0), 1.0).value;
  for (double x : {0.3, 2.0, 5.0}) {
    const Complex atx = msm::msm_integral_left(m, monomial(rho - 1.0), x).value;
    const Complex expected = std::pow(x, rho - 0.3 - 0.0 + 1.5 - 1.0);
    CHECK(rel(atx / at1, expected) < 1e-6);
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = params(0.5 * u(rng), 0.0, 0.5 * u(rng), u(rng), 0.5 + u(rng));
    const msm::Integrand f = monomial(0.3);
    const msm::Integrand g{[](double t) { return Complex(std::cos(t), std::sin(2.0 * t)); }, 0.0};
    const double alpha = 2.0 * u(rng) - 1.0, beta = 2.0 * u(rng) - 1.0;
    const msm::Integrand h{[&](double t) { return alpha * f.f(t) + beta * g.f(t); }, 0.0};
    const double x = 0.5 + u(rng);
    const auto rf = msm::msm_integral_left(m, f, x);
    const auto rg = msm::msm_integral_left(m, g, x);
    const auto rh = msm::msm_integral_left(m, h, x);
    const double budget = 3.0 * (rf.abs_error_estimate + rg.abs_error_estimate + rh.abs_error_estimate);
    CHECK(std::abs(rh.value - (alpha * rf.value + beta * rg.value)) <= std::max(budget, 1e-14));
  }
}

TEST_CASE("integrability is checked before integrating") {
  const auto m = params(0.0, 0.0, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(msm::msm_integral_left(m, monomial(-1.0), 1.0), msm::ConvergenceError);
  CHECK_THROWS_AS(msm::msm_integral_right(m, monomial(-1.0), 1.0), msm::ConvergenceError);
  CHECK(msm::integrability_margin(m, -0.5, Side::kLeft) == doctest::Approx(0.5));
  CHECK_THROWS_AS(msm::msm_integral_left(params(0.2, 0.3, 0.4, 0.5, 1.0), monomial(0.0), 1.0),
                  msm::DomainError);
}

TEST_CASE("restricted support handles the full kernel") {
  const auto m = params(0.2, 0.4, 0.6, 0.8, 1.5);
  msm::OperatorOptions opt;
  opt.restricted_support = 0.7;
  const double x = 1.0;
  const auto r = msm::msm_integral_left(m, monomial(0.0), x, opt);
  const int n = 4000;
  double sum = 0.0;
  const double a = 0.7 * x, h = (x - a) / n;
  auto integrand = [&](double t) {
    return std::pow(x - t, 0.5) * std::pow(t, -0.4) * msm::kernel_value(m, x, t, Side::kLeft).real();
  };
  // (x - t)^(1/2) is smooth enough for Simpson to reach ~1e-6 here.
  // The t = x node carries (x - t)^(1/2) = 0.
  for (int i = 0; i < n; ++i) {
    const double w = i == 0 ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * integrand(a + i * h);
  }
  const double expected = sum * h / 3.0 * std::pow(x, -0.2) / std::tgamma(1.5);
  CHECK(rel(r.value, expected) < 1e-5);
}

TEST_CASE("derivatives") {
  const auto half = params(0, 0, 0, 0, 0.5);
  CHECK(rel(msm::msm_derivative_left(half, monomial(0.0), 1.0).value, 1.0 / kSqrtPi) < 1e-6);
  CHECK(rel(msm::msm_derivative_left(half, monomial(1.0), 1.0).value, 2.0 / kSqrtPi) < 1e-6);
  CHECK(rel(msm::msm_derivative_right(half, monomial(-1.0), 1.0).value, kSqrtPi / 2.0) < 1e-6);
  CHECK(rel(msm::msm_derivative_right(params(0, 0, 0, 0, 1.0), monomial(-2.0), 2.0).value, 0.25) < 1e-6);
  CHECK(msm::derivative_order(0.5) == 1);
  CHECK(msm::derivative_order(1.0) == 2);
  CHECK(msm::derivative_order(Complex(2.3, 1.0)) == 3);
}

TEST_CASE("collapsed-kernel derivatives match the lemmas") {
  // Left: the inner parameters (-lambda2, -lambda, -xi2 + n, -xi1, -gamma + n)
  // collapse when lambda = 0 or xi1 = 0 is paired with lambda2 = 0 or xi2 - n = 0.
  const auto left = params(0.0, 0.2, 0.3, 0.0, 0.6);
  const double rho = 2.5, x = 1.3;
  const auto d1 = msm::power_image(msm::LemmaId::kD1, left, rho);
  CHECK(rel(msm::msm_derivative_left(left, monomial(rho - 1.0), x).value,
            d1.coefficient * std::pow(x, d1.exponent)) < 1e-4);

  const auto right = params(0.25, 0.0, 0.0, 0.15, 0.7);
  const double rho2 = 2.2;
  const auto d2 = msm::power_image(msm::LemmaId::kD2, right, rho2);
  CHECK(rel(msm::msm_derivative_right(right, monomial(-rho2), x).value,
            d2.coefficient * std::pow(x, d2.exponent)) < 1e-4);
}

TEST_CASE("inner parameters") {
  const auto m = params(0.1, 0.2, 0.3, 0.4, 1.5);
  const auto l = msm::inner_parameters(m, Side::kLeft);
  CHECK(l.lambda == Complex(-0.2));
  CHECK(l.lambda2 == Complex(-0.1));
  CHECK(l.xi1 == Complex(-0.4 + 2.0));
  CHECK(l.xi2 == Complex(-0.3));
  CHECK(l.gamma == Complex(-1.5 + 2.0));
  const auto r = msm::inner_parameters(m, Side::kRight);
  CHECK(r.xi1 == Complex(-0.4));
  CHECK(r.xi2 == Complex(-0.3 + 2.0));
}

}
