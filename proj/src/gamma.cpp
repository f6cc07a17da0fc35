#include "msm/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "msm/errors.hpp"

namespace msm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kLogPi = 1.14472988584940017414342735135305;

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

Complex lanczos_log_gamma(Complex z) {
  const Complex zm1 = z - 1.0;
  Complex series = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    series += kLanczosCoef[i] / (zm1 + static_cast<double>(i));
  }
  const Complex t = zm1 + kLanczosG + 0.5;
  return kHalfLog2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

// Imaginary part of the principal log-gamma via upward recurrence; only used
// to select the branch of the reflection formula.
double principal_imag_by_recurrence(Complex z) {
  double imag = 0.0;
  while (z.real() < 0.5) {
    imag -= std::arg(z);
    z += 1.0;
  }
  return imag + lanczos_log_gamma(z).imag();
}

}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol || z.real() > tol) {
    return false;
  }
  return std::abs(z.real() - std::round(z.real())) <= tol;
}

Complex sin_pi(Complex z) {
  // x = n + r with |r| <= 1/2; the subtraction is exact.
  const double n = std::round(z.real());
  const double r = z.real() - n;
  const double sign = std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0;
  const double y = kPi * z.imag();
  return {sign * std::sin(kPi * r) * std::cosh(y), sign * std::cos(kPi * r) * std::sinh(y)};
}

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) {
    return lanczos_log_gamma(z);
  }
  Complex value = kLogPi - std::log(sin_pi(z)) - lanczos_log_gamma(1.0 - z);
  const double target = principal_imag_by_recurrence(z);
  const double turns = std::round((target - value.imag()) / (2.0 * kPi));
  value.imag(value.imag() + 2.0 * kPi * turns);
  return value;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex reciprocal_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    return 0.0;
  }
  return std::exp(-log_gamma(z));
}

Complex pochhammer(Complex z, unsigned n) {
  Complex prod = 1.0;
  for (unsigned i = 0; i < n; ++i) {
    prod *= z + static_cast<double>(i);
  }
  return prod;
}

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("digamma: pole");
  }
  if (z.real() < 0.5) {
    // psi(z) = psi(1 - z) - pi cot(pi z)
    const Complex s = sin_pi(z);
    const Complex c = sin_pi(z + 0.5);
    return digamma(1.0 - z) - kPi * c / s;
  }
  Complex shift = 0.0;
  while (std::abs(z) < 12.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series with B_2 .. B_14.
  static constexpr std::array<double, 7> kB = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  const Complex inv2 = 1.0 / (z * z);
  Complex pw = inv2;
  Complex tail = 0.0;
  for (std::size_t k = 0; k < kB.size(); ++k) {
    tail += kB[k] / (2.0 * static_cast<double>(k + 1)) * pw;
    pw *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - tail;
}

Complex gamma_ratio(std::span<const Complex> numerators,
                    std::span<const Complex> denominators) {
  for (const Complex& a : numerators) {
    if (is_nonpositive_integer(a)) {
      throw PoleError("gamma_ratio: numerator argument at a pole");
    }
  }
  for (const Complex& b : denominators) {
    if (is_nonpositive_integer(b)) {
      return 0.0;
    }
  }
  Complex log_sum = 0.0;
  for (const Complex& a : numerators) log_sum += log_gamma(a);
  for (const Complex& b : denominators) log_sum -= log_gamma(b);
  return std::exp(log_sum);
}

Complex gamma_ratio(const GammaRatioBundle& bundle) {
  return gamma_ratio(bundle.numerator_args, bundle.denominator_args);
}

}  // namespace msm
