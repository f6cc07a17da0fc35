#include <array>
#include <cmath>

#include "msm/errors.hpp"
#include "msm/gamma.hpp"

namespace msm::reference {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// B_{2k} / (2k (2k - 1)) for k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0,
    -1.0 / 1680.0,       1.0 / 1188.0,   -691.0 / 360360.0,
    1.0 / 156.0,         -3617.0 / 122400.0};

}  // namespace

Complex log_gamma_stirling(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("log_gamma_stirling: pole");
  }
  // log Gamma(z) = log Gamma(z + n) - sum_j log(z + j); principal logs keep
  // the result on the principal branch.
  Complex shift = 0.0;
  while (z.real() < 10.0 || std::abs(z) < 17.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex pw = inv;
  Complex series = 0.0;
  for (double c : kStirling) {
    series += c * pw;
    pw *= inv2;
  }
  return shift + (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

}  // namespace msm::reference
