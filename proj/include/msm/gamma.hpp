#pragma once

#include <complex>
#include <span>
#include <vector>

namespace msm {

using Complex = std::complex<double>;

/// Distance below which an argument is classified as a non-positive integer.
inline constexpr double kPoleTolerance = 1e-12;

/// True when z lies within kPoleTolerance of 0, -1, -2, ...
bool is_nonpositive_integer(Complex z, double tol = kPoleTolerance);

/// sin(pi z) with exact argument reduction on the real part.
Complex sin_pi(Complex z);

/// Principal branch of log Gamma(z), continuous on C \ (-inf, 0].
///
/// Lanczos (g = 7, nine coefficients) for Re z >= 1/2, reflection below with
/// the branch chosen to match the principal value. Throws PoleError at
/// non-positive integers.
Complex log_gamma(Complex z);

/// Gamma(z); throws PoleError at non-positive integers.
Complex gamma(Complex z);

/// 1/Gamma(z), an entire function; exactly zero at non-positive integers.
Complex reciprocal_gamma(Complex z);

/// Rising factorial (z)_n = z (z+1) ... (z+n-1).
Complex pochhammer(Complex z, unsigned n);

/// Digamma psi(z); throws PoleError at non-positive integers.
Complex digamma(Complex z);

/// Numerator and denominator arguments of Gamma[a, b, ...; d, e, ...].
struct GammaRatioBundle {
  std::vector<Complex> numerator_args;
  std::vector<Complex> denominator_args;
};

/// Product of Gamma(numerators) over product of Gamma(denominators), evaluated
/// as a single exponential of a sum of log-gammas.
///
/// A denominator pole makes the ratio zero; a numerator pole is a PoleError
/// (numerators are checked first).
Complex gamma_ratio(std::span<const Complex> numerators,
                    std::span<const Complex> denominators);
Complex gamma_ratio(const GammaRatioBundle& bundle);

namespace reference {

/// log Gamma by upward recurrence to |z| >= 17 followed by the Stirling
/// series. Shares no code with the Lanczos path and is kept for
/// cross-checking only.
Complex log_gamma_stirling(Complex z);

}  // namespace reference

}  // namespace msm
