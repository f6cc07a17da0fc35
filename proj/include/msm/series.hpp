#pragma once

#include <span>
#include <vector>

#include "msm/gamma.hpp"

namespace msm {

/// Controls for every truncated series in the library.
///
/// A sum stops once three consecutive terms are below tol * |partial sum| and
/// the geometric tail bound built from the first omitted term is below
/// tol * max(1, |partial sum|).
struct SeriesOptions {
  double tol = 1e-14;
  int k_max = 2000;
  /// When false, exhausting k_max returns converged = false instead of
  /// throwing NonConvergence.
  bool strict = true;
};

struct SeriesResult {
  Complex value;
  int terms_used = 0;
  /// Absolute tail bound: |first omitted term| / (1 - r), r the last term ratio.
  double truncation_estimate = 0.0;
  bool converged = false;
};

/// One (shift, weight) pair of a Fox-Wright function, i.e. Gamma(shift + weight k).
struct WeightedParam {
  Complex shift;
  double weight = 1.0;
};

struct FoxWrightSpec {
  std::vector<WeightedParam> upper;
  std::vector<WeightedParam> lower;
};

/// Sum of lower weights minus sum of upper weights.
double convergence_index(const FoxWrightSpec& spec);

/// Unnormalized Fox-Wright function
///   sum_k prod Gamma(a_i + alpha_i k) / prod Gamma(b_j + beta_j k) z^k / k!
/// with log-domain terms. Requires convergence_index > -1, or == -1 with |z| < 1.
SeriesResult fox_wright(const FoxWrightSpec& spec, Complex z,
                        const SeriesOptions& opt = {});

/// Generalized hypergeometric pFq by term recurrence. Requires p <= q, or
/// p == q + 1 with |z| < 1, unless a numerator is a non-positive integer
/// (terminating series, any z).
SeriesResult hypergeometric_pfq(std::span<const Complex> a,
                                std::span<const Complex> b, Complex z,
                                const SeriesOptions& opt = {});

/// Gauss 2F1(a, b; c; w) for real w < 1, with the connection coefficients
/// precomputed once per parameter triple.
///
/// w in [0, 1/2]: Gauss series. w in (1/2, 1): connection to 1 - w, with the
/// logarithmic formulas when c - a - b is an integer. w < 0: Pfaff
/// transformation onto (0, 1). Terminating series are summed directly.
class Gauss2F1 {
 public:
  Gauss2F1(Complex a, Complex b, Complex c);

  Complex operator()(double w) const { return evaluate(w, 1.0 - w); }

  /// exp(log_scale) * F, with 1 - w supplied separately so that callers near
  /// w = 1 avoid cancellation. The scale is folded into each connection term
  /// before exponentiation, so F may be far outside the double range as long
  /// as the product is not.
  Complex evaluate(double w, double one_minus_w, Complex log_scale = 0.0) const;

 private:
  // 2F1 restricted to w in [0, 1).
  class UnitInterval {
   public:
    UnitInterval(Complex a, Complex b, Complex c);
    Complex evaluate(double w, double one_minus_w, Complex log_scale) const;

   private:
    enum class Mode { kTerminating, kGeneral, kLogarithmic };

    Complex logarithmic(double v) const;

    Complex a_, b_, c_;
    Mode mode_ = Mode::kGeneral;
    // kGeneral: F = A F(a,b;a+b-c+1;v) + B v^d F(c-a,c-b;d+1;v).
    Complex coef_a_, coef_b_, d_;
    // kLogarithmic: c - a - b == m >= 0 after an optional Euler transform
    // (euler_ set), see logarithmic().
    bool euler_ = false;
    int m_ = 0;
    Complex la_, lb_;
    Complex finite_coef_, log_coef_;
    Complex psi_a_, psi_b_;
  };

  Complex a_, b_, c_;
  UnitInterval direct_;
  UnitInterval pfaff_;
};

/// Convenience wrapper: 2F1(a, b; c; w), w < 1.
Complex gauss_2f1(Complex a, Complex b, Complex c, double w);

/// Appell F3(a, a2, b, b2; c; w, z) on the open unit bidisc, summed along
/// anti-diagonals m + n = s with per-diagonal compensated summation.
SeriesResult appell_f3(Complex a, Complex a2, Complex b, Complex b2, Complex c,
                       Complex w, Complex z, const SeriesOptions& opt = {});

/// Parameters of the generalized Struve function; xi_s is the function's own
/// xi, kept apart from the operator parameters.
struct StruveParams {
  int a = 1;
  Complex p = 0.0;
  Complex b = 1.0;
  Complex c = 1.0;
  double xi_s = 1.0;
  double alpha = 1.0;
  Complex mu = 1.5;

  /// p / xi_s + (b + 2) / 2, the shift of the second reciprocal gamma.
  Complex second_shift() const { return p / xi_s + (b + 2.0) / 2.0; }
};

/// Generalized Struve function
///   sum_k (-c)^k / (Gamma(alpha k + mu) Gamma(a k + p/xi_s + (b+2)/2)) (z/2)^(2k+p+1).
///
/// For integer alpha the terms are generated by an exact rational recurrence
/// carried in extended precision, which keeps the alternating sum accurate
/// well into the cancellation regime (|z| ~ 20).
SeriesResult struve_generalized(const StruveParams& sp, Complex z,
                                const SeriesOptions& opt = {});

/// k-th coefficient of the Struve series without the power of z:
/// (-c)^k / (Gamma(alpha k + mu) Gamma(a k + p/xi_s + (b+2)/2)).
Complex struve_coefficient(const StruveParams& sp, int k);

}  // namespace msm
