#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "msm/errors.hpp"
#include "msm/series.hpp"

using msm::Complex;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

msm::StruveParams classical(double p) {
  msm::StruveParams sp;
  sp.a = 1;
  sp.alpha = 1.0;
  sp.mu = 1.5;
  sp.xi_s = 1.0;
  sp.b = 1.0;
  sp.c = 1.0;
  sp.p = p;
  return sp;
}

// Classical Struve H_p(z) from 50 terms in 50-digit arithmetic.
double struve_reference(double p, double z) {
  using big = boost::multiprecision::cpp_dec_float_50;
  const big half_z = big(z) / 2;
  big sum = 0;
  for (int k = 0; k < 50; ++k) {
    const big term = pow(half_z, 2 * k + big(p) + 1) /
                     (boost::multiprecision::tgamma(big(k) + big(3) / 2) *
                      boost::multiprecision::tgamma(big(k) + big(p) + big(3) / 2));
    sum += (k % 2 == 0) ? term : big(-term);
  }
  return sum.convert_to<double>();
}

// Appell F3 summed over the full rectangle m, n <= 200.
Complex f3_rectangle(double a, double a2, double b, double b2, double c, double w, double z) {
  long double total = 0.0L;
  long double row = 1.0L;  // m-th term with n = 0
  for (int m = 0; m <= 200; ++m) {
    long double term = row;
    for (int n = 0; n <= 200; ++n) {
      total += term;
      term *= (a2 + n) * (b2 + n) / ((c + m + n) * (n + 1.0L)) * z;
    }
    row *= (a + m) * (b + m) / ((c + m) * (m + 1.0L)) * w;
  }
  return static_cast<double>(total);
}

// Gauss series with Kahan summation in long double.
double gauss_raw(double a, double b, double c, double w, int terms) {
  long double sum = 0.0L, comp = 0.0L, term = 1.0L;
  for (int k = 0; k < terms; ++k) {
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * w;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_SUITE("series_engine") {

TEST_CASE("convergence_index") {
  msm::FoxWrightSpec s;
  s.upper = {{1.0, 1.0}};
  CHECK(msm::convergence_index(s) == -1.0);
  s.upper.clear();
  s.lower = {{0.7, 2.5}};
  CHECK(msm::convergence_index(s) == 2.5);

  const double alpha = 1.3, a = 2.0;
  s.upper = {{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}, {1.0, 1.0}};
  s.lower = {{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}, {1.0, alpha}, {1.0, a}};
  CHECK(msm::convergence_index(s) == doctest::Approx(alpha + a - 1.0));
}

TEST_CASE("fox_wright closed forms") {
  msm::FoxWrightSpec empty;
  CHECK(rel(msm::fox_wright(empty, 1.0).value, std::numbers::e) < 1e-15);

  msm::FoxWrightSpec ml;
  ml.upper = {{1.0, 1.0}};
  ml.lower = {{2.0, 1.0}};
  CHECK(rel(msm::fox_wright(ml, 1.0).value, std::numbers::e - 1.0) < 1e-15);

  msm::FoxWrightSpec geometric;
  geometric.upper = {{1.0, 1.0}};
  CHECK(rel(msm::fox_wright(geometric, 0.5).value, 2.0) < 1e-14);
  CHECK(rel(msm::fox_wright(geometric, Complex(0.3, 0.4)).value, 1.0 / Complex(0.7, -0.4)) < 1e-14);
}

TEST_CASE("fox_wright domain") {
  msm::FoxWrightSpec divergent;
  divergent.upper = {{1.0, 1.0}, {0.5, 1.0}};
  CHECK_THROWS_AS(msm::fox_wright(divergent, 0.1), msm::DivergenceError);
  msm::FoxWrightSpec edge;
  edge.upper = {{1.0, 1.0}};
  CHECK_THROWS_AS(msm::fox_wright(edge, 1.0), msm::DivergenceError);
  CHECK_THROWS_AS(msm::fox_wright(edge, Complex(0.0, -1.5)), msm::DivergenceError);
}

TEST_CASE("fox_wright with non-unit weights against a direct term sum") {
  // 1Psi1[(0.5, 2); (1.5, 3); z]: terms Gamma(0.5 + 2k) / Gamma(1.5 + 3k) z^k / k!
  msm::FoxWrightSpec s;
  s.upper = {{0.5, 2.0}};
  s.lower = {{1.5, 3.0}};
  const double z = -0.8;
  long double sum = 0.0L;
  for (int k = 0; k < 60; ++k) {
    sum += std::exp(std::lgamma(0.5L + 2 * k) - std::lgamma(1.5L + 3 * k) - std::lgamma(k + 1.0L)) *
           std::pow(static_cast<long double>(z), k);
  }
  CHECK(rel(msm::fox_wright(s, z).value, static_cast<double>(sum)) < 1e-14);
}

TEST_CASE("hypergeometric_pfq") {
  CHECK(rel(msm::hypergeometric_pfq({}, {}, 1.0).value, std::numbers::e) < 1e-15);
  const Complex a[] = {1.0, 1.0};
  const Complex b[] = {2.0};
  CHECK(rel(msm::hypergeometric_pfq(a, b, 0.5).value, 2.0 * std::numbers::ln2) < 1e-14);

  // Unit-weight Fox-Wright reduction.
  const Complex a2[] = {0.3, 0.7};
  const Complex b2[] = {1.1};
  msm::FoxWrightSpec s;
  s.upper = {{0.3, 1.0}, {0.7, 1.0}};
  s.lower = {{1.1, 1.0}};
  const Complex psi = msm::fox_wright(s, -0.4).value;
  const double scale = std::tgamma(1.1) / (std::tgamma(0.3) * std::tgamma(0.7));
  CHECK(rel(msm::hypergeometric_pfq(a2, b2, -0.4).value, scale * psi) < 1e-13);

  const Complex three[] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(msm::hypergeometric_pfq(three, b, 0.1), msm::DivergenceError);
  CHECK_THROWS_AS(msm::hypergeometric_pfq(a, b, 1.0), msm::DivergenceError);
}

TEST_CASE("hypergeometric_pfq terminates on a non-positive integer numerator") {
  const Complex a[] = {-3.0, 2.0};
  const Complex b[] = {1.5};
  const double z = 2.0;
  double direct = 0.0, term = 1.0;
  for (int k = 0; k <= 3; ++k) {
    direct += term;
    term *= (-3.0 + k) * (2.0 + k) / ((1.5 + k) * (k + 1.0)) * z;
  }
  const auto r = msm::hypergeometric_pfq(a, b, z);
  CHECK(rel(r.value, direct) < 1e-15);
  CHECK(r.terms_used <= 4);
}

TEST_CASE("gauss_2f1") {
  CHECK(msm::gauss_2f1(0.3, 0.4, 0.5, 0.0) == Complex(1.0));
  CHECK(rel(msm::gauss_2f1(1.0, 1.0, 2.0, 0.9), -std::log(0.1) / 0.9) < 1e-14);
  CHECK(rel(msm::gauss_2f1(0.5, 1.5, 2.5, 0.95), gauss_raw(0.5, 1.5, 2.5, 0.95, 100000)) < 1e-13);
  // Pfaff branch.
  CHECK(rel(msm::gauss_2f1(1.0, 1.0, 2.0, -3.0), std::log(4.0) / 3.0) < 1e-14);
  CHECK(rel(msm::gauss_2f1(0.5, 1.5, 2.5, -40.0), msm::gauss_2f1(0.5, 1.0, 2.5, 40.0 / 41.0) /
                                                      std::pow(41.0, 0.5)) < 1e-13);
}

TEST_CASE("gauss_2f1 logarithmic cases") {
  // c - a - b = 0: 2F1(1/2, 1/2; 1; w) = 1 / AGM(1, sqrt(1 - w)).
  for (double w : {0.55, 0.8, 0.99, 0.999999, 1.0 - 1e-12}) {
    long double p = 1.0L, q = std::sqrt(1.0L - w);
    for (int i = 0; i < 40; ++i) {
      const long double next = (p + q) / 2.0L;
      q = std::sqrt(p * q);
      p = next;
    }
    const double expected = static_cast<double>(1.0L / p);
    CHECK(rel(msm::gauss_2f1(0.5, 0.5, 1.0, w), expected) < 1e-13);
  }
  // c - a - b = 1.
  for (double w : {0.6, 0.9, 0.9999}) {
    const double expected = 2.0 / (w * w) * (w + (1.0 - w) * std::log1p(-w));
    CHECK(rel(msm::gauss_2f1(1.0, 1.0, 3.0, w), expected) < 1e-13);
  }
  // c - a - b = -1 goes through the Euler transform: F(1,1;1;w) = 1/(1-w).
  CHECK(rel(msm::gauss_2f1(1.0, 1.0, 1.0, 0.9), 10.0) < 1e-13);
}

TEST_CASE("gauss_2f1 connection against the plain series") {
  const Complex a(0.3, 0.2), b(-0.4, 0.1), c(1.7, -0.3);
  const Complex av[] = {a, b};
  const Complex cv[] = {c};
  msm::SeriesOptions opt;
  opt.k_max = 20000;
  for (double w : {0.6, 0.75, 0.9}) {
    const Complex series = msm::hypergeometric_pfq(av, cv, w, opt).value;
    CHECK(rel(msm::gauss_2f1(a, b, c, w), series) < 1e-12);
  }
}

TEST_CASE("Gauss2F1 log scale") {
  const msm::Gauss2F1 f(0.7, 1.3, 0.4);
  for (double w : {0.2, 0.7, 0.999, -5.0}) {
    const Complex plain = f(w);
    const Complex scaled = f.evaluate(w, 1.0 - w, -3.0);
    CHECK(rel(scaled, plain * std::exp(-3.0)) < 1e-13);
  }
}

TEST_CASE("appell_f3") {
  CHECK(rel(msm::appell_f3(0.2, 0.4, 0.6, 0.8, 1.5, 0.0, 0.0).value, 1.0) < 1e-16);
  const Complex f3 = msm::appell_f3(0.2, 0.4, 0.6, 0.8, 1.5, 0.3, 0.2).value;
  CHECK(rel(f3, f3_rectangle(0.2, 0.4, 0.6, 0.8, 1.5, 0.3, 0.2)) < 1e-12);
  CHECK(rel(msm::appell_f3(0.2, 0.0, 0.6, 0.8, 1.5, 0.3, 0.7).value,
            msm::gauss_2f1(0.2, 0.6, 1.5, 0.3)) < 1e-14);
  CHECK(rel(msm::appell_f3(0.2, 0.4, 0.6, 0.0, 1.5, 0.3, -0.9).value,
            msm::gauss_2f1(0.2, 0.6, 1.5, 0.3)) < 1e-14);
  CHECK(rel(msm::appell_f3(-0.3, 1.1, 0.5, 0.9, 2.2, -0.6, 0.5).value,
            f3_rectangle(-0.3, 1.1, 0.5, 0.9, 2.2, -0.6, 0.5)) < 1e-12);
}

TEST_CASE("struve_generalized classical reduction") {
  const auto sp = classical(0.5);
  CHECK(rel(msm::struve_generalized(sp, std::numbers::pi).value,
            2.0 * std::numbers::sqrt2 / std::numbers::pi) < 1e-14);
  for (int i = 1; i <= 20; ++i) {
    const long double z = 0.1L + (20.0L - 0.1L) * i / 20.0L;
    const long double expected =
        std::sqrt(2.0L / (std::numbers::pi_v<long double> * z)) * (1.0L - std::cos(z));
    const double zd = static_cast<double>(z);
    CHECK(rel(msm::struve_generalized(sp, zd).value, static_cast<double>(expected)) < 1e-12);
  }
}

TEST_CASE("struve_generalized against a 50-digit reference") {
  for (double p : {0.0, 1.0}) {
    const auto sp = classical(p);
    for (double z : {0.25, 1.0, 2.0, 5.0, 10.0, 15.0, 20.0}) {
      CHECK(rel(msm::struve_generalized(sp, z).value, struve_reference(p, z)) < 1e-12);
    }
  }
}

TEST_CASE("struve_generalized at zero and at large argument") {
  auto sp = classical(0.3);
  CHECK(msm::struve_generalized(sp, 0.0).value == Complex(0.0));
  msm::SeriesOptions opt;
  opt.tol = 1e-14;
  opt.k_max = 2000;
  for (Complex z : {Complex(50.0), Complex(0.0, 50.0), Complex(30.0, 40.0)}) {
    const auto r = msm::struve_generalized(sp, z, opt);
    CHECK(r.converged);
    CHECK(r.terms_used < 2000);
  }
  sp.alpha = 0.7;
  sp.a = 2;
  sp.mu = Complex(0.4, 0.2);
  CHECK(msm::struve_generalized(sp, 50.0, opt).converged);
}

TEST_CASE("struve_coefficient matches the series terms") {
  msm::StruveParams sp;
  sp.a = 2;
  sp.alpha = 1.5;
  sp.mu = 0.8;
  sp.p = 0.25;
  sp.b = 0.5;
  sp.c = Complex(0.4, -0.3);
  sp.xi_s = 2.0;
  const Complex z = 1.3;
  Complex sum = 0.0;
  for (int k = 0; k < 40; ++k) {
    sum += msm::struve_coefficient(sp, k) * std::pow(z / 2.0, 2.0 * k + sp.p + 1.0);
  }
  CHECK(rel(msm::struve_generalized(sp, z).value, sum) < 1e-14);
  const Complex k1 = -sp.c / (std::tgamma(1.5 + 0.8) * std::tgamma(2.0 + 0.125 + 1.25));
  CHECK(rel(msm::struve_coefficient(sp, 1), k1) < 1e-14);
}

}
