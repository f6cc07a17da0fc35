#include <doctest.h>

#include <cmath>
#include <cstring>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>

#include "msm/errors.hpp"
#include "msm/images.hpp"
#include "msm/verification.hpp"

using msm::Complex;
using msm::LemmaId;
using msm::SuiteId;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

bool same_bits(Complex a, Complex b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_draw(const msm::ParamDraw& a, const msm::ParamDraw& b) {
  return same_bits(a.msm.lambda, b.msm.lambda) && same_bits(a.msm.lambda2, b.msm.lambda2) &&
         same_bits(a.msm.xi1, b.msm.xi1) && same_bits(a.msm.xi2, b.msm.xi2) &&
         same_bits(a.msm.gamma, b.msm.gamma) && same_bits(a.rho, b.rho) && same_bits(a.sp.p, b.sp.p) &&
         same_bits(a.sp.mu, b.sp.mu) && a.sp.a == b.sp.a && a.sp.alpha == b.sp.alpha &&
         a.sp.xi_s == b.sp.xi_s && a.x == b.x;
}

}  // namespace

TEST_SUITE("verification") {

TEST_CASE("suite names round-trip") {
  for (SuiteId id : msm::all_suites()) CHECK(msm::parse_suite(msm::to_string(id)) == id);
  CHECK(msm::all_suites().size() == 12);
  CHECK_FALSE(msm::parse_suite("T5-termwise").has_value());
}

TEST_CASE("draws are deterministic") {
  const auto a = msm::sample_params(42, SuiteId::kT1Termwise, 0);
  const auto b = msm::sample_params(42, SuiteId::kT1Termwise, 0);
  CHECK(same_draw(a, b));
  CHECK_FALSE(same_draw(a, msm::sample_params(43, SuiteId::kT1Termwise, 0)));
  CHECK_FALSE(same_draw(a, msm::sample_params(42, SuiteId::kT1Termwise, 1)));
  CHECK_THROWS_AS(msm::sample_params(1, SuiteId::kGamma), std::invalid_argument);
}

TEST_CASE("draws respect the sampling box") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto d = msm::sample_params(3, SuiteId::kT3Termwise, i);
    for (Complex z : {d.msm.lambda, d.msm.lambda2, d.msm.xi1, d.msm.xi2, d.msm.gamma, d.rho}) {
      CHECK(z.real() >= -2.0);
      CHECK(z.real() <= 3.0);
      CHECK(std::abs(z.imag()) <= 1.0);
    }
    CHECK(d.sp.a >= 1);
    CHECK(d.sp.a <= 3);
    CHECK(d.sp.alpha > 0.5);
    CHECK(d.sp.alpha < 2.0);
    CHECK(d.sp.xi_s > 0.5);
    CHECK(d.sp.xi_s < 2.0);
  }
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto d = msm::sample_params(3, SuiteId::kL2Quadrature, i);
    CHECK(d.msm.lambda == Complex(0.0));
    CHECK(d.rho.imag() == 0.0);
    CHECK(d.msm.gamma.imag() == 0.0);
  }
}

TEST_CASE("predicate audit") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto d = msm::sample_params(17, SuiteId::kT2Termwise, i);
    CHECK(msm::validity(LemmaId::kL2, d.msm, d.rho + d.sp.p + 1.0));
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto d = msm::sample_params(17, SuiteId::kL1Quadrature, i);
    CHECK(msm::validity(LemmaId::kL1, d.msm, d.rho));
    CHECK(d.msm.lambda2 == Complex(0.0));
  }
}

TEST_CASE("oracle_derivative") {
  const msm::MsmParams half{0.0, 0.0, 0.0, 0.0, 0.5};
  CHECK(rel(msm::oracle_derivative(LemmaId::kD1, half, 1.0, 1.0), 1.0 / std::sqrt(std::numbers::pi)) <
        1e-15);
  // n = 2: inner Riemann-Liouville integral of order 0.7 applied to t^1.5,
  // then two exact derivatives.
  const msm::MsmParams m{0.0, 0.0, 0.0, 0.0, 1.3};
  const double rho = 2.5, x = 1.7, s = rho + 0.7 - 1.0;
  const double inner = std::tgamma(rho) / std::tgamma(rho + 0.7);
  const double expected = inner * s * (s - 1.0) * std::pow(x, s - 2.0);
  CHECK(rel(msm::oracle_derivative(LemmaId::kD1, m, rho, x), expected) < 1e-14);
  CHECK(rel(expected, std::tgamma(rho) / std::tgamma(rho - 1.3) * std::pow(x, rho - 1.3 - 1.0)) < 1e-14);

  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto d = msm::sample_params(8, SuiteId::kD2, i);
    const auto img = msm::power_image(LemmaId::kD2, d.msm, d.rho);
    CHECK(rel(msm::oracle_derivative(LemmaId::kD2, d.msm, d.rho, d.x),
              img.coefficient * std::pow(d.x, img.exponent)) < 1e-10);
  }
}

TEST_CASE("oracle_quadrature") {
  const msm::MsmParams m{0.3, 0.0, 0.2, 0.0, 1.5};
  const auto r = msm::oracle_quadrature(msm::QuadTarget::kL1, m, {2.0, std::nullopt, 0}, 1.0, 1e-8);
  CHECK(rel(r.value, msm::power_image(LemmaId::kL1, m, 2.0).coefficient) < 1e-6);
  const msm::MsmParams zero{0.0, 0.0, 0.0, 0.0, 0.8};
  const auto rl = msm::oracle_quadrature(msm::QuadTarget::kL1, zero, {1.5, std::nullopt, 0}, 2.0, 1e-10);
  CHECK(rel(rl.value, std::tgamma(1.5) / std::tgamma(2.3) * std::pow(2.0, 1.3)) < 1e-8);
  CHECK_THROWS(msm::oracle_quadrature(msm::QuadTarget::kL1, msm::MsmParams{0.3, 0.1, 0.2, 0.1, 1.5},
                                      {2.0, std::nullopt, 0}, 1.0, 1e-8));
}

TEST_CASE("T1 closure on one draw") {
  msm::StruveParams sp;
  sp.mu = 1.5;
  sp.p = 0.5;
  const msm::MsmParams m{0.2, 0.0, 0.3, 0.4, 1.1};
  const Complex rho = 1.3;
  const auto img = msm::theorem_image(msm::TheoremId::kT1, m, sp, rho);
  const auto q = msm::oracle_quadrature(msm::QuadTarget::kT1, m, {rho, sp, 30}, 1.0, 1e-8);
  CHECK(rel(q.value, msm::eval_image(img, 1.0).value) < 1e-5);
}

TEST_CASE("oracle_termwise rejects invalid draws") {
  msm::StruveParams sp;
  CHECK_THROWS_AS(msm::oracle_termwise(msm::TheoremId::kT1, {}, sp, -3.0, 1.0), msm::ValidityError);
}

TEST_CASE("run_suite bookkeeping") {
  const auto r = msm::run_suite(SuiteId::kT4Termwise, 40, 5, 1e-10);
  CHECK(r.n_cases == 40);
  CHECK(r.n_pass + static_cast<int>(r.failures.size()) == r.n_cases);
  CHECK(r.n_pass == 40);
  for (std::size_t i = 0; i < r.cases.size(); ++i) CHECK(r.cases[i].index == i);

  // A tolerance nothing can meet classifies every case as a failure.
  const auto strict = msm::run_suite(SuiteId::kGamma, 20, 5, 1e-30);
  CHECK(strict.n_pass + static_cast<int>(strict.failures.size()) == strict.n_cases);
  CHECK(strict.count("pass") == strict.n_pass);
}

TEST_CASE("report output does not depend on thread count") {
  const auto one = msm::run_suite(SuiteId::kD1, 30, 9, 1e-10, 1);
  const auto many = msm::run_suite(SuiteId::kD1, 30, 9, 1e-10, 8);
  std::ostringstream a, b;
  msm::write_csv(one, a);
  msm::write_csv(many, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("CSV and JSON formats") {
  const auto r = msm::run_suite(SuiteId::kT1Termwise, 12, 42, 1e-10);
  std::ostringstream csv;
  msm::write_csv(r, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  CHECK(line.rfind("suite,", 0) == 0);
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 12);

  std::ostringstream js;
  msm::write_json_summary(r, js);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["suite_id"] == "T1-termwise");
  CHECK(j["n_cases"] == 12);
  CHECK(j["n_pass"] == 12);
  CHECK(j["failures"].is_array());
  CHECK(j["discrepancy_notes"].is_array());
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::numbers::pi}) {
    CHECK(std::stod(msm::format_double(v)) == v);
  }
}

}
