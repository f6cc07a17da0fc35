#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msm/images.hpp"
#include "msm/operators.hpp"
#include "msm/series.hpp"

namespace msm {

enum class SuiteId {
  kGamma,
  kFoxWright,
  kStruve,
  kL1Quadrature,
  kL2Quadrature,
  kD1,
  kD2,
  kT1Termwise,
  kT2Termwise,
  kT3Termwise,
  kT4Termwise,
  kT1Closure,
};

std::string_view to_string(SuiteId id);
std::optional<SuiteId> parse_suite(std::string_view text);
std::span<const SuiteId> all_suites();

struct ParamDraw {
  MsmParams msm;
  StruveParams sp;
  Complex rho;
  double x = 1.0;
  std::uint64_t seed_path = 0;
};

/// Sum over k of the Struve coefficient, 2^-(2k+p+1) and the lemma image of the
/// k-th power, each term from power_image. Throws NonConvergence after k_max terms.
Complex oracle_termwise(TheoremId id, const MsmParams& msm, const StruveParams& sp,
                        Complex rho, double x, int k_max = 2000, double tol = 1e-15);

enum class QuadTarget { kL1, kL2, kT1, kT2 };

/// Integrand for the quadrature oracle: t^(rho-1) (left) or t^-rho (right),
/// optionally times the first `struve_terms` terms of W(t) (left) or W(1/t) (right).
struct IntegrandSpec {
  Complex rho;
  std::optional<StruveParams> struve;
  int struve_terms = 30;
};

Integrand make_integrand(Side side, const IntegrandSpec& spec);

/// Direct quadrature of the operator on the collapsed slice (lambda2 = 0 for
/// left targets, lambda = 0 for right targets). For truncated Struve integrands
/// the first omitted term's image is added to the error estimate.
QuadratureResult oracle_quadrature(QuadTarget target, const MsmParams& msm,
                                   const IntegrandSpec& f, double x, double tol);

/// Applies the inner integral's power image analytically and differentiates
/// the monomial exactly. Throws ValidityError when the inner lemma's condition fails.
Complex oracle_derivative(LemmaId target, const MsmParams& msm, Complex rho, double x);

/// Deterministic draw for the parameter suites (L1/L2 quadrature, D1, D2,
/// termwise and closure suites). Throws SamplingExhausted after 10^4 rejections
/// and std::invalid_argument for suites without parameter draws.
ParamDraw sample_params(std::uint64_t seed, SuiteId suite, std::uint64_t seed_path = 0);

/// x values used by the termwise suites.
std::span<const double> termwise_points(TheoremId id);

struct CaseRecord {
  std::uint64_t index = 0;
  std::string params_json;
  Complex expected;
  Complex got;
  double relative_error = 0.0;
  std::string classification;  // pass | numerical | structural
  std::string message;
};

struct SuiteReport {
  SuiteId suite_id = SuiteId::kGamma;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int n_cases = 0;
  int n_pass = 0;
  double worst_relative_error = 0.0;
  std::vector<CaseRecord> cases;
  std::vector<CaseRecord> failures;
  std::vector<std::string> discrepancy_notes;

  int count(std::string_view classification) const;
};

/// Runs n_cases seeded cases concurrently; failures are recorded, never thrown.
SuiteReport run_suite(SuiteId suite, int n_cases, std::uint64_t seed, double tol,
                      unsigned threads = 0);

/// CSV: suite, case, params, expected_re, expected_im, got_re, got_im, rel_error, class.
void write_csv(const SuiteReport& report, std::ostream& out);
/// JSON summary with counts, worst error, failures and discrepancy notes.
void write_json_summary(const SuiteReport& report, std::ostream& out);
std::string summary_line(const SuiteReport& report);

/// Shortest round-trip decimal text of a double.
std::string format_double(double v);

}  // namespace msm
