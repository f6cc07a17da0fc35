#include "msm/verification.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "msm/errors.hpp"
#include "msm/fixtures.hpp"
#include "summation.hpp"

namespace msm {

namespace {

using nlohmann::json;

constexpr int kMaxRejections = 10000;
constexpr double kMinMargin = 0.05;
constexpr double kPoleClearance = 0.05;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// mt19937_64 output is fixed by the standard; the mapping to doubles is done
// here so that draws do not depend on the library's distributions.
class Rng {
 public:
  Rng(std::uint64_t seed, SuiteId suite, std::uint64_t path)
      : engine_(splitmix64(seed ^ splitmix64(fnv1a(to_string(suite)) ^ splitmix64(path)))) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex param(bool real_only) {
    const double re = uniform(-2.0, 3.0);
    const double im = uniform(-1.0, 1.0);
    return {re, real_only ? 0.0 : im};
  }

 private:
  std::mt19937_64 engine_;
};

double pole_distance(Complex z) {
  if (z.real() > 0.5) return std::numeric_limits<double>::infinity();
  const double r = std::min(0.0, std::round(z.real()));
  return std::abs(z - Complex(r, 0.0));
}

// Smallest distance of any numerator argument offset + slope k to a pole.
double clearance(const PowerImage& img) {
  double d = std::numeric_limits<double>::infinity();
  for (const AffineForm& f : img.numerator) {
    for (int k = 0; k < 64; ++k) {
      const Complex z = f.at(k);
      if (z.real() > 0.5) break;
      d = std::min(d, pole_distance(z));
      if (f.slope == 0.0) break;
    }
  }
  return d;
}

double clearance(LemmaId id, const MsmParams& msm, Complex rho) {
  return clearance(lemma_bundle(id, msm, {rho, 0.0}));
}

constexpr double kMaxCondition = 1e3;

// sum |t_k| / |sum t_k| for the pFq series.
double pfq_condition(const std::vector<Complex>& a, const std::vector<Complex>& b, Complex z) {
  Complex term = 1.0, sum = 1.0;
  double magnitude = 1.0;
  for (int k = 0; k < 5000; ++k) {
    Complex r = z / static_cast<double>(k + 1);
    for (Complex x : a) r *= x + static_cast<double>(k);
    for (Complex x : b) r /= x + static_cast<double>(k);
    term *= r;
    sum += term;
    magnitude += std::abs(term);
    if (std::abs(term) < 1e-18 * magnitude && k > 10) break;
  }
  return std::abs(sum) > 0.0 ? magnitude / std::abs(sum) : std::numeric_limits<double>::infinity();
}

double relative_error(Complex got, Complex expected) {
  const double diff = std::abs(got - expected);
  const double scale = std::abs(expected);
  return scale > 0.0 ? diff / scale : diff;
}

json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json draw_json(const ParamDraw& d) {
  return json{{"lambda", complex_json(d.msm.lambda)},
              {"lambda2", complex_json(d.msm.lambda2)},
              {"xi1", complex_json(d.msm.xi1)},
              {"xi2", complex_json(d.msm.xi2)},
              {"gamma", complex_json(d.msm.gamma)},
              {"a", d.sp.a},
              {"p", complex_json(d.sp.p)},
              {"b", complex_json(d.sp.b)},
              {"c", complex_json(d.sp.c)},
              {"xi_s", d.sp.xi_s},
              {"alpha", d.sp.alpha},
              {"mu", complex_json(d.sp.mu)},
              {"rho", complex_json(d.rho)},
              {"x", d.x}};
}

std::optional<TheoremId> termwise_theorem(SuiteId s) {
  switch (s) {
    case SuiteId::kT1Termwise: return TheoremId::kT1;
    case SuiteId::kT2Termwise: return TheoremId::kT2;
    case SuiteId::kT3Termwise: return TheoremId::kT3;
    case SuiteId::kT4Termwise: return TheoremId::kT4;
    default: return std::nullopt;
  }
}

StruveParams draw_struve(Rng& rng, bool real_only) {
  StruveParams sp;
  sp.a = rng.integer(1, 3);
  sp.alpha = rng.uniform(0.5, 2.0);
  sp.xi_s = rng.uniform(0.5, 2.0);
  sp.p = rng.param(real_only);
  sp.b = rng.param(real_only);
  sp.c = rng.param(real_only);
  sp.mu = rng.param(real_only);
  return sp;
}

MsmParams draw_msm(Rng& rng, bool real_only) {
  MsmParams m;
  m.lambda = rng.param(real_only);
  m.lambda2 = rng.param(real_only);
  m.xi1 = rng.param(real_only);
  m.xi2 = rng.param(real_only);
  m.gamma = rng.param(real_only);
  return m;
}

bool accept(SuiteId suite, const ParamDraw& d) {
  const MsmParams& m = d.msm;
  switch (suite) {
    case SuiteId::kL1Quadrature:
      return validity(LemmaId::kL1, m, d.rho) && m.gamma.real() >= kMinMargin &&
             integrability_margin(m, d.rho - 1.0, Side::kLeft) >= kMinMargin &&
             clearance(LemmaId::kL1, m, d.rho) >= kPoleClearance;
    case SuiteId::kL2Quadrature:
      return validity(LemmaId::kL2, m, d.rho) && m.gamma.real() >= kMinMargin &&
             integrability_margin(m, -d.rho, Side::kRight) >= kMinMargin &&
             clearance(LemmaId::kL2, m, d.rho) >= kPoleClearance;
    case SuiteId::kD1:
    case SuiteId::kD2: {
      const bool left = suite == SuiteId::kD1;
      const LemmaId outer = left ? LemmaId::kD1 : LemmaId::kD2;
      const LemmaId inner = left ? LemmaId::kL1 : LemmaId::kL2;
      const MsmParams in = inner_parameters(m, left ? Side::kLeft : Side::kRight);
      return m.gamma.real() >= kMinMargin && validity(outer, m, d.rho) &&
             validity(inner, in, d.rho) && clearance(outer, m, d.rho) >= kPoleClearance &&
             clearance(inner, in, d.rho) >= kPoleClearance;
    }
    case SuiteId::kT1Termwise:
    case SuiteId::kT2Termwise:
    case SuiteId::kT3Termwise:
    case SuiteId::kT4Termwise: {
      const TheoremId t = *termwise_theorem(suite);
      if (theorem_validity_violation(t, m, d.sp, d.rho)) return false;
      const PowerImage img = lemma_bundle(lemma_for(t), m, {d.rho + d.sp.p + 1.0, 2.0});
      return clearance(img) >= kPoleClearance;
    }
    case SuiteId::kT1Closure:
      return !theorem_validity_violation(TheoremId::kT1, m, d.sp, d.rho) &&
             m.gamma.real() >= kMinMargin &&
             integrability_margin(m, d.rho + d.sp.p, Side::kLeft) >= kMinMargin &&
             clearance(lemma_bundle(LemmaId::kL1, m, {d.rho + d.sp.p + 1.0, 2.0})) >=
                 kPoleClearance;
    default:
      return false;
  }
}

// Worst relative error of eval_image against the termwise oracle over the
// suite's x points.
CaseRecord termwise_case(TheoremId t, const ParamDraw& d) {
  CaseRecord rec;
  const ImageFormula img = theorem_image(t, d.msm, d.sp, d.rho);
  SeriesOptions opt;
  opt.tol = 1e-15;
  bool first = true;
  for (double x : termwise_points(t)) {
    const Complex expected = oracle_termwise(t, d.msm, d.sp, d.rho, x);
    const Complex got = eval_image(img, x, opt).value;
    const double err = relative_error(got, expected);
    if (first || err > rec.relative_error) {
      rec.expected = expected;
      rec.got = got;
      rec.relative_error = err;
      rec.message = "x=" + format_double(x);
      first = false;
    }
  }
  return rec;
}

void run_case(SuiteId suite, std::uint64_t seed, std::uint64_t index, double tol,
              CaseRecord& rec) {
  rec.index = index;
  Rng rng(seed, suite, index);
  switch (suite) {
    case SuiteId::kGamma: {
      Complex z;
      do {
        z = {rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
      } while (pole_distance(z) < kPoleClearance ||
               std::abs(z - std::round(z.real())) < kPoleClearance);
      rec.params_json = json{{"z", complex_json(z)}}.dump();
      // Reflection with the two algorithms on either side, and recurrence.
      const Complex reflection = std::exp(log_gamma(z) + reference::log_gamma_stirling(1.0 - z)) *
                                 sin_pi(z) / std::numbers::pi;
      const Complex recurrence = std::exp(log_gamma(z + 1.0) - log_gamma(z));
      const double e1 = relative_error(reflection, 1.0);
      const double e2 = relative_error(recurrence, z);
      if (e1 >= e2) {
        rec.expected = 1.0;
        rec.got = reflection;
        rec.relative_error = e1;
        rec.message = "reflection";
      } else {
        rec.expected = z;
        rec.got = recurrence;
        rec.relative_error = e2;
        rec.message = "recurrence";
      }
      return;
    }
    case SuiteId::kFoxWright: {
      std::vector<Complex> a, b;
      FoxWrightSpec spec;
      Complex z;
      // Draws whose sum cancels heavily are limited by double rounding in
      // any method; keep sum |t_k| / |sum t_k| below kMaxCondition.
      for (int attempt = 0;; ++attempt) {
        if (attempt == kMaxRejections) {
          throw SamplingExhausted("foxwright: no well-conditioned draw");
        }
        const int q = rng.integer(0, 3);
        const int p = rng.integer(0, q + 1);
        auto draw_clear = [&] {
          Complex v;
          do {
            v = rng.param(false);
          } while (pole_distance(v) < 0.1);
          return v;
        };
        a.clear();
        b.clear();
        spec = {};
        for (int i = 0; i < p; ++i) {
          a.push_back(draw_clear());
          spec.upper.push_back({a.back(), 1.0});
        }
        for (int j = 0; j < q; ++j) {
          b.push_back(draw_clear());
          spec.lower.push_back({b.back(), 1.0});
        }
        if (p == q + 1) {
          do {
            z = {rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)};
          } while (std::abs(z) > 0.8);
        } else {
          z = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        }
        if (pfq_condition(a, b, z) <= kMaxCondition) break;
      }
      json ja = json::array(), jb = json::array();
      for (Complex v : a) ja.push_back(complex_json(v));
      for (Complex v : b) jb.push_back(complex_json(v));
      rec.params_json = json{{"upper", ja}, {"lower", jb}, {"z", complex_json(z)}}.dump();
      SeriesOptions opt;
      opt.tol = 1e-16;
      rec.expected = hypergeometric_pfq(a, b, z, opt).value * gamma_ratio(a, b);
      rec.got = fox_wright(spec, z, opt).value;
      rec.relative_error = relative_error(rec.got, rec.expected);
      return;
    }
    case SuiteId::kStruve: {
      long double z;
      do {
        z = rng.uniform(0.1, 20.0);
      } while (std::abs(z - 2.0L * std::numbers::pi_v<long double> *
                                std::round(z / (2.0L * std::numbers::pi_v<long double>))) <
               0.05L);
      rec.params_json = json{{"z", static_cast<double>(z)}}.dump();
      const long double closed =
          std::sqrt(2.0L / (std::numbers::pi_v<long double> * z)) * (1.0L - std::cos(z));
      StruveParams sp;
      sp.p = 0.5;
      rec.expected = static_cast<double>(closed);
      rec.got = struve_generalized(sp, static_cast<double>(z)).value;
      rec.relative_error = relative_error(rec.got, rec.expected);
      return;
    }
    default:
      break;
  }

  const ParamDraw d = sample_params(seed, suite, index);
  rec.params_json = draw_json(d).dump();
  switch (suite) {
    case SuiteId::kL1Quadrature:
    case SuiteId::kL2Quadrature: {
      const bool left = suite == SuiteId::kL1Quadrature;
      const PowerImageValue img =
          power_image(left ? LemmaId::kL1 : LemmaId::kL2, d.msm, d.rho);
      rec.expected = img.coefficient * std::exp(img.exponent * std::log(d.x));
      rec.got = oracle_quadrature(left ? QuadTarget::kL1 : QuadTarget::kL2, d.msm,
                                  IntegrandSpec{d.rho, std::nullopt, 0}, d.x,
                                  tol * 1e-2)
                    .value;
      break;
    }
    case SuiteId::kD1:
    case SuiteId::kD2: {
      const LemmaId id = suite == SuiteId::kD1 ? LemmaId::kD1 : LemmaId::kD2;
      const PowerImageValue img = power_image(id, d.msm, d.rho);
      rec.expected = img.coefficient * std::exp(img.exponent * std::log(d.x));
      rec.got = oracle_derivative(id, d.msm, d.rho, d.x);
      break;
    }
    case SuiteId::kT1Closure: {
      const ImageFormula img = theorem_image(TheoremId::kT1, d.msm, d.sp, d.rho);
      rec.expected = eval_image(img, d.x).value;
      rec.got = oracle_quadrature(QuadTarget::kT1, d.msm, IntegrandSpec{d.rho, d.sp, 30},
                                  d.x, tol * 1e-2)
                    .value;
      break;
    }
    default: {
      const CaseRecord t = termwise_case(*termwise_theorem(suite), d);
      rec.expected = t.expected;
      rec.got = t.got;
      rec.relative_error = t.relative_error;
      rec.message = t.message;
      return;
    }
  }
  rec.relative_error = relative_error(rec.got, rec.expected);
}

}  // namespace

std::string_view to_string(SuiteId id) {
  switch (id) {
    case SuiteId::kGamma: return "gamma";
    case SuiteId::kFoxWright: return "foxwright";
    case SuiteId::kStruve: return "struve";
    case SuiteId::kL1Quadrature: return "L1-quadrature";
    case SuiteId::kL2Quadrature: return "L2-quadrature";
    case SuiteId::kD1: return "D1";
    case SuiteId::kD2: return "D2";
    case SuiteId::kT1Termwise: return "T1-termwise";
    case SuiteId::kT2Termwise: return "T2-termwise";
    case SuiteId::kT3Termwise: return "T3-termwise";
    case SuiteId::kT4Termwise: return "T4-termwise";
    case SuiteId::kT1Closure: return "T1-closure";
  }
  return "?";
}

std::span<const SuiteId> all_suites() {
  static constexpr std::array<SuiteId, 12> kAll = {
      SuiteId::kGamma,       SuiteId::kFoxWright,    SuiteId::kStruve,
      SuiteId::kL1Quadrature, SuiteId::kL2Quadrature, SuiteId::kD1,
      SuiteId::kD2,          SuiteId::kT1Termwise,   SuiteId::kT2Termwise,
      SuiteId::kT3Termwise,  SuiteId::kT4Termwise,   SuiteId::kT1Closure};
  return kAll;
}

std::optional<SuiteId> parse_suite(std::string_view text) {
  for (SuiteId id : all_suites()) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

std::span<const double> termwise_points(TheoremId id) {
  static constexpr std::array<double, 3> kAscending = {0.5, 1.0, 2.0};
  static constexpr std::array<double, 3> kDescending = {1.5, 2.0, 4.0};
  return (id == TheoremId::kT2 || id == TheoremId::kT4) ? std::span<const double>(kDescending)
                                                        : std::span<const double>(kAscending);
}

Complex oracle_termwise(TheoremId id, const MsmParams& msm, const StruveParams& sp,
                        Complex rho, double x, int k_max, double tol) {
  if (auto v = theorem_validity_violation(id, msm, sp, rho)) {
    throw ValidityError("oracle_termwise: " + *v);
  }
  const LemmaId lemma = lemma_for(id);
  const double log_x = std::log(x);
  auto term = [&](int k) -> detail::Term {
    const double kd = static_cast<double>(k);
    const Complex coef = struve_coefficient(sp, k);
    if (coef == Complex(0.0)) return {0.0, 0.0};
    const PowerImageValue img = power_image(lemma, msm, rho + sp.p + 1.0 + 2.0 * kd);
    const Complex value = coef * std::exp(-(2.0 * kd + sp.p + 1.0) * std::numbers::ln2) *
                          img.coefficient * std::exp(img.exponent * log_x);
    return {value, std::abs(value)};
  };
  SeriesOptions opt;
  opt.tol = tol;
  opt.k_max = k_max;
  return detail::sum_series(term, opt, "oracle_termwise").value;
}

Integrand make_integrand(Side side, const IntegrandSpec& spec) {
  const Complex rho = spec.rho;
  if (!spec.struve) {
    if (side == Side::kLeft) {
      return {[rho](double t) { return std::exp((rho - 1.0) * std::log(t)); }, rho - 1.0};
    }
    return {[rho](double t) { return std::exp(-rho * std::log(t)); }, -rho};
  }
  const StruveParams sp = *spec.struve;
  std::vector<Complex> coef;
  for (int k = 0; k < spec.struve_terms; ++k) coef.push_back(struve_coefficient(sp, k));
  // W_K(s) = sum_{k<K} coef_k (s/2)^(2k+p+1)
  auto truncated = [sp, coef](double s) {
    const double h = 0.5 * s;
    const double h2 = h * h;
    Complex sum = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) sum = sum * h2 + coef[k];
    return sum * std::exp((sp.p + 1.0) * std::log(h));
  };
  if (side == Side::kLeft) {
    return {[rho, truncated](double t) {
              return std::exp((rho - 1.0) * std::log(t)) * truncated(t);
            },
            rho + sp.p};
  }
  return {[rho, truncated](double t) {
            return std::exp(-rho * std::log(t)) * truncated(1.0 / t);
          },
          -(rho + sp.p + 1.0)};
}

QuadratureResult oracle_quadrature(QuadTarget target, const MsmParams& msm,
                                   const IntegrandSpec& f, double x, double tol) {
  const bool left = target == QuadTarget::kL1 || target == QuadTarget::kT1;
  if (left ? msm.lambda2 != Complex(0.0) : msm.lambda != Complex(0.0)) {
    throw DomainError(left ? "oracle_quadrature: left targets need lambda2 = 0"
                           : "oracle_quadrature: right targets need lambda = 0");
  }
  const bool struve = target == QuadTarget::kT1 || target == QuadTarget::kT2;
  if (struve != f.struve.has_value()) {
    throw std::invalid_argument(
        "oracle_quadrature: theorem targets take a Struve integrand, lemma targets a monomial");
  }
  OperatorOptions opt;
  opt.quadrature.tol = tol;
  const Integrand integrand = make_integrand(left ? Side::kLeft : Side::kRight, f);
  QuadratureResult r = left ? msm_integral_left(msm, integrand, x, opt)
                            : msm_integral_right(msm, integrand, x, opt);
  if (struve) {
    // Image of the first omitted term.
    const int k = f.struve_terms;
    const PowerImageValue img = power_image(left ? LemmaId::kL1 : LemmaId::kL2, msm,
                                            f.rho + f.struve->p + 1.0 + 2.0 * k);
    const Complex omitted = struve_coefficient(*f.struve, k) *
                            std::exp(-(2.0 * k + f.struve->p + 1.0) * std::numbers::ln2) *
                            img.coefficient * std::exp(img.exponent * std::log(x));
    r.abs_error_estimate += std::abs(omitted);
  }
  return r;
}

Complex oracle_derivative(LemmaId target, const MsmParams& msm, Complex rho, double x) {
  if (target != LemmaId::kD1 && target != LemmaId::kD2) {
    throw std::invalid_argument("oracle_derivative: target must be D1 or D2");
  }
  const bool left = target == LemmaId::kD1;
  const LemmaId inner_lemma = left ? LemmaId::kL1 : LemmaId::kL2;
  const MsmParams inner = inner_parameters(msm, left ? Side::kLeft : Side::kRight);
  if (auto v = validity_violation(inner_lemma, inner, rho)) {
    throw ValidityError("oracle_derivative: inner " + std::string(to_string(inner_lemma)) +
                        " condition: " + *v);
  }
  const PowerImageValue img = power_image(inner_lemma, inner, rho);
  const int n = derivative_order(msm.gamma);
  // (d/dx)^n x^s = s (s-1) ... (s-n+1) x^(s-n)
  Complex falling = 1.0;
  for (int j = 0; j < n; ++j) falling *= img.exponent - static_cast<double>(j);
  if (!left && n % 2) falling = -falling;
  return img.coefficient * falling *
         std::exp((img.exponent - static_cast<double>(n)) * std::log(x));
}

ParamDraw sample_params(std::uint64_t seed, SuiteId suite, std::uint64_t seed_path) {
  const bool real_only = suite == SuiteId::kL1Quadrature || suite == SuiteId::kL2Quadrature ||
                         suite == SuiteId::kT1Closure;
  switch (suite) {
    case SuiteId::kGamma:
    case SuiteId::kFoxWright:
    case SuiteId::kStruve:
      throw std::invalid_argument("sample_params: suite '" + std::string(to_string(suite)) +
                                  "' has no parameter draws");
    default:
      break;
  }
  Rng rng(seed, suite, seed_path);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    ParamDraw d;
    d.seed_path = seed_path;
    d.msm = draw_msm(rng, real_only);
    d.sp = draw_struve(rng, real_only);
    d.rho = rng.param(real_only);
    d.x = rng.uniform(0.5, 2.0);
    switch (suite) {
      case SuiteId::kL1Quadrature:
        d.msm.lambda2 = 0.0;
        break;
      case SuiteId::kL2Quadrature:
        d.msm.lambda = 0.0;
        break;
      case SuiteId::kT1Closure:
        d.msm.lambda2 = 0.0;
        d.x = 1.0;
        break;
      case SuiteId::kT1Termwise:
      case SuiteId::kT2Termwise:
      case SuiteId::kT3Termwise:
      case SuiteId::kT4Termwise:
        d.x = termwise_points(*termwise_theorem(suite)).front();
        break;
      default:
        break;
    }
    if (accept(suite, d)) return d;
  }
  throw SamplingExhausted("sample_params: no admissible draw for suite '" +
                          std::string(to_string(suite)) + "' after 10000 attempts");
}

int SuiteReport::count(std::string_view classification) const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [&](const CaseRecord& c) {
    return c.classification == classification;
  }));
}

SuiteReport run_suite(SuiteId suite, int n_cases, std::uint64_t seed, double tol,
                      unsigned threads) {
  SuiteReport report;
  report.suite_id = suite;
  report.seed = seed;
  report.tol = tol;
  report.n_cases = std::max(0, n_cases);
  report.cases.resize(static_cast<std::size_t>(report.n_cases));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < report.n_cases; i = next++) {
      CaseRecord rec;
      try {
        run_case(suite, seed, static_cast<std::uint64_t>(i), tol, rec);
      } catch (const std::exception& e) {
        rec.expected = rec.got = 0.0;
        rec.relative_error = std::numeric_limits<double>::infinity();
        rec.message = e.what();
      }
      rec.index = static_cast<std::uint64_t>(i);
      if (rec.params_json.empty()) rec.params_json = "{}";
      rec.classification = rec.relative_error <= tol          ? "pass"
                           : rec.relative_error <= 100.0 * tol ? "numerical"
                                                               : "structural";
      report.cases[static_cast<std::size_t>(i)] = std::move(rec);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, report.n_cases)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const CaseRecord& c : report.cases) {
    if (c.classification == "pass") {
      ++report.n_pass;
    } else {
      report.failures.push_back(c);
    }
    if (!(c.relative_error <= report.worst_relative_error)) {
      report.worst_relative_error = c.relative_error;
    }
  }
  if (auto t = termwise_theorem(suite)) {
    for (const Discrepancy& d : compare_with_printed(*t).mismatches) {
      report.discrepancy_notes.push_back(to_string(d));
    }
  }
  return report;
}

}  // namespace msm
