#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "msm/errors.hpp"
#include "msm/fixtures.hpp"
#include "msm/images.hpp"
#include "msm/operators.hpp"
#include "msm/series.hpp"
#include "msm/verification.hpp"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitValidity = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using msm::Complex;

std::string format_complex(Complex z) {
  std::string s = msm::format_double(z.real());
  if (z.imag() != 0.0) {
    if (!std::signbit(z.imag())) s += '+';
    s += msm::format_double(z.imag()) + "j";
  }
  return s;
}

nlohmann::json complex_json(Complex z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

// Accepts "RE", "RE+IMj", "RE-IMj" and "IMj".
Complex parse_complex(const std::string& text, const std::string& what) {
  const char* s = text.c_str();
  char* end = nullptr;
  const double first = std::strtod(s, &end);
  if (end == s) throw UsageError(what + ": cannot parse '" + text + "' as a complex number");
  if (*end == '\0') return first;
  if ((*end == 'j' || *end == 'i') && end[1] == '\0') return {0.0, first};
  const char* rest = end;
  const double second = std::strtod(rest, &end);
  if (end == rest || (*rest != '+' && *rest != '-') || !(*end == 'j' || *end == 'i') || end[1] != '\0') {
    throw UsageError(what + ": cannot parse '" + text + "' as a complex number");
  }
  return {first, second};
}

double parse_real(const std::string& text, const std::string& what) {
  const Complex z = parse_complex(text, what);
  if (z.imag() != 0.0) throw UsageError(what + " must be real");
  return z.real();
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_real(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError(what + " must be an integer");
  return static_cast<int>(v);
}

// Parameter values collected from inline flags or from one JSON file.
class ParamSource {
 public:
  /// Registers `--<flag>` for `key`; flag spelling replaces '_' by '-'.
  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = key;
    for (char& c : flag) c = c == '_' ? '-' : c;
    keys_.push_back(key);
    app->add_option("--" + flag, inline_[key], help);
  }

  void add_file_option(CLI::App* app) {
    app->add_option("--params", file_, "JSON file with parameter values (replaces inline flags)")
        ->check(CLI::ExistingFile);
  }

  /// Resolves the values once parsing has finished.
  void finalize(CLI::App* app) {
    std::vector<std::string> given;
    for (const std::string& key : keys_) {
      std::string flag = key;
      for (char& c : flag) c = c == '_' ? '-' : c;
      if (app->count("--" + flag) > 0) given.push_back(key);
    }
    if (file_.empty()) {
      for (const std::string& key : given) values_[key] = inline_[key];
      return;
    }
    if (!given.empty()) {
      throw UsageError("parameters come from either --params or inline flags, not both (got --" +
                       given.front() + ")");
    }
    std::ifstream in(file_);
    const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw UsageError("--params: " + file_ + " is not a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(keys_.begin(), keys_.end(), key) == keys_.end()) {
        throw UsageError("--params: unknown key '" + key + "'");
      }
      if (value.is_number()) {
        values_[key] = msm::format_double(value.get<double>());
      } else if (value.is_string()) {
        values_[key] = value.get<std::string>();
      } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        values_[key] = format_complex({value[0].get<double>(), value[1].get<double>()});
      } else {
        throw UsageError("--params: value of '" + key + "' must be a number, a string or [re, im]");
      }
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  Complex complex(const std::string& key, Complex fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_complex(it->second, key);
  }
  double real(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_real(it->second, key);
  }
  int integer(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_int(it->second, key);
  }
  std::string text(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? std::string() : it->second;
  }
  Complex required_complex(const std::string& key) const {
    if (!has(key)) throw UsageError("missing parameter --" + key);
    return complex(key, 0.0);
  }
  double required_real(const std::string& key) const {
    if (!has(key)) throw UsageError("missing parameter --" + key);
    return real(key, 0.0);
  }

 private:
  std::vector<std::string> keys_;
  std::map<std::string, std::string> inline_;
  std::map<std::string, std::string> values_;
  std::string file_;
};

void add_msm_params(ParamSource& ps, CLI::App* app) {
  ps.add(app, "lambda", "operator lambda");
  ps.add(app, "lambda2", "operator lambda'");
  ps.add(app, "xi1", "operator xi");
  ps.add(app, "xi2", "operator xi'");
  ps.add(app, "gamma", "operator gamma");
}

void add_struve_params(ParamSource& ps, CLI::App* app) {
  ps.add(app, "a", "Struve a (positive integer)");
  ps.add(app, "p", "Struve p");
  ps.add(app, "b", "Struve b");
  ps.add(app, "c", "Struve c");
  ps.add(app, "xi_s", "Struve xi (real, > 0)");
  ps.add(app, "alpha", "Struve alpha (real, > 0)");
  ps.add(app, "mu", "Struve mu");
}

msm::MsmParams msm_params(const ParamSource& ps) {
  msm::MsmParams m;
  m.lambda = ps.complex("lambda", 0.0);
  m.lambda2 = ps.complex("lambda2", 0.0);
  m.xi1 = ps.complex("xi1", 0.0);
  m.xi2 = ps.complex("xi2", 0.0);
  m.gamma = ps.complex("gamma", 1.0);
  return m;
}

msm::StruveParams struve_params(const ParamSource& ps) {
  msm::StruveParams sp;
  sp.a = ps.integer("a", sp.a);
  sp.p = ps.complex("p", sp.p);
  sp.b = ps.complex("b", sp.b);
  sp.c = ps.complex("c", sp.c);
  sp.xi_s = ps.real("xi_s", sp.xi_s);
  sp.alpha = ps.real("alpha", sp.alpha);
  sp.mu = ps.complex("mu", sp.mu);
  if (sp.a < 1) throw UsageError("--a must be a positive integer");
  if (!(sp.xi_s > 0.0)) throw UsageError("--xi-s must be positive");
  if (!(sp.alpha > 0.0)) throw UsageError("--alpha must be positive");
  return sp;
}

// "s1:w1,s2:w2"; a missing weight is 1.
std::vector<msm::WeightedParam> parse_pairs(const std::string& text, const std::string& what) {
  std::vector<msm::WeightedParam> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto colon = item.find(':');
    msm::WeightedParam wp;
    wp.shift = parse_complex(item.substr(0, colon), what);
    if (colon != std::string::npos) wp.weight = parse_real(item.substr(colon + 1), what);
    out.push_back(wp);
  }
  return out;
}

std::vector<Complex> parse_list(const std::string& text, const std::string& what) {
  std::vector<Complex> out;
  for (const auto& wp : parse_pairs(text, what)) {
    if (wp.weight != 1.0) throw UsageError(what + ": weights are not allowed here");
    out.push_back(wp.shift);
  }
  return out;
}

void check_tolerance(double tol) {
  if (!(tol > 1e-14 && tol < 1e-2)) throw UsageError("--tol must lie in (1e-14, 1e-2)");
}

void print_series(const msm::SeriesResult& r, bool json) {
  if (json) {
    std::cout << nlohmann::json{{"value", complex_json(r.value)},
                                {"terms_used", r.terms_used},
                                {"truncation_estimate", r.truncation_estimate},
                                {"converged", r.converged}}
                     .dump(2)
              << '\n';
    return;
  }
  std::cout << "value " << format_complex(r.value) << '\n'
            << "terms_used " << r.terms_used << '\n'
            << "truncation_estimate " << msm::format_double(r.truncation_estimate) << '\n';
}

void print_quadrature(const msm::QuadratureResult& r, bool json) {
  if (json) {
    std::cout << nlohmann::json{{"value", complex_json(r.value)},
                                {"abs_error_estimate", r.abs_error_estimate},
                                {"nodes", r.nodes},
                                {"converged", r.converged}}
                     .dump(2)
              << '\n';
    return;
  }
  std::cout << "value " << format_complex(r.value) << '\n'
            << "abs_error_estimate " << msm::format_double(r.abs_error_estimate) << '\n'
            << "nodes " << r.nodes << '\n'
            << "converged " << (r.converged ? "true" : "false") << '\n';
}

std::string pair_text(const msm::SymbolicPair& p) {
  return "(" + p.offset.to_string() + ", " + p.weight.to_string() + ")";
}

std::string pair_text(const msm::WeightedParam& p) {
  return "(" + format_complex(p.shift) + ", " + msm::format_double(p.weight) + ")";
}

bool same_pair(const msm::WeightedParam& a, const msm::WeightedParam& b) {
  return std::abs(a.shift - b.shift) <= 1e-14 * std::max(1.0, std::abs(a.shift)) && a.weight == b.weight;
}

nlohmann::json spec_json(const msm::FoxWrightSpec& spec) {
  auto pairs = [](const std::vector<msm::WeightedParam>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : v) a.push_back({{"shift", complex_json(p.shift)}, {"weight", p.weight}});
    return a;
  };
  return {{"upper", pairs(spec.upper)}, {"lower", pairs(spec.lower)}};
}

void print_image(msm::TheoremId id, const msm::ImageFormula& img, double x, double tol) {
  const msm::SymbolicImage sym = msm::symbolic_theorem(id);
  const std::string arg_rule(msm::to_string(img.argument_rule));
  std::cout << "theorem " << msm::to_string(id) << '\n'
            << "prefactor 2^-(p+1) x^(" << sym.prefactor_power.to_string() << ") = "
            << format_complex(img.prefactor_coefficient) << " * x^" << format_complex(img.prefactor_power)
            << '\n'
            << "argument " << arg_rule << " = " << format_complex(img.argument(x)) << " at x = "
            << msm::format_double(x) << '\n';

  std::vector<bool> upper_cancel(img.spec.upper.size()), lower_cancel(img.spec.lower.size());
  for (std::size_t i = 0; i < img.spec.upper.size(); ++i) {
    for (std::size_t j = 0; j < img.spec.lower.size(); ++j) {
      if (!lower_cancel[j] && same_pair(img.spec.upper[i], img.spec.lower[j])) {
        upper_cancel[i] = lower_cancel[j] = true;
        break;
      }
    }
  }
  auto list = [](const char* title, const std::vector<msm::SymbolicPair>& s,
                 const std::vector<msm::WeightedParam>& v, const std::vector<bool>& cancel) {
    std::cout << title << '\n';
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::cout << "  " << pair_text(s[i]) << " = " << pair_text(v[i]) << (cancel[i] ? "  [cancels]" : "")
                << '\n';
    }
  };
  list("upper", sym.upper, img.spec.upper, upper_cancel);
  list("lower", sym.lower, img.spec.lower, lower_cancel);

  msm::SeriesOptions opt;
  opt.tol = tol;
  const msm::SeriesResult r = msm::eval_image(img, x, opt);
  std::cout << "value " << format_complex(r.value) << '\n'
            << "terms_used " << r.terms_used << '\n'
            << "truncation_estimate " << msm::format_double(r.truncation_estimate) << '\n';

  nlohmann::json j = {{"theorem", std::string(msm::to_string(id))},
                      {"prefactor_coefficient", complex_json(img.prefactor_coefficient)},
                      {"prefactor_power", complex_json(img.prefactor_power)},
                      {"argument_rule", arg_rule},
                      {"c", complex_json(img.c)},
                      {"spec", spec_json(img.spec)},
                      {"x", x},
                      {"value", complex_json(r.value)},
                      {"terms_used", r.terms_used}};
  std::cout << "json " << j.dump() << '\n';

  const msm::DiscrepancyReport report = msm::compare_with_printed(id);
  std::cout << "printed-display discrepancies " << report.mismatches.size() << '\n';
  for (const auto& d : report.mismatches) std::cout << "  " << msm::to_string(d) << '\n';
  for (const auto& k : report.unobserved) {
    std::cout << "  expected misprint not observed: " << k.field << " " << k.printed << '\n';
  }
}

msm::TheoremId theorem_arg(const std::string& text) {
  auto id = msm::parse_theorem(text);
  if (!id) throw UsageError("--theorem must be one of T1, T2, T3, T4");
  return *id;
}

struct GridAxis {
  std::string key;
  double lo = 0.0, hi = 0.0;
  int n = 1;
};

GridAxis parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  GridAxis g;
  if (eq == std::string::npos) throw UsageError("--grid expects key=lo:hi:n");
  g.key = text.substr(0, eq);
  std::stringstream in(text.substr(eq + 1));
  std::string lo, hi, n;
  if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') || !std::getline(in, n) ||
      n.find(':') != std::string::npos) {
    throw UsageError("--grid expects key=lo:hi:n");
  }
  g.lo = parse_real(lo, "--grid");
  g.hi = parse_real(hi, "--grid");
  g.n = parse_int(n, "--grid");
  if (g.n < 1) throw UsageError("--grid: n must be positive");
  return g;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

double default_suite_tol(msm::SuiteId id) {
  switch (id) {
    case msm::SuiteId::kGamma:
    case msm::SuiteId::kFoxWright:
      return 1e-11;
    case msm::SuiteId::kStruve:
      return 1e-12;
    case msm::SuiteId::kL1Quadrature:
    case msm::SuiteId::kL2Quadrature:
      return 1e-6;
    case msm::SuiteId::kT1Closure:
      return 1e-5;
    default:
      return 1e-10;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marichev-Saigo-Maeda operators and generalized Struve functions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  bool json = false;
  double tol = 1e-13;

  // eval
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a special function");
  eval->require_subcommand(1);
  struct EvalCmd {
    CLI::App* app;
    ParamSource ps;
  };
  std::vector<std::unique_ptr<EvalCmd>> evals;
  auto add_eval = [&](const std::string& name, const std::string& help,
                      const std::vector<std::pair<std::string, std::string>>& keys) {
    auto cmd = std::make_unique<EvalCmd>();
    cmd->app = eval->add_subcommand(name, help);
    for (const auto& [k, h] : keys) cmd->ps.add(cmd->app, k, h);
    cmd->ps.add_file_option(cmd->app);
    cmd->app->add_option("--tol", tol, "relative tolerance")->capture_default_str();
    cmd->app->add_flag("--json", json, "print JSON");
    evals.push_back(std::move(cmd));
    return evals.back().get();
  };
  EvalCmd* e_struve = add_eval("struve", "generalized Struve function",
                               {{"a", "positive integer"},
                                {"p", "order"},
                                {"b", "b"},
                                {"c", "c"},
                                {"xi_s", "xi (real, > 0)"},
                                {"alpha", "alpha (real, > 0)"},
                                {"mu", "mu"},
                                {"z", "argument"}});
  EvalCmd* e_fox = add_eval("foxwright", "unnormalized Fox-Wright function",
                            {{"upper", "upper pairs 'shift:weight,...'"},
                             {"lower", "lower pairs 'shift:weight,...'"},
                             {"z", "argument"}});
  EvalCmd* e_pfq = add_eval("pfq", "generalized hypergeometric pFq",
                            {{"a", "numerator parameters 'a1,a2,...'"},
                             {"b", "denominator parameters 'b1,...'"},
                             {"z", "argument"}});
  EvalCmd* e_f3 = add_eval("f3", "Appell F3",
                           {{"a", "a"}, {"a2", "a'"}, {"b", "b"}, {"b2", "b'"}, {"c", "c"},
                            {"w", "first argument"}, {"z", "second argument"}});
  EvalCmd* e_2f1 = add_eval("2f1", "Gauss 2F1 on real w < 1",
                            {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"w", "argument (real, < 1)"}});

  // image
  CLI::App* image = app.add_subcommand("image", "Theorem image of a Struve integrand");
  ParamSource image_ps;
  std::string theorem = "T1";
  image->add_option("--theorem", theorem, "T1, T2, T3 or T4")->capture_default_str();
  add_msm_params(image_ps, image);
  add_struve_params(image_ps, image);
  image_ps.add(image, "rho", "exponent rho");
  image_ps.add(image, "x", "evaluation point");
  image_ps.add_file_option(image);
  image->add_option("--tol", tol, "relative tolerance")->capture_default_str();

  // quad
  CLI::App* quad = app.add_subcommand("quad", "Operator by direct quadrature");
  ParamSource quad_ps;
  std::string op;
  int struve_terms = 0;
  double quad_tol = 1e-10;
  quad->add_option("operator", op, "i-left, i-right, d-left or d-right")
      ->required()
      ->check(CLI::IsMember({"i-left", "i-right", "d-left", "d-right"}));
  add_msm_params(quad_ps, quad);
  add_struve_params(quad_ps, quad);
  quad_ps.add(quad, "rho", "integrand t^(rho-1) (left) or t^-rho (right)");
  quad_ps.add(quad, "x", "evaluation point");
  quad_ps.add_file_option(quad);
  quad->add_option("--struve", struve_terms,
                   "multiply by the first K terms of W(t) (left) or W(1/t) (right)")
      ->check(CLI::Range(1, 500));
  quad->add_option("--tol", quad_tol, "relative tolerance")->capture_default_str();
  quad->add_flag("--json", json, "print JSON");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite_name;
  int n_cases = 100;
  std::uint64_t seed = 42;
  std::optional<double> verify_tol;
  std::string out_path, json_path;
  bool no_header = false;
  unsigned threads = 0;
  std::string suite_help = "one of:";
  for (msm::SuiteId id : msm::all_suites()) suite_help += " " + std::string(msm::to_string(id));
  verify->add_option("--suite", suite_name, suite_help)->required();
  verify->add_option("--n", n_cases, "number of cases")->check(CLI::Range(1, 10000000))->capture_default_str();
  verify->add_option("--seed", seed, "seed")->capture_default_str();
  verify->add_option("--tol", verify_tol, "relative tolerance (default depends on the suite)");
  verify->add_option("--out", out_path, "CSV report path ('-' for stdout; .json writes the summary)");
  verify->add_option("--json", json_path, "JSON summary path");
  verify->add_flag("--no-header", no_header, "omit the timestamp line");
  verify->add_option("--threads", threads, "worker threads (0: hardware concurrency)");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "CSV of theorem image values over a grid");
  ParamSource sweep_ps;
  std::vector<std::string> grids;
  sweep->add_option("--theorem", theorem, "T1, T2, T3 or T4")->capture_default_str();
  add_msm_params(sweep_ps, sweep);
  add_struve_params(sweep_ps, sweep);
  sweep_ps.add(sweep, "rho", "exponent rho");
  sweep_ps.add(sweep, "x", "evaluation point");
  sweep_ps.add_file_option(sweep);
  sweep->add_option("--grid", grids, "key=lo:hi:n, repeatable (cartesian product)")->required();
  sweep->add_option("--tol", tol, "relative tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool is_quad = quad->parsed();
  try {
    if (eval->parsed()) {
      check_tolerance(tol);
      msm::SeriesOptions opt;
      opt.tol = tol;
      for (auto& cmd : evals) {
        if (!cmd->app->parsed()) continue;
        cmd->ps.finalize(cmd->app);
        const ParamSource& ps = cmd->ps;
        if (cmd.get() == e_struve) {
          print_series(msm::struve_generalized(struve_params(ps), ps.required_complex("z"), opt), json);
        } else if (cmd.get() == e_fox) {
          msm::FoxWrightSpec spec;
          spec.upper = parse_pairs(ps.text("upper"), "--upper");
          spec.lower = parse_pairs(ps.text("lower"), "--lower");
          print_series(msm::fox_wright(spec, ps.required_complex("z"), opt), json);
        } else if (cmd.get() == e_pfq) {
          const auto a = parse_list(ps.text("a"), "--a");
          const auto b = parse_list(ps.text("b"), "--b");
          print_series(msm::hypergeometric_pfq(a, b, ps.required_complex("z"), opt), json);
        } else if (cmd.get() == e_f3) {
          print_series(msm::appell_f3(ps.required_complex("a"), ps.required_complex("a2"),
                                      ps.required_complex("b"), ps.required_complex("b2"),
                                      ps.required_complex("c"), ps.required_complex("w"),
                                      ps.required_complex("z"), opt),
                       json);
        } else if (cmd.get() == e_2f1) {
          msm::SeriesResult r;
          r.value = msm::gauss_2f1(ps.required_complex("a"), ps.required_complex("b"),
                                   ps.required_complex("c"), ps.required_real("w"));
          r.converged = true;
          if (json) {
            std::cout << nlohmann::json{{"value", complex_json(r.value)}}.dump(2) << '\n';
          } else {
            std::cout << "value " << format_complex(r.value) << '\n';
          }
        }
      }
    } else if (image->parsed()) {
      check_tolerance(tol);
      image_ps.finalize(image);
      const msm::TheoremId id = theorem_arg(theorem);
      const msm::ImageFormula img = msm::theorem_image(id, msm_params(image_ps), struve_params(image_ps),
                                                       image_ps.required_complex("rho"));
      print_image(id, img, image_ps.real("x", 1.0), tol);
    } else if (is_quad) {
      check_tolerance(quad_tol);
      quad_ps.finalize(quad);
      const bool left = op == "i-left" || op == "d-left";
      const msm::Side side = left ? msm::Side::kLeft : msm::Side::kRight;
      msm::IntegrandSpec spec{quad_ps.required_complex("rho"), std::nullopt, struve_terms};
      if (struve_terms > 0) spec.struve = struve_params(quad_ps);
      const msm::Integrand f = msm::make_integrand(side, spec);
      msm::OperatorOptions opt;
      opt.quadrature.tol = quad_tol;
      const msm::MsmParams m = msm_params(quad_ps);
      const double x = quad_ps.real("x", 1.0);
      if (!(x > 0.0)) throw UsageError("--x must be positive");
      msm::QuadratureResult r;
      if (op == "i-left") r = msm::msm_integral_left(m, f, x, opt);
      if (op == "i-right") r = msm::msm_integral_right(m, f, x, opt);
      if (op == "d-left") r = msm::msm_derivative_left(m, f, x, opt);
      if (op == "d-right") r = msm::msm_derivative_right(m, f, x, opt);
      print_quadrature(r, json);
    } else if (verify->parsed()) {
      const auto suite = msm::parse_suite(suite_name);
      if (!suite) throw UsageError("--suite: unknown suite '" + suite_name + "'");
      const double t = verify_tol.value_or(default_suite_tol(*suite));
      check_tolerance(t);
      const msm::SuiteReport report = msm::run_suite(*suite, n_cases, seed, t, threads);
      auto write = [&](const std::string& path, bool as_json) {
        if (path == "-") {
          as_json ? msm::write_json_summary(report, std::cout) : msm::write_csv(report, std::cout);
          return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw UsageError("cannot open '" + path + "' for writing");
        as_json ? msm::write_json_summary(report, out) : msm::write_csv(report, out);
      };
      if (!no_header) std::cout << "# msmtool verify " << utc_timestamp() << '\n';
      if (!out_path.empty()) {
        const bool as_json = out_path.size() > 5 && out_path.ends_with(".json");
        write(out_path, as_json);
      }
      if (!json_path.empty()) write(json_path, true);
      std::cout << msm::summary_line(report) << '\n';
      for (const auto& c : report.failures) {
        std::cout << "  case " << c.index << " " << c.classification << " rel " << msm::format_double(c.relative_error)
                  << (c.message.empty() ? "" : " " + c.message) << '\n';
      }
      return report.count("structural") == 0 ? 0 : 1;
    } else if (sweep->parsed()) {
      check_tolerance(tol);
      sweep_ps.finalize(sweep);
      const msm::TheoremId id = theorem_arg(theorem);
      std::vector<GridAxis> axes;
      for (const auto& g : grids) axes.push_back(parse_grid(g));
      for (const auto& a : axes) {
        static const std::vector<std::string> keys = {"lambda", "lambda2", "xi1", "xi2", "gamma", "a",
                                                      "p",      "b",       "c",   "xi_s", "alpha", "mu",
                                                      "rho",    "x"};
        if (std::find(keys.begin(), keys.end(), a.key) == keys.end()) {
          throw UsageError("--grid: unknown key '" + a.key + "'");
        }
      }
      for (const auto& a : axes) std::cout << a.key << ',';
      std::cout << "value_re,value_im,status\n";
      std::vector<int> idx(axes.size(), 0);
      msm::SeriesOptions opt;
      opt.tol = tol;
      while (true) {
        ParamSource ps = sweep_ps;
        for (std::size_t i = 0; i < axes.size(); ++i) {
          const GridAxis& a = axes[i];
          const double v = a.n == 1 ? a.lo : a.lo + (a.hi - a.lo) * idx[i] / (a.n - 1);
          ps.set(a.key, msm::format_double(v));
          std::cout << msm::format_double(v) << ',';
        }
        try {
          const msm::ImageFormula img =
              msm::theorem_image(id, msm_params(ps), struve_params(ps), ps.required_complex("rho"));
          const Complex v = msm::eval_image(img, ps.real("x", 1.0), opt).value;
          std::cout << msm::format_double(v.real()) << ',' << msm::format_double(v.imag()) << ",ok\n";
        } catch (const msm::ValidityError&) {
          std::cout << "nan,nan,invalid\n";
        } catch (const msm::Error&) {
          std::cout << "nan,nan,error\n";
        }
        std::size_t i = 0;
        while (i < axes.size() && ++idx[i] == axes[i].n) idx[i++] = 0;
        if (i == axes.size()) break;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const msm::ValidityError& e) {
    std::cerr << "validity: " << e.what() << '\n';
    return kExitValidity;
  } catch (const msm::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const msm::StepError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const msm::DomainError& e) {
    std::cerr << "domain: " << e.what() << '\n';
    return is_quad ? kExitValidity : kExitDomain;
  } catch (const msm::ConvergenceError& e) {
    std::cerr << "domain: " << e.what() << '\n';
    return is_quad ? kExitValidity : kExitDomain;
  } catch (const msm::Error& e) {
    std::cerr << "domain: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
