#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "msm/verification.hpp"

namespace msm {

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

nlohmann::json case_json(const CaseRecord& c) {
  nlohmann::json params = nlohmann::json::parse(c.params_json, nullptr, false);
  return {{"case", c.index},
          {"params", params.is_discarded() ? nlohmann::json(c.params_json) : params},
          {"expected", {number_json(c.expected.real()), number_json(c.expected.imag())}},
          {"got", {number_json(c.got.real()), number_json(c.got.imag())}},
          {"rel_error", number_json(c.relative_error)},
          {"class", c.classification},
          {"message", c.message}};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

void write_csv(const SuiteReport& report, std::ostream& out) {
  out << "suite,case,params,expected_re,expected_im,got_re,got_im,rel_error,class\n";
  for (const CaseRecord& c : report.cases) {
    out << to_string(report.suite_id) << ',' << c.index << ',' << csv_quote(c.params_json)
        << ',' << format_double(c.expected.real()) << ',' << format_double(c.expected.imag())
        << ',' << format_double(c.got.real()) << ',' << format_double(c.got.imag()) << ','
        << format_double(c.relative_error) << ',' << c.classification << '\n';
  }
}

void write_json_summary(const SuiteReport& report, std::ostream& out) {
  nlohmann::json failures = nlohmann::json::array();
  for (const CaseRecord& c : report.failures) failures.push_back(case_json(c));
  nlohmann::json j = {{"suite_id", std::string(to_string(report.suite_id))},
                      {"seed", report.seed},
                      {"tol", report.tol},
                      {"n_cases", report.n_cases},
                      {"n_pass", report.n_pass},
                      {"n_numerical", report.count("numerical")},
                      {"n_structural", report.count("structural")},
                      {"worst_relative_error", number_json(report.worst_relative_error)},
                      {"failures", failures},
                      {"discrepancy_notes", report.discrepancy_notes}};
  out << j.dump(2) << '\n';
}

std::string summary_line(const SuiteReport& report) {
  return std::string(to_string(report.suite_id)) + ": " + std::to_string(report.n_pass) + "/" +
         std::to_string(report.n_cases) + " pass, " + std::to_string(report.count("numerical")) +
         " numerical, " + std::to_string(report.count("structural")) +
         " structural, worst relative error " + format_double(report.worst_relative_error) +
         " (tol " + format_double(report.tol) + ")";
}

}  // namespace msm
