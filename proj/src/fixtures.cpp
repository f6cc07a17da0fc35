#include "msm/fixtures.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace msm {

namespace detail {
extern const std::string_view kPrintedTheorems;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<LinearForm> try_parse(std::string_view text) {
  try {
    return LinearForm::parse(text);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("printed theorems, line " + std::to_string(line) + ": " + what);
}

std::string pair_text(const SymbolicPair& p) {
  return "(" + p.offset.to_string() + ", " + p.weight.to_string() + ")";
}

std::string pair_text(const PrintedPair& p) {
  return "(" + p.offset_text + ", " + p.weight_text + ")";
}

double pair_distance(const PrintedPair& printed, const SymbolicPair& generated) {
  if (!printed.parsed) {
    // Unparseable: only the weight can be compared.
    const auto w = try_parse(printed.weight_text);
    return 1000.0 + (w ? w->distance(generated.weight) : 1000.0);
  }
  return printed.parsed->offset.distance(generated.offset) +
         printed.parsed->weight.distance(generated.weight);
}

bool same(const PrintedPair& printed, const SymbolicPair& generated) {
  return printed.parsed && printed.parsed->offset == generated.offset &&
         printed.parsed->weight == generated.weight;
}

void compare_pairs(const std::string& field, const std::vector<PrintedPair>& printed,
                   const std::vector<SymbolicPair>& generated, TheoremId id,
                   std::vector<Discrepancy>& out) {
  std::vector<bool> used(generated.size(), false);
  std::vector<const PrintedPair*> leftover;
  for (const PrintedPair& p : printed) {
    bool found = false;
    for (std::size_t g = 0; g < generated.size() && !found; ++g) {
      if (!used[g] && same(p, generated[g])) {
        used[g] = true;
        found = true;
      }
    }
    if (!found) leftover.push_back(&p);
  }
  for (const PrintedPair* p : leftover) {
    std::size_t best = generated.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < generated.size(); ++g) {
      if (used[g]) continue;
      const double d = pair_distance(*p, generated[g]);
      if (d < best_distance) {
        best_distance = d;
        best = g;
      }
    }
    Discrepancy d{id, field, p->offset_text, "", false, ""};
    if (best < generated.size()) {
      used[best] = true;
      d.generated = generated[best].offset.to_string();
      const auto weight = try_parse(p->weight_text);
      if (!(weight && *weight == generated[best].weight)) {
        d.note = "weights differ: printed " + pair_text(*p) + ", generated " +
                 pair_text(generated[best]);
      }
    }
    out.push_back(d);
  }
  for (std::size_t g = 0; g < generated.size(); ++g) {
    if (!used[g]) {
      out.push_back({id, field, "", generated[g].offset.to_string(), false,
                     "generated pair " + pair_text(generated[g]) + " has no printed counterpart"});
    }
  }
}

}  // namespace

std::vector<PrintedTheorem> parse_printed_theorems(std::string_view text) {
  std::vector<PrintedTheorem> out;
  std::optional<PrintedTheorem> current;
  int line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t space = line.find(' ');
    const std::string_view key = line.substr(0, space);
    const std::string_view rest =
        space == std::string_view::npos ? std::string_view{} : trim(line.substr(space + 1));

    if (key == "theorem") {
      if (current) fail(line_no, "nested theorem record");
      const auto id = parse_theorem(rest);
      if (!id) fail(line_no, "unknown theorem '" + std::string(rest) + "'");
      current.emplace();
      current->id = *id;
      continue;
    }
    if (!current) fail(line_no, "'" + std::string(key) + "' outside a theorem record");
    if (key == "end") {
      out.push_back(std::move(*current));
      current.reset();
    } else if (key == "integrand") {
      current->integrand = std::string(rest);
    } else if (key == "prefactor_power") {
      current->prefactor_power_text = std::string(rest);
      current->prefactor_power = try_parse(rest);
    } else if (key == "argument") {
      current->argument_text = std::string(rest);
    } else if (key == "upper" || key == "lower") {
      const std::size_t semi = rest.find(';');
      if (semi == std::string_view::npos) fail(line_no, "pair without ';'");
      PrintedPair p;
      p.offset_text = std::string(trim(rest.substr(0, semi)));
      p.weight_text = std::string(trim(rest.substr(semi + 1)));
      const auto offset = try_parse(p.offset_text);
      const auto weight = try_parse(p.weight_text);
      if (offset && weight) p.parsed = SymbolicPair{*offset, *weight};
      (key == "upper" ? current->upper : current->lower).push_back(std::move(p));
    } else if (key == "known") {
      const std::size_t field_end = rest.find(' ');
      const std::size_t sep = rest.find("::");
      if (field_end == std::string_view::npos || sep == std::string_view::npos ||
          sep < field_end) {
        fail(line_no, "known line needs '<field> <printed> :: <note>'");
      }
      current->known.push_back({std::string(rest.substr(0, field_end)),
                                std::string(trim(rest.substr(field_end, sep - field_end))),
                                std::string(trim(rest.substr(sep + 2)))});
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (current) fail(line_no, "unterminated theorem record");
  return out;
}

const std::vector<PrintedTheorem>& printed_theorems() {
  static const std::vector<PrintedTheorem> theorems =
      parse_printed_theorems(detail::kPrintedTheorems);
  return theorems;
}

const PrintedTheorem& printed_theorem(TheoremId id) {
  for (const PrintedTheorem& t : printed_theorems()) {
    if (t.id == id) return t;
  }
  throw std::out_of_range("no printed fixture for " + std::string(to_string(id)));
}

bool DiscrepancyReport::matches_fixture() const {
  return unobserved.empty() &&
         std::all_of(mismatches.begin(), mismatches.end(),
                     [](const Discrepancy& d) { return d.documented; });
}

DiscrepancyReport compare_with_printed(const PrintedTheorem& printed,
                                       const SymbolicImage& generated) {
  DiscrepancyReport report;
  auto& out = report.mismatches;
  compare_pairs("upper", printed.upper, generated.upper, printed.id, out);
  compare_pairs("lower", printed.lower, generated.lower, printed.id, out);
  if (!printed.prefactor_power || !(*printed.prefactor_power == generated.prefactor_power)) {
    out.push_back({printed.id, "prefactor_power", printed.prefactor_power_text,
                   generated.prefactor_power.to_string(), false, ""});
  }
  const std::string_view rule = to_string(generated.argument_rule);
  if (printed.argument_text != rule) {
    out.push_back({printed.id, "argument", printed.argument_text, std::string(rule), false, ""});
  }

  std::vector<bool> seen(printed.known.size(), false);
  for (Discrepancy& d : out) {
    for (std::size_t i = 0; i < printed.known.size(); ++i) {
      const KnownMisprint& k = printed.known[i];
      if (!seen[i] && k.field == d.field && k.printed == d.printed) {
        seen[i] = true;
        d.documented = true;
        d.note = d.note.empty() ? k.note : k.note + "; " + d.note;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < printed.known.size(); ++i) {
    if (!seen[i]) report.unobserved.push_back(printed.known[i]);
  }
  return report;
}

DiscrepancyReport compare_with_printed(TheoremId id) {
  return compare_with_printed(printed_theorem(id), symbolic_theorem(id));
}

std::string to_string(const Discrepancy& d) {
  std::string s = std::string(to_string(d.theorem)) + " " + d.field + ": printed '" +
                  d.printed + "', generated '" + d.generated + "'";
  s += d.documented ? " [documented]" : " [UNDOCUMENTED]";
  if (!d.note.empty()) s += " - " + d.note;
  return s;
}

}  // namespace msm
