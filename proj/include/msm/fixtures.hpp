#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm/images.hpp"

namespace msm {

struct PrintedPair {
  std::string offset_text;
  std::string weight_text;
  /// Empty when the printed text does not parse.
  std::optional<SymbolicPair> parsed;
};

/// A mismatch the fixture expects, keyed by field and printed text.
struct KnownMisprint {
  std::string field;
  std::string printed;
  std::string note;
};

struct PrintedTheorem {
  TheoremId id = TheoremId::kT1;
  std::string integrand;
  std::string prefactor_power_text;
  std::optional<LinearForm> prefactor_power;
  std::string argument_text;
  std::vector<PrintedPair> upper;
  std::vector<PrintedPair> lower;
  std::vector<KnownMisprint> known;
};

/// Parses the fixture format (see data/printed_theorems.txt). Throws
/// std::invalid_argument with a line number on malformed records.
std::vector<PrintedTheorem> parse_printed_theorems(std::string_view text);

/// The fixture compiled into the library.
const std::vector<PrintedTheorem>& printed_theorems();
const PrintedTheorem& printed_theorem(TheoremId id);

struct Discrepancy {
  TheoremId theorem = TheoremId::kT1;
  std::string field;  // upper | lower | prefactor_power | argument
  std::string printed;
  std::string generated;
  bool documented = false;
  std::string note;
};

struct DiscrepancyReport {
  std::vector<Discrepancy> mismatches;
  /// Known misprints listed in the fixture that the comparison did not find.
  std::vector<KnownMisprint> unobserved;

  bool matches_fixture() const;
};

/// Compares the compiled symbolic image with the printed display. Pairs are
/// matched as a multiset; leftover printed and generated pairs are paired by
/// smallest coefficient distance.
DiscrepancyReport compare_with_printed(TheoremId id);
DiscrepancyReport compare_with_printed(const PrintedTheorem& printed,
                                       const SymbolicImage& generated);

std::string to_string(const Discrepancy& d);

}  // namespace msm
