#pragma once

#include <array>
#include <string>
#include <string_view>

#include "msm/gamma.hpp"

namespace msm {

/// Atoms of the symbolic gamma arguments: the constant 1, the image exponent,
/// operator and Struve parameters, and the two quotients that appear as single
/// symbols in the displays.
enum class Atom {
  kOne,
  kRho,
  kP,
  kLambda,
  kLambda2,
  kXi1,
  kXi2,
  kGamma,
  kMu,
  kB,
  kAlpha,
  kA,
  kPOverXiS,
  kPOverMu,
  kCount
};

inline constexpr std::size_t kAtomCount = static_cast<std::size_t>(Atom::kCount);

/// Spelling used by the parser and printer.
std::string_view atom_name(Atom atom);

/// Values bound to the atoms when a form is evaluated.
using AtomValues = std::array<Complex, kAtomCount>;

/// Linear combination of atoms with rational coefficients. Coefficients are
/// stored as doubles; every coefficient that occurs (small integers and
/// halves) is exact.
class LinearForm {
 public:
  LinearForm() { coef_.fill(0.0); }
  static LinearForm constant(double c);
  static LinearForm atom(Atom a, double coefficient = 1.0);

  double operator[](Atom a) const { return coef_[static_cast<std::size_t>(a)]; }
  double& operator[](Atom a) { return coef_[static_cast<std::size_t>(a)]; }

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  LinearForm& operator*=(double s);
  friend LinearForm operator+(LinearForm l, const LinearForm& r) { return l += r; }
  friend LinearForm operator-(LinearForm l, const LinearForm& r) { return l -= r; }
  friend LinearForm operator*(double s, LinearForm f) { return f *= s; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

  /// Replaces rho by `form` (rho's coefficient times form).
  LinearForm substitute_rho(const LinearForm& form) const;

  Complex evaluate(const AtomValues& values) const;

  /// Sum of |coefficient differences|, used to pair near-miss mismatches.
  double distance(const LinearForm& o) const;

  /// Canonical text, e.g. "rho+p+1+gamma-lambda-lambda2-xi1".
  std::string to_string() const;

  /// Parses sums of terms `[c*]atom[/d]` or numbers, e.g. "p/xi_s+b/2+1".
  /// Throws std::invalid_argument naming the offending text.
  static LinearForm parse(std::string_view text);

 private:
  std::array<double, kAtomCount> coef_;
};

}  // namespace msm
