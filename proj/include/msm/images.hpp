#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm/gamma.hpp"
#include "msm/linear_form.hpp"
#include "msm/operators.hpp"
#include "msm/series.hpp"

namespace msm {

/// Power-function image lemmas: left/right integrals (L1, L2) and
/// left/right derivatives (D1, D2).
enum class LemmaId { kL1, kL2, kD1, kD2 };
enum class TheoremId { kT1, kT2, kT3, kT4 };

std::string_view to_string(LemmaId id);
std::string_view to_string(TheoremId id);
std::optional<LemmaId> parse_lemma(std::string_view text);
std::optional<TheoremId> parse_theorem(std::string_view text);

/// Lemma applied term by term in each theorem: T1 -> L1, T2 -> L2, T3 -> D1, T4 -> D2.
LemmaId lemma_for(TheoremId id);

/// offset + slope * k.
struct AffineForm {
  Complex offset;
  double slope = 0.0;
  Complex at(int k) const { return offset + slope * static_cast<double>(k); }
};

/// A lemma's gamma ratio and x-exponent with the exponent parameter replaced
/// by an affine form in k.
struct PowerImage {
  std::array<AffineForm, 3> numerator;
  std::array<AffineForm, 3> denominator;
  AffineForm power_exponent;
  int sign = 1;

  GammaRatioBundle bundle_at(int k) const;
  Complex coefficient_at(int k) const;
};

/// Fox-Wright argument as a function of x.
enum class ArgumentRule {
  kAscending,   // -c x^2 / 4
  kDescending,  // -c / (4 x^2)
};

std::string_view to_string(ArgumentRule rule);

struct ImageFormula {
  Complex prefactor_coefficient;
  Complex prefactor_power;
  FoxWrightSpec spec;
  ArgumentRule argument_rule = ArgumentRule::kAscending;
  Complex c;

  Complex argument(double x) const;
};

/// Name of the first violated inequality of the lemma's condition, or nothing.
std::optional<std::string> validity_violation(LemmaId id, const MsmParams& msm, Complex rho);
bool validity(LemmaId id, const MsmParams& msm, Complex rho);

/// Theorem condition: the lemma's condition at the k = 0 exponent rho + p + 1,
/// plus p/xi_s + b/2 not a negative integer for T2.
std::optional<std::string> theorem_validity_violation(TheoremId id, const MsmParams& msm,
                                                      const StruveParams& sp, Complex rho);

struct PowerImageValue {
  Complex coefficient;
  Complex exponent;
};

/// Image of t^(rho-1) (L1, D1) or t^(-rho) (L2, D2): coefficient * x^exponent.
PowerImageValue power_image(LemmaId id, const MsmParams& msm, Complex rho);

/// The lemma with its exponent parameter replaced by `rho_k`; evaluating at k
/// gives power_image(id, msm, rho_k.at(k)).
PowerImage lemma_bundle(LemmaId id, const MsmParams& msm, const AffineForm& rho_k);

/// Symbolic lemma: three numerator and three denominator gamma arguments and
/// the x-exponent, linear in rho and the operator parameters.
struct LemmaTemplate {
  std::array<LinearForm, 3> numerator;
  std::array<LinearForm, 3> denominator;
  LinearForm power;
};

const LemmaTemplate& lemma_template(LemmaId id);

struct SymbolicPair {
  LinearForm offset;
  LinearForm weight;
};

/// Theorem image in symbolic form, compiled from the lemma template.
struct SymbolicImage {
  std::vector<SymbolicPair> upper;
  std::vector<SymbolicPair> lower;
  LinearForm prefactor_power;
  ArgumentRule argument_rule = ArgumentRule::kAscending;
};

SymbolicImage symbolic_theorem(TheoremId id);

AtomValues bind_atoms(const MsmParams& msm, const StruveParams& sp, Complex rho);

/// Image of t^(rho-1) W(t) (T1, T3) or t^(-rho) W(1/t) (T2, T4) under the
/// corresponding operator: 2^-(p+1) x^power 4Psi5[...; argument(x)].
ImageFormula theorem_image(TheoremId id, const MsmParams& msm, const StruveParams& sp,
                           Complex rho);

SeriesResult eval_image(const ImageFormula& img, double x, const SeriesOptions& opt = {});

}  // namespace msm
