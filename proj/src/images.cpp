#include "msm/images.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "msm/errors.hpp"

namespace msm {

namespace {

LinearForm form(std::string_view text) { return LinearForm::parse(text); }

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Re(rho) > max over the listed bounds; returns the first violated bound.
std::optional<std::string> check_bounds(
    Complex rho, std::initializer_list<std::pair<const char*, double>> bounds) {
  for (const auto& [name, bound] : bounds) {
    if (!(rho.real() > bound)) {
      return "Re(rho) > " + std::string(name) + " fails (" + fmt_real(rho.real()) +
             " <= " + fmt_real(bound) + ")";
    }
  }
  return std::nullopt;
}

std::optional<std::string> gamma_positive(const MsmParams& m) {
  if (!(m.gamma.real() > 0.0)) return std::string("Re(gamma) > 0 fails");
  return std::nullopt;
}

}  // namespace

std::string_view to_string(LemmaId id) {
  switch (id) {
    case LemmaId::kL1: return "L1";
    case LemmaId::kL2: return "L2";
    case LemmaId::kD1: return "D1";
    case LemmaId::kD2: return "D2";
  }
  return "?";
}

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::kT1: return "T1";
    case TheoremId::kT2: return "T2";
    case TheoremId::kT3: return "T3";
    case TheoremId::kT4: return "T4";
  }
  return "?";
}

std::optional<LemmaId> parse_lemma(std::string_view text) {
  for (LemmaId id : {LemmaId::kL1, LemmaId::kL2, LemmaId::kD1, LemmaId::kD2}) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

std::optional<TheoremId> parse_theorem(std::string_view text) {
  for (TheoremId id : {TheoremId::kT1, TheoremId::kT2, TheoremId::kT3, TheoremId::kT4}) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

LemmaId lemma_for(TheoremId id) {
  switch (id) {
    case TheoremId::kT1: return LemmaId::kL1;
    case TheoremId::kT2: return LemmaId::kL2;
    case TheoremId::kT3: return LemmaId::kD1;
    case TheoremId::kT4: return LemmaId::kD2;
  }
  return LemmaId::kL1;
}

std::string_view to_string(ArgumentRule rule) {
  return rule == ArgumentRule::kAscending ? "-c*x^2/4" : "-c/(4*x^2)";
}

GammaRatioBundle PowerImage::bundle_at(int k) const {
  GammaRatioBundle b;
  for (const AffineForm& f : numerator) b.numerator_args.push_back(f.at(k));
  for (const AffineForm& f : denominator) b.denominator_args.push_back(f.at(k));
  return b;
}

Complex PowerImage::coefficient_at(int k) const {
  return static_cast<double>(sign) * gamma_ratio(bundle_at(k));
}

Complex ImageFormula::argument(double x) const {
  const double x2 = x * x;
  return argument_rule == ArgumentRule::kAscending ? -c * x2 / 4.0 : -c / (4.0 * x2);
}

std::optional<std::string> validity_violation(LemmaId id, const MsmParams& m, Complex rho) {
  const Complex l = m.lambda, l2 = m.lambda2, x1 = m.xi1, x2 = m.xi2, g = m.gamma;
  switch (id) {
    case LemmaId::kL1:
      if (auto v = gamma_positive(m)) return v;
      return check_bounds(rho, {{"0", 0.0},
                                {"Re(lambda-lambda2-xi1-gamma)", (l - l2 - x1 - g).real()},
                                {"Re(lambda2-xi2)", (l2 - x2).real()}});
    case LemmaId::kL2:
      if (auto v = gamma_positive(m)) return v;
      return check_bounds(rho, {{"Re(xi1)", x1.real()},
                                {"Re(-lambda-lambda2+gamma)", (-l - l2 + g).real()},
                                {"Re(-lambda-xi2+gamma)", (-l - x2 + g).real()}});
    case LemmaId::kD1:
      return check_bounds(rho, {{"0", 0.0},
                                {"Re(-lambda+xi1)", (-l + x1).real()},
                                {"Re(-lambda-lambda2-xi2+gamma)", (-l - l2 - x2 + g).real()}});
    case LemmaId::kD2:
      return check_bounds(
          rho, {{"Re(-xi2)", (-x2).real()},
                {"Re(lambda2+xi1-gamma)", (l2 + x1 - g).real()},
                {"Re(lambda+lambda2-gamma)+[Re(gamma)]+1",
                 (l + l2 - g).real() + std::floor(g.real()) + 1.0}});
  }
  return std::nullopt;
}

bool validity(LemmaId id, const MsmParams& msm, Complex rho) {
  return !validity_violation(id, msm, rho).has_value();
}

std::optional<std::string> theorem_validity_violation(TheoremId id, const MsmParams& msm,
                                                      const StruveParams& sp, Complex rho) {
  if (auto v = validity_violation(lemma_for(id), msm, rho + sp.p + 1.0)) {
    return std::string(to_string(lemma_for(id))) + " at rho+p+1: " + *v;
  }
  if (id == TheoremId::kT2 && is_nonpositive_integer(sp.p / sp.xi_s + sp.b / 2.0 + 1.0)) {
    return std::string("p/xi_s + b/2 != -1, -2, ... fails");
  }
  return std::nullopt;
}

PowerImageValue power_image(LemmaId id, const MsmParams& m, Complex r) {
  const Complex l = m.lambda, l2 = m.lambda2, x1 = m.xi1, x2 = m.xi2, g = m.gamma;
  switch (id) {
    case LemmaId::kL1: {
      const Complex num[] = {r, r + g - l - l2 - x1, r + x2 - l2};
      const Complex den[] = {r + x2, r + g - l - l2, r + g - l2 - x1};
      return {gamma_ratio(num, den), r - l - l2 + g - 1.0};
    }
    case LemmaId::kL2: {
      const Complex num[] = {r - x1, r + l + l2 - g, r + l + x2 - g};
      const Complex den[] = {r, r + l - x1, r + l + l2 + x2 - g};
      return {gamma_ratio(num, den), -l - l2 + g - r};
    }
    case LemmaId::kD1: {
      const Complex num[] = {r, r + l - x1, r + l + l2 + x2 - g};
      const Complex den[] = {r - x1, r + l + l2 - g, r + l + x2 - g};
      return {gamma_ratio(num, den), l + l2 - g + r - 1.0};
    }
    case LemmaId::kD2: {
      const Complex num[] = {r + x2, r + g - l - l2, r + g - l2 - x1};
      const Complex den[] = {r, r - l2 + x2, r + g - l - l2 - x1};
      return {gamma_ratio(num, den), l + l2 - g - r};
    }
  }
  return {};
}

const LemmaTemplate& lemma_template(LemmaId id) {
  static const LemmaTemplate l1{
      {form("rho"), form("rho+gamma-lambda-lambda2-xi1"), form("rho+xi2-lambda2")},
      {form("rho+xi2"), form("rho+gamma-lambda-lambda2"), form("rho+gamma-lambda2-xi1")},
      form("rho-lambda-lambda2+gamma-1")};
  static const LemmaTemplate l2{
      {form("rho-xi1"), form("rho+lambda+lambda2-gamma"), form("rho+lambda+xi2-gamma")},
      {form("rho"), form("rho+lambda-xi1"), form("rho+lambda+lambda2+xi2-gamma")},
      form("-lambda-lambda2+gamma-rho")};
  static const LemmaTemplate d1{
      {form("rho"), form("rho+lambda-xi1"), form("rho+lambda+lambda2+xi2-gamma")},
      {form("rho-xi1"), form("rho+lambda+lambda2-gamma"), form("rho+lambda+xi2-gamma")},
      form("lambda+lambda2-gamma+rho-1")};
  static const LemmaTemplate d2{
      {form("rho+xi2"), form("rho+gamma-lambda-lambda2"), form("rho+gamma-lambda2-xi1")},
      {form("rho"), form("rho-lambda2+xi2"), form("rho+gamma-lambda-lambda2-xi1")},
      form("lambda+lambda2-gamma-rho")};
  switch (id) {
    case LemmaId::kL1: return l1;
    case LemmaId::kL2: return l2;
    case LemmaId::kD1: return d1;
    case LemmaId::kD2: return d2;
  }
  return l1;
}

AtomValues bind_atoms(const MsmParams& msm, const StruveParams& sp, Complex rho) {
  AtomValues v;
  v.fill(0.0);
  auto set = [&](Atom a, Complex value) { v[static_cast<std::size_t>(a)] = value; };
  set(Atom::kOne, 1.0);
  set(Atom::kRho, rho);
  set(Atom::kP, sp.p);
  set(Atom::kLambda, msm.lambda);
  set(Atom::kLambda2, msm.lambda2);
  set(Atom::kXi1, msm.xi1);
  set(Atom::kXi2, msm.xi2);
  set(Atom::kGamma, msm.gamma);
  set(Atom::kMu, sp.mu);
  set(Atom::kB, sp.b);
  set(Atom::kAlpha, sp.alpha);
  set(Atom::kA, static_cast<double>(sp.a));
  set(Atom::kPOverXiS, sp.p / sp.xi_s);
  set(Atom::kPOverMu, sp.p / sp.mu);
  return v;
}

PowerImage lemma_bundle(LemmaId id, const MsmParams& msm, const AffineForm& rho_k) {
  const LemmaTemplate& t = lemma_template(id);
  AtomValues values = bind_atoms(msm, StruveParams{}, 0.0);
  // The rho coefficient carries both the offset and the k-slope.
  auto affine = [&](const LinearForm& f) {
    const double r = f[Atom::kRho];
    return AffineForm{f.evaluate(values) + r * rho_k.offset, r * rho_k.slope};
  };
  PowerImage img;
  for (std::size_t i = 0; i < 3; ++i) {
    img.numerator[i] = affine(t.numerator[i]);
    img.denominator[i] = affine(t.denominator[i]);
  }
  img.power_exponent = affine(t.power);
  return img;
}

SymbolicImage symbolic_theorem(TheoremId id) {
  const LemmaTemplate& t = lemma_template(lemma_for(id));
  const LinearForm rho0 = form("rho+p+1");
  const LinearForm two = LinearForm::constant(2.0);
  SymbolicImage img;
  for (const LinearForm& f : t.numerator) img.upper.push_back({f.substitute_rho(rho0), two});
  img.upper.push_back({LinearForm::constant(1.0), LinearForm::constant(1.0)});
  for (const LinearForm& f : t.denominator) img.lower.push_back({f.substitute_rho(rho0), two});
  img.lower.push_back({form("mu"), form("alpha")});
  img.lower.push_back({form("p/xi_s+b/2+1"), form("a")});
  img.prefactor_power = t.power.substitute_rho(rho0);
  img.argument_rule =
      t.power[Atom::kRho] > 0.0 ? ArgumentRule::kAscending : ArgumentRule::kDescending;
  return img;
}

ImageFormula theorem_image(TheoremId id, const MsmParams& msm, const StruveParams& sp,
                           Complex rho) {
  if (auto v = theorem_validity_violation(id, msm, sp, rho)) {
    throw ValidityError(std::string("theorem_image ") + std::string(to_string(id)) + ": " + *v);
  }
  // Term k is the lemma applied to exponent rho + p + 1 + 2k.
  const PowerImage bundle = lemma_bundle(lemma_for(id), msm, {rho + sp.p + 1.0, 2.0});
  ImageFormula img;
  for (const AffineForm& f : bundle.numerator) img.spec.upper.push_back({f.offset, f.slope});
  img.spec.upper.push_back({1.0, 1.0});
  for (const AffineForm& f : bundle.denominator) img.spec.lower.push_back({f.offset, f.slope});
  img.spec.lower.push_back({sp.mu, sp.alpha});
  img.spec.lower.push_back({sp.second_shift(), static_cast<double>(sp.a)});
  img.prefactor_power = bundle.power_exponent.offset;
  img.prefactor_coefficient = std::exp(-(sp.p + 1.0) * std::numbers::ln2);
  img.argument_rule = bundle.power_exponent.slope > 0.0 ? ArgumentRule::kAscending
                                                        : ArgumentRule::kDescending;
  img.c = sp.c;
  return img;
}

SeriesResult eval_image(const ImageFormula& img, double x, const SeriesOptions& opt) {
  if (!(x > 0.0)) throw DomainError("eval_image: x must be positive");
  SeriesResult r = fox_wright(img.spec, img.argument(x), opt);
  const Complex scale =
      img.prefactor_coefficient * std::exp(img.prefactor_power * std::log(x));
  r.value *= scale;
  r.truncation_estimate *= std::abs(scale);
  return r;
}

}  // namespace msm
