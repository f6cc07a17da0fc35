#include "msm/linear_form.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace msm {

namespace {

// Printing order; quotient atoms sit next to their numerators.
constexpr Atom kOrder[] = {Atom::kRho,   Atom::kP,      Atom::kPOverXiS, Atom::kPOverMu,
                           Atom::kB,     Atom::kOne,    Atom::kLambda,   Atom::kLambda2,
                           Atom::kXi1,   Atom::kXi2,    Atom::kGamma,    Atom::kMu,
                           Atom::kAlpha, Atom::kA};

std::string number_text(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("linear form '" + std::string(whole) +
                                "': bad number '" + std::string(s) + "'");
  }
  return v;
}

bool is_number_start(char c) { return (c >= '0' && c <= '9') || c == '.'; }

}  // namespace

std::string_view atom_name(Atom atom) {
  switch (atom) {
    case Atom::kOne: return "1";
    case Atom::kRho: return "rho";
    case Atom::kP: return "p";
    case Atom::kLambda: return "lambda";
    case Atom::kLambda2: return "lambda2";
    case Atom::kXi1: return "xi1";
    case Atom::kXi2: return "xi2";
    case Atom::kGamma: return "gamma";
    case Atom::kMu: return "mu";
    case Atom::kB: return "b";
    case Atom::kAlpha: return "alpha";
    case Atom::kA: return "a";
    case Atom::kPOverXiS: return "p/xi_s";
    case Atom::kPOverMu: return "p/mu";
    case Atom::kCount: break;
  }
  return "?";
}

LinearForm LinearForm::constant(double c) {
  LinearForm f;
  f[Atom::kOne] = c;
  return f;
}

LinearForm LinearForm::atom(Atom a, double coefficient) {
  LinearForm f;
  f[a] = coefficient;
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  for (std::size_t i = 0; i < kAtomCount; ++i) coef_[i] += o.coef_[i];
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  for (std::size_t i = 0; i < kAtomCount; ++i) coef_[i] -= o.coef_[i];
  return *this;
}

LinearForm& LinearForm::operator*=(double s) {
  for (double& c : coef_) c *= s;
  return *this;
}

LinearForm LinearForm::substitute_rho(const LinearForm& form) const {
  LinearForm out = *this;
  const double r = out[Atom::kRho];
  out[Atom::kRho] = 0.0;
  return out + r * form;
}

Complex LinearForm::evaluate(const AtomValues& values) const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < kAtomCount; ++i) {
    if (coef_[i] != 0.0) {
      sum += coef_[i] * (static_cast<Atom>(i) == Atom::kOne ? Complex(1.0) : values[i]);
    }
  }
  return sum;
}

double LinearForm::distance(const LinearForm& o) const {
  double d = 0.0;
  for (std::size_t i = 0; i < kAtomCount; ++i) d += std::abs(coef_[i] - o.coef_[i]);
  return d;
}

std::string LinearForm::to_string() const {
  std::string out;
  for (Atom a : kOrder) {
    const double c = (*this)[a];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (c < 0.0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (a == Atom::kOne) {
      out += number_text(mag);
      continue;
    }
    if (mag != 1.0) {
      const double twice = 2.0 * mag;
      if (twice == std::round(twice) && mag != std::round(mag)) {
        if (twice != 1.0) out += number_text(twice) + "*";
        out += std::string(atom_name(a)) + "/2";
        continue;
      }
      out += number_text(mag) + "*";
    }
    out += atom_name(a);
  }
  return out.empty() ? "0" : out;
}

LinearForm LinearForm::parse(std::string_view text) {
  LinearForm out;
  std::string compact;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') compact += ch;
  }
  if (compact.empty()) {
    throw std::invalid_argument("linear form: empty expression");
  }
  std::size_t pos = 0;
  while (pos < compact.size()) {
    double sign = 1.0;
    if (compact[pos] == '+' || compact[pos] == '-') {
      sign = compact[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (pos != 0) {
      throw std::invalid_argument("linear form '" + compact + "': expected + or - at offset " +
                                  std::to_string(pos));
    }
    std::size_t end = pos;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') ++end;
    std::string_view term(compact.data() + pos, end - pos);
    if (term.empty()) {
      throw std::invalid_argument("linear form '" + compact + "': empty term");
    }

    double coefficient = sign;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coefficient *= parse_number(term.substr(0, star), compact);
      term = term.substr(star + 1);
    }
    // Quotient atoms are single symbols; other '/d' suffixes divide.
    Atom atom = Atom::kOne;
    bool matched = false;
    for (Atom a : {Atom::kPOverXiS, Atom::kPOverMu}) {
      if (term == atom_name(a)) {
        atom = a;
        matched = true;
      }
    }
    if (!matched) {
      if (auto slash = term.find('/'); slash != std::string_view::npos) {
        coefficient /= parse_number(term.substr(slash + 1), compact);
        term = term.substr(0, slash);
      }
      if (is_number_start(term.front())) {
        coefficient *= parse_number(term, compact);
        atom = Atom::kOne;
        matched = true;
      } else {
        for (std::size_t i = 1; i < kAtomCount; ++i) {
          if (term == atom_name(static_cast<Atom>(i))) {
            atom = static_cast<Atom>(i);
            matched = true;
          }
        }
      }
    }
    if (!matched) {
      throw std::invalid_argument("linear form '" + compact + "': unknown symbol '" +
                                  std::string(term) + "'");
    }
    out[atom] += coefficient;
    pos = end;
  }
  return out;
}

}  // namespace msm
