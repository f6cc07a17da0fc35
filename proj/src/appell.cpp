#include <cmath>
#include <vector>

#include "msm/errors.hpp"
#include "msm/series.hpp"
#include "summation.hpp"

namespace msm {

SeriesResult appell_f3(Complex a, Complex a2, Complex b, Complex b2, Complex c,
                       Complex w, Complex z, const SeriesOptions& opt) {
  if (std::abs(w) >= 1.0 || std::abs(z) >= 1.0) {
    throw DivergenceError("appell_f3: arguments outside the open unit bidisc");
  }

  // T(m, n) = P_m Q_n / (c)_{m+n} with P_m = (a)_m (b)_m w^m / m! and
  // Q_n = (a2)_n (b2)_n z^n / n!.
  std::vector<Complex> p_terms{1.0};
  std::vector<Complex> q_terms{1.0};
  Complex c_rising = 1.0;

  auto diagonal = [&](int s) -> detail::Term {
    if (s > 0) {
      const double prev = static_cast<double>(s - 1);
      const double sd = static_cast<double>(s);
      p_terms.push_back(p_terms.back() * (a + prev) * (b + prev) / sd * w);
      q_terms.push_back(q_terms.back() * (a2 + prev) * (b2 + prev) / sd * z);
      if (is_nonpositive_integer(c + prev)) {
        throw PoleError("appell_f3: (c)_s vanishes");
      }
      c_rising *= c + prev;
    }
    detail::CompensatedSum sum;
    double magnitude = 0.0;
    for (int m = 0; m <= s; ++m) {
      const Complex t = p_terms[m] * q_terms[s - m];
      sum.add(t);
      magnitude += std::abs(t);
    }
    const double scale = std::abs(c_rising);
    return {sum.value() / c_rising, magnitude / scale};
  };
  return detail::sum_series(diagonal, opt, "appell_f3");
}

}  // namespace msm
