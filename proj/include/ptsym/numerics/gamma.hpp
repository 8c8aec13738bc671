#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptsym::num {

/// Gamma function for real positive argument, via the Lanczos approximation
/// (g = 7, nine coefficients), accurate to roughly 1e-14 relative error on
/// the range used here.  Arguments z <= 0 are rejected.
inline double gamma_real(double z) {
  if (!(z > 0.0))
    throw std::invalid_argument("gamma_real: argument must be positive");
  static constexpr double g = 7.0;
  static constexpr double coeff[9] = {
      0.99999999999980993,     676.5203681218851,   -1259.1392167224028,
      771.32342877765313,      -176.61502916214059, 12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,
      1.5056327351493116e-7};
  if (z < 0.5) return gamma_real(z + 1.0) / z;  // one recurrence step
  const double zz = z - 1.0;
  double a = coeff[0];
  for (int i = 1; i < 9; ++i) a += coeff[i] / (zz + static_cast<double>(i));
  const double t = zz + g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, zz + 0.5) *
         std::exp(-t) * a;
}

}  // namespace ptsym::num
