#pragma once

#include <stdexcept>

namespace ptsym::num {

/// Tolerances and step bounds shared by every adaptive integration in the
/// library.  The error test is per-component: |err_i| <= abs_tol +
/// rel_tol * max(|y0_i|, |y1_i|).
struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  ///< 0 means: choose automatically
  double min_step = 1e-12;
  double max_step = 0.25;
  long max_steps = 20000000;  ///< accepted + rejected attempts

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("StepControl: tolerances must be positive");
    if (!(min_step > 0.0) || !(min_step <= max_step))
      throw std::invalid_argument("StepControl: need 0 < min_step <= max_step");
    if (max_steps <= 0)
      throw std::invalid_argument("StepControl: max_steps must be positive");
  }
};

/// Sign-change bracket [lo, hi] with the function values at both ends.
struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;

  void validate() const {
    if (!(lo < hi))
      throw std::invalid_argument("RootBracket: need lo < hi");
    const bool neg_lo = f_lo < 0.0;
    const bool neg_hi = f_hi < 0.0;
    if (f_lo != 0.0 && f_hi != 0.0 && neg_lo == neg_hi)
      throw std::invalid_argument("RootBracket: endpoints must differ in sign");
  }
};

}  // namespace ptsym::num
