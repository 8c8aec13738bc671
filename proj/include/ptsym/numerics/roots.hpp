#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ptsym/numerics/step_control.hpp"

namespace ptsym::num {

/// Brent's method on a validated sign-change bracket.  Returns a point r
/// with bracket width below tol (and usually |f(r)| near rounding level).
template <class F>
double find_root_bracketed(F&& f, const RootBracket& bracket, double tol) {
  bracket.validate();
  if (!(tol > 0.0))
    throw std::invalid_argument("find_root_bracketed: tol must be positive");
  if (bracket.f_lo == 0.0) return bracket.lo;
  if (bracket.f_hi == 0.0) return bracket.hi;

  double a = bracket.lo, b = bracket.hi;
  double fa = bracket.f_lo, fb = bracket.f_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, falling back to secant.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

struct ComplexRootResult {
  std::complex<double> root{};
  std::complex<double> f_value{};
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Secant iteration in the complex plane with a finite-difference Newton
/// fallback whenever the secant denominator degenerates.  Convergence means
/// |f(z)| <= tol; on failure the best iterate seen is reported.
template <class F>
ComplexRootResult find_root_complex(F&& f, std::complex<double> guess,
                                    double tol, int max_iter = 60) {
  if (!(tol > 0.0))
    throw std::invalid_argument("find_root_complex: tol must be positive");
  ComplexRootResult out;

  std::complex<double> z0 = guess;
  std::complex<double> z1 = guess + (std::abs(guess) + 1.0) * 1e-6;
  std::complex<double> f0 = f(z0);
  std::complex<double> f1 = f(z1);
  out.root = z0;
  out.f_value = f0;
  out.residual = std::abs(f0);
  auto track = [&](std::complex<double> z, std::complex<double> fz) {
    const double r = std::abs(fz);
    if (r < out.residual) {
      out.root = z;
      out.f_value = fz;
      out.residual = r;
    }
  };
  track(z1, f1);

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    if (std::abs(f1) <= tol) {
      track(z1, f1);
      out.converged = true;
      return out;
    }
    std::complex<double> step;
    const std::complex<double> denom = f1 - f0;
    const double scale = std::abs(z1) + 1.0;
    if (std::abs(denom) > 1e-14 * (std::abs(f1) + std::abs(f0))) {
      step = -f1 * (z1 - z0) / denom;
    } else {
      const double hfd = 1e-7 * scale;
      const std::complex<double> der = (f(z1 + hfd) - f(z1 - hfd)) / (2.0 * hfd);
      if (std::abs(der) == 0.0 || !std::isfinite(std::abs(der))) break;
      step = -f1 / der;
    }
    if (!std::isfinite(std::abs(step))) break;
    const double cap = 10.0 * scale;
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z0 = z1;
    f0 = f1;
    z1 = z1 + step;
    f1 = f(z1);
    track(z1, f1);
    if (std::abs(step) < 1e-16 * scale && out.residual > tol) break;
  }
  out.converged = out.residual <= tol;
  return out;
}

}  // namespace ptsym::num
