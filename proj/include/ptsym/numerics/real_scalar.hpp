#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#if defined(__SIZEOF_FLOAT128__) && __has_include(<quadmath.h>)
#include <quadmath.h>
#define PTSYM_HAVE_FLOAT128 1
#endif

namespace ptsym::num {

/// Working precision of an integration.  f64 is the default everywhere;
/// the wider kinds exist for trajectories whose error growth exhausts
/// double precision (see period_scan).
enum class Precision {
  f64,   ///< IEEE double
  f80,   ///< x87 extended (long double on x86-64)
  f128,  ///< IEEE quad via libquadmath, when the toolchain provides it
};

inline const char* to_string(Precision p) {
  switch (p) {
    case Precision::f64: return "f64";
    case Precision::f80: return "f80";
    case Precision::f128: return "f128";
  }
  return "unknown";
}

/// Scalar operations used by the templated numerical kernels.  The generic
/// version covers every type with std:: math overloads; __float128 needs the
/// quadmath entry points and is specialised below.
template <class R>
struct RealOps {
  static R abs(R x) { return std::abs(x); }
  static R sqrt(R x) { return std::sqrt(x); }
  static R pow(R x, R y) { return std::pow(x, y); }
  static R cos(R x) { return std::cos(x); }
  static R sin(R x) { return std::sin(x); }
  static bool finite(R x) { return std::isfinite(x); }
  static R cabs(const std::complex<R>& z) {
    return std::hypot(z.real(), z.imag());
  }
  static std::complex<R> unit_polar(R theta) {
    return {std::cos(theta), std::sin(theta)};
  }
  static constexpr R eps() { return std::numeric_limits<R>::epsilon(); }
  static constexpr R pi() { return std::numbers::pi_v<R>; }
};

#if defined(PTSYM_HAVE_FLOAT128)
template <>
struct RealOps<__float128> {
  using R = __float128;
  static R abs(R x) { return fabsq(x); }
  static R sqrt(R x) { return sqrtq(x); }
  static R pow(R x, R y) { return powq(x, y); }
  static R cos(R x) { return cosq(x); }
  static R sin(R x) { return sinq(x); }
  static bool finite(R x) { return finiteq(x) != 0; }
  static R cabs(const std::complex<R>& z) {
    return hypotq(z.real(), z.imag());
  }
  static std::complex<R> unit_polar(R theta) {
    return {cosq(theta), sinq(theta)};
  }
  static constexpr R eps() { return FLT128_EPSILON; }
  static constexpr R pi() { return M_PIq; }
};
inline constexpr bool float128_available = true;
#else
inline constexpr bool float128_available = false;
#endif

}  // namespace ptsym::num
