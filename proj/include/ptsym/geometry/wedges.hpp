#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptsym::geom {

inline constexpr double pi = std::numbers::pi;

/// One asymptotic decay sector of the eigenvalue problem at deformation
/// epsilon.  Angles are measured from the positive real axis and are kept
/// unreduced: consecutive K values tile the full covering surface, so
/// theta_center(K) and theta_center(K + q) can differ by full turns.
///
///   theta_center = (4K + 2) pi / (4 + eps) - pi/2
///   theta_upper  = theta_center + pi / (4 + eps)
///   theta_lower  = theta_center - pi / (4 + eps)
struct Wedge {
  int K = 0;
  double epsilon = 0.0;
  double theta_lower = 0.0;
  double theta_center = 0.0;
  double theta_upper = 0.0;
  double opening = 0.0;
};

inline Wedge wedge(int K, double epsilon) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("wedge: epsilon must be >= 0");
  Wedge w;
  w.K = K;
  w.epsilon = epsilon;
  const double den = 4.0 + epsilon;
  w.theta_center = (4.0 * K + 2.0) * pi / den - pi / 2.0;
  w.theta_upper = (4.0 * K + 3.0) * pi / den - pi / 2.0;
  w.theta_lower = (4.0 * K + 1.0) * pi / den - pi / 2.0;
  w.opening = 2.0 * pi / den;
  return w;
}

/// Index of the wedge paired with K under x -> -conj(x); the pair centers
/// satisfy theta_center(K) + theta_center(partner) = -pi exactly.
inline constexpr int pt_partner(int K) { return -K - 1; }

/// Strict interior test with a small buffer so that angles lying exactly on
/// an edge (up to rounding) are deterministically excluded.
inline bool wedge_contains(const Wedge& w, double theta) {
  constexpr double edge_buffer = 1e-12;
  return theta > w.theta_lower + edge_buffer &&
         theta < w.theta_upper - edge_buffer;
}

/// Classical turning point of energy 1: the solution of
/// 1 + (i x)^(2 + eps) = 0 with x = e^{i theta},
///   theta = (2K + 1) pi / (2 + eps) - pi/2,
/// again with theta unreduced.  residual reports |1 + (i x)^(2+eps)|
/// evaluated through the phase of the covering surface.
struct TurningPoint {
  int K = 0;
  double epsilon = 0.0;
  double theta = 0.0;
  std::complex<double> x{};
  double residual = 0.0;
};

inline TurningPoint turning_point(int K, double epsilon) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("turning_point: epsilon must be >= 0");
  TurningPoint tp;
  tp.K = K;
  tp.epsilon = epsilon;
  tp.theta = (2.0 * K + 1.0) * pi / (2.0 + epsilon) - pi / 2.0;
  tp.x = std::polar(1.0, tp.theta);
  const double phase = (2.0 + epsilon) * (tp.theta + pi / 2.0);
  tp.residual = std::abs(1.0 + std::polar(1.0, phase));
  return tp;
}

enum class WedgeEdge { lower, upper };
enum class CrossingKind { entry, exit };

inline const char* to_string(WedgeEdge e) {
  return e == WedgeEdge::lower ? "lower" : "upper";
}
inline const char* to_string(CrossingKind k) {
  return k == CrossingKind::entry ? "entry" : "exit";
}

/// A deformation value at which turning point K_tp crosses an edge of wedge
/// K_w, together with which edge and whether the point is entering or
/// leaving the wedge as epsilon increases.
struct WedgeCrossing {
  double epsilon = 0.0;
  WedgeEdge edge = WedgeEdge::lower;
  CrossingKind kind = CrossingKind::exit;
};

/// Solves theta_tp(K_tp, eps) = theta_edge(K_w, eps) for eps >= 0 on the
/// unreduced angles.  With a = 2 K_tp + 1 and c the edge numerator (4 K_w + 1
/// or 4 K_w + 3), equality of a pi/(2+eps) and c pi/(4+eps) gives
///   eps = (4a - 2c) / (c - a),
/// one candidate per edge; c == a never crosses.  The crossing direction
/// follows the sign of d/d eps [theta_tp - theta_edge] at the crossing.
inline std::vector<WedgeCrossing> transition_epsilons(int K_tp, int K_w) {
  const double a = 2.0 * K_tp + 1.0;
  std::vector<WedgeCrossing> out;
  for (const WedgeEdge edge : {WedgeEdge::lower, WedgeEdge::upper}) {
    const double c = (edge == WedgeEdge::lower) ? 4.0 * K_w + 1.0
                                                : 4.0 * K_w + 3.0;
    if (c == a) continue;
    const double eps = (4.0 * a - 2.0 * c) / (c - a);
    if (!(eps >= 0.0)) continue;
    const double rel = -a * pi / ((2.0 + eps) * (2.0 + eps)) +
                       c * pi / ((4.0 + eps) * (4.0 + eps));
    WedgeCrossing cr;
    cr.epsilon = eps;
    cr.edge = edge;
    if (rel < 0.0)  // turning point drifts clockwise past the edge
      cr.kind = (edge == WedgeEdge::lower) ? CrossingKind::exit
                                           : CrossingKind::entry;
    else
      cr.kind = (edge == WedgeEdge::lower) ? CrossingKind::entry
                                           : CrossingKind::exit;
    out.push_back(cr);
  }
  if (out.size() == 2 && out[0].epsilon > out[1].epsilon)
    std::swap(out[0], out[1]);
  return out;
}

/// Covering-surface size: for eps = p/q in lowest terms the potential lives
/// on q sheets.  Detection is capped at denominator q_max; values that do
/// not resolve to a rational at tolerance tol report nullopt.
struct SheetInfo {
  long p = 0;
  long q = 1;
};

inline std::optional<SheetInfo> sheet_count(double epsilon, long q_max = 64,
                                            double tol = 1e-9) {
  if (!(epsilon >= 0.0)) return std::nullopt;
  for (long q = 1; q <= q_max; ++q) {
    const double pq = epsilon * static_cast<double>(q);
    const double p = std::round(pq);
    if (std::abs(pq - p) <= tol) {
      SheetInfo s;
      s.p = static_cast<long>(p);
      s.q = q;
      const long g = std::gcd(s.p, s.q);
      if (g > 1) {
        s.p /= g;
        s.q /= g;
      }
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace ptsym::geom
