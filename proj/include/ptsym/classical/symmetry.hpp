#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace ptsym::classical {

/// Result of testing a sampled curve for symmetry under x -> -conj(x).
/// defect is the largest distance from a sample to the mirrored polyline
/// (capped once it exceeds the reporting window); the mirror map is an
/// isometry, so the one-sided defect already equals the two-sided one.
struct MirrorSymmetryReport {
  bool symmetric = false;
  double defect = std::numeric_limits<double>::quiet_NaN();
  double tol_used = 0.0;
  double max_gap = 0.0;  ///< largest spacing between adjacent samples
};

namespace detail {

inline double point_segment_distance(std::complex<double> p,
                                     std::complex<double> a,
                                     std::complex<double> b) {
  const std::complex<double> ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() +
              (p.imag() - a.imag()) * ab.imag()) /
             len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

struct SegmentGrid {
  double cell = 1.0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  const std::vector<std::complex<double>>* pts = nullptr;

  static std::uint64_t key(std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(ix) << 32) ^
           (static_cast<std::uint64_t>(iy) & 0xffffffffu);
  }

  void build(const std::vector<std::complex<double>>& poly, double cell_size) {
    pts = &poly;
    cell = cell_size;
    cells.clear();
    if (poly.size() < 2) return;
    cells.reserve(poly.size() * 2);
    for (std::uint32_t s = 0; s + 1 < poly.size(); ++s) {
      const auto a = poly[s], b = poly[s + 1];
      const std::int64_t x0 =
          static_cast<std::int64_t>(std::floor(std::min(a.real(), b.real()) / cell));
      const std::int64_t x1 =
          static_cast<std::int64_t>(std::floor(std::max(a.real(), b.real()) / cell));
      const std::int64_t y0 =
          static_cast<std::int64_t>(std::floor(std::min(a.imag(), b.imag()) / cell));
      const std::int64_t y1 =
          static_cast<std::int64_t>(std::floor(std::max(a.imag(), b.imag()) / cell));
      for (std::int64_t ix = x0; ix <= x1; ++ix)
        for (std::int64_t iy = y0; iy <= y1; ++iy)
          cells[key(ix, iy)].push_back(s);
    }
  }

  /// Distance from p to the polyline: exact whenever the result is <= cell
  /// (a 3x3 cell neighbourhood is searched), otherwise >= cell holds and
  /// the returned value is only a bound.
  double distance(std::complex<double> p) const {
    if (!pts || pts->size() < 2) return std::numeric_limits<double>::infinity();
    const std::int64_t cx =
        static_cast<std::int64_t>(std::floor(p.real() / cell));
    const std::int64_t cy =
        static_cast<std::int64_t>(std::floor(p.imag() / cell));
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t ix = cx - 1; ix <= cx + 1; ++ix)
      for (std::int64_t iy = cy - 1; iy <= cy + 1; ++iy) {
        const auto it = cells.find(key(ix, iy));
        if (it == cells.end()) continue;
        for (const std::uint32_t s : it->second)
          best = std::min(best,
                          point_segment_distance(p, (*pts)[s], (*pts)[s + 1]));
      }
    return std::min(best, 2.0 * cell);
  }
};

}  // namespace detail

/// Tests whether the sampled trajectory {x_i} coincides, as a point set,
/// with its mirror image {-conj(x_i)}.  Samples are compared against the
/// mirrored polyline so that finite sampling density does not produce false
/// negatives; the tolerance is widened by the chord error implied by the
/// observed sample spacing.
inline MirrorSymmetryReport mirror_symmetry_report(
    const std::vector<std::complex<double>>& xs, double base_tol) {
  MirrorSymmetryReport rep;
  if (xs.size() < 2) {
    if (xs.size() == 1) {
      rep.defect = std::abs(xs[0] - (-std::conj(xs[0])));
      rep.tol_used = base_tol;
      rep.symmetric = rep.defect <= base_tol;
    }
    return rep;
  }
  double max_gap = 0.0;
  std::vector<std::complex<double>> mirrored(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mirrored[i] = -std::conj(xs[i]);
    if (i > 0) max_gap = std::max(max_gap, std::abs(xs[i] - xs[i - 1]));
  }
  rep.max_gap = max_gap;

  // Dense sampling makes the raw polyline expensive to index (a single grid
  // cell can end up holding hundreds of segments), so thin it by radius
  // first.  Thinning moves the polyline by at most the radius, which the
  // widened tolerance below absorbs alongside the chord error.
  const double thin = 0.5 * base_tol;
  std::vector<std::complex<double>> slim;
  slim.reserve(256);
  slim.push_back(mirrored.front());
  for (std::size_t i = 1; i + 1 < mirrored.size(); ++i)
    if (std::abs(mirrored[i] - slim.back()) >= thin) slim.push_back(mirrored[i]);
  slim.push_back(mirrored.back());

  rep.tol_used = base_tol + 0.5 * max_gap * max_gap + thin;

  detail::SegmentGrid grid;
  grid.build(slim, std::max({rep.tol_used * 2.0, max_gap * 2.0, 1e-12}));
  double defect = 0.0;
  for (const auto& p : xs) defect = std::max(defect, grid.distance(p));
  rep.defect = defect;
  rep.symmetric = defect <= rep.tol_used;
  return rep;
}

}  // namespace ptsym::classical
