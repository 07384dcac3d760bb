#pragma once

// Polygons of a two-parameter partition, clipped to a box, for plotting.

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcp/explorer.hpp"
#include "plcp/geometry.hpp"
#include "plcp/io.hpp"

namespace plcp {

class DimensionUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlotBox {
  Rational xmin = -10, xmax = 10, ymin = -10, ymax = 10;
};

struct Polygon {
  std::size_t piece = 0;
  std::vector<std::array<Rational, 2>> vertices;  // counterclockwise
};

namespace detail {

// Half-plane rows a . theta + b >= 0 of the region clipped to the box.
inline RegionHRep clip_to_box(const RegionHRep& r, const PlotBox& box) {
  RegionHRep out;
  out.basis = r.basis;
  out.normals = RatMatrix(r.normals.rows() + 4, 2);
  out.offsets = r.offsets;
  for (std::size_t k = 0; k < r.normals.rows(); ++k) {
    out.normals(k, 0) = r.normals(k, 0);
    out.normals(k, 1) = r.normals(k, 1);
  }
  const std::size_t m = r.normals.rows();
  out.normals(m, 0) = 1;
  out.offsets.push_back(-box.xmin);
  out.normals(m + 1, 0) = -1;
  out.offsets.push_back(box.xmax);
  out.normals(m + 2, 1) = 1;
  out.offsets.push_back(-box.ymin);
  out.normals(m + 3, 1) = -1;
  out.offsets.push_back(box.ymax);
  return out;
}

// Half-plane index of a direction: 0 for angles in [0, pi), 1 for [pi, 2 pi).
inline int half(const Rational& x, const Rational& y) { return (y > 0 || (y == 0 && x > 0)) ? 0 : 1; }

}  // namespace detail

/// Vertices of one clipped region in counterclockwise order (empty when the
/// clipped region is not two-dimensional).
inline std::vector<std::array<Rational, 2>> polygon_vertices(const RegionHRep& region, const PlotBox& box) {
  const RegionHRep r = detail::clip_to_box(region, box);
  const auto centre = interior_point(r);
  if (!centre) return {};
  const std::size_t m = r.normals.rows();
  std::vector<std::array<Rational, 2>> pts;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const Rational det = r.normals(a, 0) * r.normals(b, 1) - r.normals(a, 1) * r.normals(b, 0);
      if (det == 0) continue;
      // Solve normals_a . x = -offset_a, normals_b . x = -offset_b.
      const Rational x = (-r.offsets[a] * r.normals(b, 1) + r.offsets[b] * r.normals(a, 1)) / det;
      const Rational y = (-r.normals(a, 0) * r.offsets[b] + r.normals(b, 0) * r.offsets[a]) / det;
      if (!contains(r, {x, y}, false)) continue;
      const std::array<Rational, 2> pt{x, y};
      if (std::find(pts.begin(), pts.end(), pt) == pts.end()) pts.push_back(pt);
    }
  const Rational cx = (*centre)[0], cy = (*centre)[1];
  std::sort(pts.begin(), pts.end(), [&](const auto& p, const auto& q) {
    const Rational px = p[0] - cx, py = p[1] - cy, qx = q[0] - cx, qy = q[1] - cy;
    const int hp = detail::half(px, py), hq = detail::half(qx, qy);
    if (hp != hq) return hp < hq;
    return px * qy - py * qx > 0;
  });
  return pts;
}

inline std::vector<Polygon> plot_data(const PiecewiseAffineSolution& sol, const PlotBox& box = {}) {
  if (sol.d != 2) throw DimensionUnsupported("plot data needs a two-dimensional parameter, got d = " + std::to_string(sol.d));
  std::vector<Polygon> out;
  for (std::size_t k = 0; k < sol.pieces.size(); ++k) {
    auto v = polygon_vertices(sol.pieces[k].region, box);
    if (v.size() >= 3) out.push_back({k, std::move(v)});
  }
  return out;
}

inline Json plot_to_json(const std::vector<Polygon>& polys) {
  Json arr = Json::array();
  for (const auto& p : polys) {
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back({to_string(v[0]), to_string(v[1])});
    arr.push_back({{"piece", p.piece}, {"vertices", std::move(verts)}});
  }
  return Json{{"polygons", std::move(arr)}};
}

}  // namespace plcp
