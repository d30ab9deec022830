// Copyright 2026 The ginoe-clt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Polygonal regions of the complex plane and the geometric quantities
// (area, boundary length, distance to the edge of the upper half-disk)
// that enter the counting-statistics predictions.

#ifndef GINOE_GEOMETRY_HPP
#define GINOE_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ginoe/errors.hpp"

namespace ginoe {

using Point = std::complex<double>;

// Default admissibility floor on d_A.
inline constexpr double kDefaultDeltaMin = 0.05;

namespace detail {

inline double cross(Point a, Point b) noexcept { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) noexcept { return a.real() * b.real() + a.imag() * b.imag(); }

inline double orient(Point a, Point b, Point c) noexcept { return cross(b - a, c - a); }

inline bool on_segment(Point a, Point b, Point p) noexcept {
  if (orient(a, b, p) != 0.0) return false;
  const double t = dot(p - a, b - a);
  return t >= 0.0 && t <= std::norm(b - a);
}

inline int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

inline bool segments_intersect(Point a, Point b, Point c, Point d) noexcept {
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

inline double point_segment_distance(Point p, Point a, Point b) noexcept {
  const Point d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

inline double signed_area(std::span<const Point> v) noexcept {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return 0.5 * s;
}

// Crossing-number test, half-open in y. Points on an edge land on either side.
inline bool crossing_inside(std::span<const Point> v, Point z) noexcept {
  bool inside = false;
  for (std::size_t i = 0, n = v.size(), j = n - 1; i < n; j = i++) {
    const Point a = v[i], b = v[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace detail

// A simple polygon with counterclockwise vertex order. Clockwise input is
// reversed on construction. Location is unrestricted; admissibility (closure
// inside the open upper half-disk) is checked separately by require_admissible.
class PolygonDomain {
 public:
  static PolygonDomain from_vertices(std::vector<Point> vertices) {
    if (vertices.size() < 3) throw InvalidDomain("polygon needs at least 3 vertices");
    for (const Point& p : vertices) {
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
        throw InvalidDomain("polygon vertex is not finite");
      }
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (vertices[i] == vertices[(i + 1) % n]) throw InvalidDomain("repeated consecutive vertex");
    }
    const double a = detail::signed_area(vertices);
    if (!(std::abs(a) > 0.0)) throw InvalidDomain("degenerate polygon: zero area");
    if (a < 0.0) std::reverse(vertices.begin(), vertices.end());
    check_simple(vertices);
    return PolygonDomain(std::move(vertices));
  }

  // Axis-aligned rectangle [x0, x1] x [y0, y1].
  static PolygonDomain rectangle(double x0, double y0, double x1, double y1) {
    return from_vertices({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
  }

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  Point vertex(std::size_t i) const noexcept { return vertices_[i % vertices_.size()]; }

  // Image under z -> center + factor (z - center).
  PolygonDomain scaled(double factor, Point center = {0.0, 0.0}) const {
    std::vector<Point> v;
    v.reserve(size());
    for (const Point& p : vertices_) v.push_back(center + factor * (p - center));
    return from_vertices(std::move(v));
  }

  // Reflection across the real axis.
  PolygonDomain conjugated() const {
    std::vector<Point> v;
    v.reserve(size());
    for (const Point& p : vertices_) v.push_back(std::conj(p));
    return from_vertices(std::move(v));
  }

  struct Box {
    double x0, y0, x1, y1;
  };

  Box bounding_box() const noexcept {
    Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : vertices_) {
      b.x0 = std::min(b.x0, p.real());
      b.y0 = std::min(b.y0, p.imag());
      b.x1 = std::max(b.x1, p.real());
      b.y1 = std::max(b.y1, p.imag());
    }
    return b;
  }

 private:
  explicit PolygonDomain(std::vector<Point> v) : vertices_(std::move(v)) {}

  static void check_simple(const std::vector<Point>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = v[i], b = v[(i + 1) % n];
      for (std::size_t j = i + 1; j < n; ++j) {
        const Point c = v[j], d = v[(j + 1) % n];
        const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
        if (adjacent) {
          // Shared endpoint only; reject fold-backs along the same line.
          const Point shared = (j == i + 1) ? b : a;
          const Point p = (j == i + 1) ? a : b;
          const Point q = (j == i + 1) ? d : c;
          if (detail::orient(p, shared, q) == 0.0 && detail::dot(p - shared, q - shared) > 0.0) {
            throw InvalidDomain("polygon is not simple: overlapping adjacent edges");
          }
          continue;
        }
        if (detail::segments_intersect(a, b, c, d)) {
          throw InvalidDomain("polygon is not simple: edges " + std::to_string(i) + " and " +
                              std::to_string(j) + " intersect");
        }
      }
    }
  }

  std::vector<Point> vertices_;
};

inline double area(const PolygonDomain& d) { return detail::signed_area(d.vertices()); }

inline double perimeter(const PolygonDomain& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) s += std::abs(d.vertex(i + 1) - d.vertex(i));
  return s;
}

inline bool on_boundary(const PolygonDomain& d, Point z) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (detail::on_segment(d.vertex(i), d.vertex(i + 1), z)) return true;
  }
  return false;
}

// Indicator of the domain. Boundary points are resolved as if nudged an
// infinitesimal step in the direction (1, 0+): edges whose outward normal
// points into -x (or straight down) are closed, the rest open. Adjacent
// polygons sharing an edge therefore never both claim a boundary point.
inline bool contains(const PolygonDomain& d, Point z) {
  const auto& v = d.vertices();
  if (!on_boundary(d, z)) return detail::crossing_inside(v, z);
  const auto box = d.bounding_box();
  const double scale = std::max({1.0, box.x1 - box.x0, box.y1 - box.y0});
  const double h = 1e-9 * scale;
  return detail::crossing_inside(v, z + Point(h, 1e-3 * h));
}

// Euclidean distance from z to the polygon boundary.
inline double boundary_distance(const PolygonDomain& d, Point z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) {
    best = std::min(best, detail::point_segment_distance(z, d.vertex(i), d.vertex(i + 1)));
  }
  return best;
}

struct HalfDiskDistances {
  double d_a;        // min over the closure of min(1 - |z|, Im z)
  double d_tilde_a;  // min over the closure of |z - 1|
};

// Both functionals are attained on the boundary. min(1-|z|, Im z) is concave
// along each edge, so its minimum sits at a vertex.
inline HalfDiskDistances halfdisk_distances(const PolygonDomain& d) {
  HalfDiskDistances out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const Point& p : d.vertices()) out.d_a = std::min({out.d_a, 1.0 - std::abs(p), p.imag()});
  out.d_tilde_a = contains(d, Point(1.0, 0.0)) ? 0.0 : boundary_distance(d, Point(1.0, 0.0));
  return out;
}

inline double distance_to_halfdisk_boundary(const PolygonDomain& d) { return halfdisk_distances(d).d_a; }

inline bool is_admissible(const PolygonDomain& d, double delta_min = kDefaultDeltaMin) {
  const double da = distance_to_halfdisk_boundary(d);
  return da > 0.0 && da >= delta_min;
}

inline void require_admissible(const PolygonDomain& d, double delta_min = kDefaultDeltaMin) {
  const double da = distance_to_halfdisk_boundary(d);
  if (!(da > 0.0) || da < delta_min) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "domain is not admissible: d_A = %.6g below the floor %.6g", da,
                  delta_min);
    throw InvalidDomain(buf);
  }
}

// FNV-1a over the bit patterns of the vertex coordinates, as 16 hex digits.
inline std::string domain_hash(const PolygonDomain& d) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](double x) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof x);
    std::memcpy(&bits, &x, sizeof bits);
    for (int k = 0; k < 8; ++k) {
      h ^= (bits >> (8 * k)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (const Point& p : d.vertices()) {
    feed(p.real());
    feed(p.imag());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Sutherland-Hodgman clip of a polygon against an axis-aligned box. The
// subject may be non-convex; the output then can contain zero-width
// bridges, which carry no area and are harmless for signed-fan integration.
inline std::vector<Point> clip_to_box(std::span<const Point> poly, double x0, double y0, double x1,
                                      double y1) {
  std::vector<Point> cur(poly.begin(), poly.end()), next;
  auto pass = [&](auto inside, auto intersect) {
    next.clear();
    const std::size_t n = cur.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point p = cur[i], q = cur[(i + 1) % n];
      const bool pin = inside(p), qin = inside(q);
      if (pin) next.push_back(p);
      if (pin != qin) next.push_back(intersect(p, q));
    }
    std::swap(cur, next);
  };
  auto at_x = [](double x) {
    return [x](Point p, Point q) {
      const double t = (x - p.real()) / (q.real() - p.real());
      return Point(x, p.imag() + t * (q.imag() - p.imag()));
    };
  };
  auto at_y = [](double y) {
    return [y](Point p, Point q) {
      const double t = (y - p.imag()) / (q.imag() - p.imag());
      return Point(p.real() + t * (q.real() - p.real()), y);
    };
  };
  pass([x0](Point p) { return p.real() >= x0; }, at_x(x0));
  if (cur.empty()) return cur;
  pass([x1](Point p) { return p.real() <= x1; }, at_x(x1));
  if (cur.empty()) return cur;
  pass([y0](Point p) { return p.imag() >= y0; }, at_y(y0));
  if (cur.empty()) return cur;
  pass([y1](Point p) { return p.imag() <= y1; }, at_y(y1));
  return cur;
}

}  // namespace ginoe

#endif  // GINOE_GEOMETRY_HPP
