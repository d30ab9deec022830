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

// Integrals over polygonal domains and products of domains:
//
//  * intensity_integral   N \int_A S_N(sqrt N z, sqrt N z) dz
//  * variance_integral    (N^2/pi^2) \int_A \int_{A^c} exp(-N |z-w|^2)
//  * lin_limit            N^{3/2} \int_A \int_{A^c} J(sqrt N (z-w)), J normalized
//  * r_m_integral         N^m \int_{A^m} prod S_N(sqrt N z_i, sqrt N z_{i+1})
//  * i0_check             Monte Carlo of the leading chain integral over A x C^{k-1}
//
// Area integrals use a square grid whose cells are clipped against the
// polygon; clipped pieces are fan-triangulated and integrated with collapsed
// Gauss-Legendre rules. Double integrals over A x A^c are reduced to single
// integrals of phi(z) = \int_{A^c} k(|z-w|) dw, which is evaluated exactly in
// the radial direction (ray/polygon intersections plus the antiderivative of
// k) and by composite Gauss-Legendre in angle.

#ifndef GINOE_QUADRATURE_HPP
#define GINOE_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ginoe/errors.hpp"
#include "ginoe/geometry.hpp"
#include "ginoe/kernel.hpp"
#include "ginoe/parallel.hpp"
#include "ginoe/rng.hpp"

namespace ginoe {

enum class QuadratureMethod { tensor_grid, monte_carlo, boundary_refined };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::tensor_grid;
  // Grid cells per unit length; 0 picks a per-integral default scaled to 1/sqrt(N).
  double resolution = 0.0;
  std::uint64_t seed = 1;
  // Reject the result when the refinement difference exceeds this (0 = never).
  double error_target = 0.0;
  std::size_t samples = 200000;  // Monte Carlo sample count
  int order = 6;                 // Gauss-Legendre points per direction
  unsigned threads = 0;          // 0: GINOE_THREADS or hardware
  // Kernel backend; unset picks exact up to asymptotic_above and the
  // asymptotic expansion beyond.
  std::optional<Backend> backend;
  long asymptotic_above = 512;
  double delta_min = kDefaultDeltaMin;  // admissibility gate
};

inline KernelOptions kernel_options(const QuadratureSpec& spec, long n) {
  KernelOptions ko;
  ko.backend = spec.backend ? *spec.backend : (n > spec.asymptotic_above ? Backend::asymptotic : Backend::exact);
  return ko;
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct ComplexEstimate {
  cplx value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
};

// ---------------------------------------------------------------------------
// Gauss-Legendre rules

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw RangeError("Gauss-Legendre order must be positive");
  if (n == 1) return {{0.0}, {2.0}};
  GaussRule r{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Area integration over polygons

namespace detail {

// Signed integral over the triangle (a, b, c) via the collapsed map
// x = a + u (b - a) + u v (c - b), Jacobian 2 A u.
template <typename F>
double triangle_integral(Point a, Point b, Point c, const GaussRule& g, F&& f) {
  const double twice_area = cross(b - a, c - a);
  if (twice_area == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double u = 0.5 * (g.nodes[i] + 1.0);
    double inner = 0.0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      const double v = 0.5 * (g.nodes[j] + 1.0);
      inner += g.weights[j] * f(a + u * (b - a) + u * v * (c - b));
    }
    s += g.weights[i] * u * inner;
  }
  return 0.25 * twice_area * s;
}

template <typename F>
double square_integral(double x0, double y0, double h, const GaussRule& g, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double x = x0 + 0.5 * h * (g.nodes[i] + 1.0);
    double inner = 0.0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      inner += g.weights[j] * f(Point(x, y0 + 0.5 * h * (g.nodes[j] + 1.0)));
    }
    s += g.weights[i] * inner;
  }
  return 0.25 * h * h * s;
}

template <typename F>
double fan_integral(std::span<const Point> poly, const GaussRule& g, F&& f) {
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) s += triangle_integral(poly[0], poly[i], poly[i + 1], g, f);
  return s;
}

}  // namespace detail

// \int_A f over a grid of square cells of side h. Cells for which
// skip(center, half_diagonal) returns true are ignored. Rows of cells are
// processed in parallel and summed in row order.
template <typename F, typename Skip>
double integrate_domain(const PolygonDomain& dom, double h, int order, unsigned threads, F&& f, Skip&& skip) {
  if (!(h > 0.0)) throw RangeError("grid cell size must be positive");
  const GaussRule g = gauss_legendre(order);
  const auto box = dom.bounding_box();
  const auto nx = static_cast<std::size_t>(std::ceil((box.x1 - box.x0) / h));
  const auto ny = static_cast<std::size_t>(std::ceil((box.y1 - box.y0) / h));
  std::vector<double> rows(ny, 0.0);
  const std::span<const Point> poly(dom.vertices());
  parallel_for(ny, threads, [&](std::size_t iy) {
    double row = 0.0;
    const double y0 = box.y0 + static_cast<double>(iy) * h;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x0 = box.x0 + static_cast<double>(ix) * h;
      const Point center(x0 + 0.5 * h, y0 + 0.5 * h);
      if (skip(center, std::numbers::sqrt2 * 0.5 * h)) continue;
      const auto piece = clip_to_box(poly, x0, y0, x0 + h, y0 + h);
      if (piece.size() < 3) continue;
      const double a = detail::signed_area(piece);
      if (a == 0.0) continue;
      if (std::abs(a - h * h) <= 1e-12 * h * h) {
        row += detail::square_integral(x0, y0, h, g, f);
      } else {
        row += detail::fan_integral(piece, g, f);
      }
    }
    rows[iy] = row;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

template <typename F>
double integrate_domain(const PolygonDomain& dom, double h, int order, unsigned threads, F&& f) {
  return integrate_domain(dom, h, order, threads, std::forward<F>(f), [](Point, double) { return false; });
}

// ---------------------------------------------------------------------------
// Radial integrals around a point

// A radial kernel k(r) supplied through its antiderivative
// F(r) = \int_0^r k(s) s ds, with F(infinity) = f_inf.
struct RadialAntiderivative {
  std::function<double(double)> f;
  double f_inf;
  double reach;  // k(r) is negligible beyond this radius
};

namespace detail {

// Intersection distances of the ray z + r e^{i theta}, r > 0, with the polygon.
inline void ray_crossings(std::span<const Point> v, Point z, Point dir, std::vector<double>& out) {
  out.clear();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i], b = v[(i + 1) % n];
    const Point e = b - a;
    const double den = cross(dir, e);
    if (den == 0.0) continue;
    const Point az = a - z;
    const double r = cross(az, e) / den;
    const double s = cross(az, dir) / den;
    if (r > 0.0 && s >= 0.0 && s < 1.0) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
}

inline double wrap_angle(double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  t = std::fmod(t, two_pi);
  return t < 0.0 ? t + two_pi : t;
}

}  // namespace detail

// \int_{A^c} k(|z - w|) dw (outside = true) or \int_A k(|z - w|) dw.
inline double radial_integral(const PolygonDomain& dom, Point z, const RadialAntiderivative& k, bool outside,
                              int order = 6, double max_step = std::numbers::pi / 12.0) {
  const auto& v = dom.vertices();
  const std::size_t n = v.size();
  std::vector<double> breaks{0.0, 2.0 * std::numbers::pi};
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i], b = v[(i + 1) % n];
    breaks.push_back(detail::wrap_angle(std::arg(a - z)));
    // Directions where the ray meets the edge's line at distance rho, for a
    // few rho around the kernel reach; they bracket the fast transitions.
    const Point e = (b - a) / std::abs(b - a);
    const Point normal(e.imag(), -e.real());
    const double d = detail::dot(a - z, normal);
    const double theta_perp = std::arg(d >= 0.0 ? normal : -normal);
    breaks.push_back(detail::wrap_angle(theta_perp));
    const double dist = std::abs(d);
    for (double rho : {0.125, 0.25, 0.5, 1.0}) {
      const double r = rho * k.reach;
      if (dist < r) {
        const double off = std::acos(dist / r);
        breaks.push_back(detail::wrap_angle(theta_perp + off));
        breaks.push_back(detail::wrap_angle(theta_perp - off));
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  static thread_local GaussRule g;
  if (static_cast<int>(g.nodes.size()) != order) g = gauss_legendre(order);
  const bool z_inside = detail::crossing_inside(v, z);
  thread_local std::vector<double> hits;
  double total = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b], hi = breaks[b + 1];
    if (hi - lo <= 0.0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_step)));
    const double w = (hi - lo) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double a0 = lo + p * w;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double theta = a0 + 0.5 * w * (g.nodes[q] + 1.0);
        detail::ray_crossings(v, z, std::polar(1.0, theta), hits);
        // Sum F over the requested side of the ray.
        bool inside = z_inside;
        double r0 = 0.0, along = 0.0;
        for (double r : hits) {
          if (inside != outside) along += k.f(r) - k.f(r0);
          inside = !inside;
          r0 = r;
        }
        if (inside != outside) along += k.f_inf - k.f(r0);
        total += 0.5 * w * g.weights[q] * along;
      }
    }
  }
  return total;
}

inline RadialAntiderivative gaussian_antiderivative(double n) {
  // k(r) = exp(-n r^2); F(r) = (1 - exp(-n r^2)) / (2n).
  return {[n](double r) { return -std::expm1(-n * r * r) / (2.0 * n); }, 1.0 / (2.0 * n), 8.0 / std::sqrt(n)};
}

// ---------------------------------------------------------------------------
// Intensity

struct IntensityResult {
  double value = 0.0;
  double error = 0.0;
  double defect = 0.0;  // value - (N/pi) area(A)
};

inline IntensityResult intensity_integral(const PolygonDomain& dom, long n, const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  const double h = spec.resolution > 0.0 ? 1.0 / spec.resolution : 0.05;
  const KernelOptions ko = kernel_options(spec, n);
  auto f = [&](Point z) { return scaled_intensity(z, n, ko); };
  const double coarse = integrate_domain(dom, h, spec.order, spec.threads, f);
  const double fine = integrate_domain(dom, 0.5 * h, spec.order, spec.threads, f);
  IntensityResult r{fine, std::abs(fine - coarse), fine - static_cast<double>(n) / std::numbers::pi * area(dom)};
  if (spec.error_target > 0.0 && r.error > spec.error_target) {
    throw AccuracyError("intensity_integral: refinement difference " + std::to_string(r.error) +
                        " exceeds the target; increase resolution above " + std::to_string(2.0 / h));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Boundary-layer double integrals

namespace detail {

// \int_A \int_{A^c} k(|z - w|) dw dz, keeping only the part of A within
// `reach` of the boundary. Returns {value, |coarse - fine|}.
inline Estimate boundary_layer_integral(const PolygonDomain& dom, const RadialAntiderivative& k, double h,
                                        const QuadratureSpec& spec) {
  auto phi = [&](Point z) { return radial_integral(dom, z, k, true, spec.order); };
  auto skip = [&](Point c, double half_diag) {
    return contains(dom, c) && boundary_distance(dom, c) > k.reach + half_diag;
  };
  const double coarse = integrate_domain(dom, h, spec.order, spec.threads, phi, skip);
  const double fine = integrate_domain(dom, 0.5 * h, spec.order, spec.threads, phi, skip);
  return {fine, std::abs(fine - coarse)};
}

inline double default_layer_cell(long n, const QuadratureSpec& spec) {
  return spec.resolution > 0.0 ? 1.0 / spec.resolution : 0.5 / std::sqrt(static_cast<double>(n));
}

}  // namespace detail

struct VarianceResult {
  double value = 0.0;            // (N^2/pi^2) \int_A \int_{A^c} exp(-N|z-w|^2)
  double error = 0.0;
  double boundary_integral = 0.0;  // the bare double integral
};

inline VarianceResult variance_integral(const PolygonDomain& dom, long n, const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  if (n < 1) throw RangeError("variance_integral: N must be positive");
  const double nn = static_cast<double>(n);
  const auto k = gaussian_antiderivative(nn);
  const Estimate b = detail::boundary_layer_integral(dom, k, detail::default_layer_cell(n, spec), spec);
  const double c = nn * nn / (std::numbers::pi * std::numbers::pi);
  VarianceResult r{c * b.value, c * b.std_error, b.value};
  if (spec.error_target > 0.0 && r.error > spec.error_target) {
    throw AccuracyError("variance_integral: refinement difference exceeds the target; raise resolution");
  }
  return r;
}

// The same variance through (N/pi) area(A) - (N^2/pi^2) \int_A \int_A exp(-N|z-w|^2),
// integrating over all of A with no boundary-layer truncation.
inline VarianceResult variance_integral_interior_form(const PolygonDomain& dom, long n,
                                                      const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  const double nn = static_cast<double>(n);
  const auto k = gaussian_antiderivative(nn);
  const double h = detail::default_layer_cell(n, spec);
  auto psi = [&](Point z) { return radial_integral(dom, z, k, false, spec.order); };
  const double coarse = integrate_domain(dom, h, spec.order, spec.threads, psi);
  const double fine = integrate_domain(dom, 0.5 * h, spec.order, spec.threads, psi);
  const double c = nn * nn / (std::numbers::pi * std::numbers::pi);
  const double lead = nn / std::numbers::pi * area(dom);
  return {lead - c * fine, c * std::abs(fine - coarse), area(dom) * std::numbers::pi / nn - fine};
}

// ---------------------------------------------------------------------------
// Radially symmetric profiles for the boundary-layer limit

class RadialProfile {
 public:
  // j: profile J(r) >= 0; support: radius beyond which J vanishes (or is
  // negligible). The profile is rescaled so that \int_C J(|z|) |z| dz = 1.
  RadialProfile(std::string name, std::function<double(double)> j, double support, int panels = 4096)
      : name_(std::move(name)), j_(std::move(j)), support_(support) {
    if (!(support_ > 0.0) || !std::isfinite(support_)) throw ProfileError("profile support must be finite");
    const GaussRule g = gauss_legendre(8);
    const double dr = support_ / panels;
    table_.assign(static_cast<std::size_t>(panels) + 1, 0.0);
    double first = 0.0, second = 0.0;
    for (int p = 0; p < panels; ++p) {
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double r = dr * (p + 0.5 * (g.nodes[q] + 1.0));
        const double jr = j_(r);
        if (!(jr >= 0.0) || !std::isfinite(jr)) throw ProfileError("profile must be finite and nonnegative");
        s1 += g.weights[q] * jr * r;
        s2 += g.weights[q] * jr * r * r;
      }
      first += 0.5 * dr * s1;
      second += 0.5 * dr * s2;
      table_[static_cast<std::size_t>(p) + 1] = first;
    }
    const double moment = 2.0 * std::numbers::pi * second;
    if (!(moment > 0.0) || !std::isfinite(moment)) throw ProfileError("profile radial moment is not normalizable");
    scale_ = 1.0 / moment;
    dr_ = dr;
  }

  static RadialProfile gaussian() {
    return {"gaussian", [](double r) { return std::exp(-2.0 * r * r); }, 6.5};
  }

  static RadialProfile indicator() {
    return {"indicator", [](double r) { return r <= 1.0 ? 1.0 : 0.0; }, 1.0};
  }

  const std::string& name() const noexcept { return name_; }
  double support() const noexcept { return support_; }
  // Normalization constant applied to J.
  double scale() const noexcept { return scale_; }
  double operator()(double r) const { return scale_ * j_(r); }

  // \int_0^s J(t) t dt for the normalized profile; cubic Hermite between nodes.
  double antiderivative(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= support_) return scale_ * table_.back();
    const double x = s / dr_;
    const auto i = static_cast<std::size_t>(x);
    const double t = x - static_cast<double>(i);
    const double r0 = dr_ * static_cast<double>(i), r1 = r0 + dr_;
    const double f0 = table_[i], f1 = table_[i + 1];
    const double d0 = j_(r0) * r0 * dr_, d1 = j_(std::min(r1, support_) * (1.0 - 1e-15)) * r1 * dr_;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return scale_ * (h00 * f0 + h10 * d0 + h01 * f1 + h11 * d1);
  }

 private:
  std::string name_;
  std::function<double(double)> j_;
  double support_;
  double scale_ = 1.0;
  double dr_ = 0.0;
  std::vector<double> table_;
};

// N^{3/2} \int_A \int_{A^c} J(sqrt N (z - w)) dz dw for a normalized profile.
inline Estimate lin_limit(const PolygonDomain& dom, const RadialProfile& profile, long n,
                          const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  const double nn = static_cast<double>(n);
  const double rn = std::sqrt(nn);
  // \int_a^b J(sqrt N r) r dr = (G(sqrt N b) - G(sqrt N a)) / N.
  RadialAntiderivative k{[&profile, rn, nn](double r) { return profile.antiderivative(rn * r) / nn; },
                         profile.antiderivative(profile.support()) / nn, profile.support() / rn};
  const Estimate b = detail::boundary_layer_integral(dom, k, detail::default_layer_cell(n, spec), spec);
  const double c = nn * rn;
  return {c * b.value, c * b.std_error};
}

// ---------------------------------------------------------------------------
// Monte Carlo integrals over products of the domain

namespace detail {

// Uniform point in the polygon by rejection from its bounding box; draws are
// addressed by (stream position a, attempt).
inline Point uniform_in(const PolygonDomain& dom, const rng::CounterStream& s, std::uint64_t a) {
  const auto box = dom.bounding_box();
  for (std::uint64_t attempt = 0; attempt < 100000; ++attempt) {
    const auto u = s.uniforms(a, attempt << 8);
    const Point z(box.x0 + u[0] * (box.x1 - box.x0), box.y0 + u[1] * (box.y1 - box.y0));
    if (contains(dom, z)) return z;
  }
  throw Error("uniform_in: rejection sampler failed");
}

struct Moments {
  double n = 0, re = 0, im = 0, re2 = 0, im2 = 0;

  void add(cplx w) {
    n += 1;
    re += w.real();
    im += w.imag();
    re2 += w.real() * w.real();
    im2 += w.imag() * w.imag();
  }

  void merge(const Moments& o) {
    n += o.n;
    re += o.re;
    im += o.im;
    re2 += o.re2;
    im2 += o.im2;
  }

  ComplexEstimate estimate() const {
    const double mr = re / n, mi = im / n;
    const double vr = std::max(0.0, re2 / n - mr * mr), vi = std::max(0.0, im2 / n - mi * mi);
    return {{mr, mi}, std::sqrt(vr / (n - 1)), std::sqrt(vi / (n - 1))};
  }
};

// Runs `draw(stream, index)` for spec.samples indices split into fixed
// batches; batch sums are merged in batch order.
template <typename Draw>
ComplexEstimate monte_carlo(const QuadratureSpec& spec, std::uint64_t tag, Draw&& draw) {
  if (spec.samples < 2) throw RangeError("Monte Carlo needs at least 2 samples");
  constexpr std::size_t kBatch = 4096;
  const std::size_t batches = (spec.samples + kBatch - 1) / kBatch;
  std::vector<Moments> parts(batches);
  const rng::CounterStream stream(rng::derive_seed(spec.seed, tag));
  parallel_for(batches, spec.threads, [&](std::size_t b) {
    Moments m;
    const std::size_t end = std::min(spec.samples, (b + 1) * kBatch);
    for (std::size_t i = b * kBatch; i < end; ++i) m.add(draw(stream, static_cast<std::uint64_t>(i)));
    parts[b] = m;
  });
  Moments total;
  for (const auto& p : parts) total.merge(p);
  return total.estimate();
}

}  // namespace detail

// R_m = N^m \int_{A^m} prod_{i=1}^m S_N(sqrt N z_i, sqrt N z_{i+1}) dz, z_{m+1} = z_1.
//
// m = 1 is the intensity integral. For m >= 2, z_1 is uniform on A and
// z_2..z_m follow a Gaussian bridge of m steps of scale 1/sqrt(N) returning
// to z_1, which matches the exp(-(N/2) sum |z_i - z_{i+1}|^2) decay of the
// integrand exactly; points leaving A contribute zero.
inline ComplexEstimate r_m_integral(const PolygonDomain& dom, int m, long n, const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  if (m < 1 || m > 3) throw RangeError("r_m_integral supports 1 <= m <= 3, got m = " + std::to_string(m));
  if (m == 1) {
    const IntensityResult r = intensity_integral(dom, n, spec);
    return {{r.value, 0.0}, r.error, 0.0};
  }
  const double nn = static_cast<double>(n);
  const double sigma = 1.0 / std::sqrt(nn);
  const double a = area(dom);
  const double norm = a * std::pow(2.0 * std::numbers::pi / nn, m - 1) / m * std::pow(nn, m);
  const KernelOptions ko = kernel_options(spec, n);
  return detail::monte_carlo(spec, 0x52000000u + static_cast<std::uint64_t>(m), [&](const rng::CounterStream& s,
                                                                                   std::uint64_t i) -> cplx {
    std::array<Point, 4> z{};
    z[0] = detail::uniform_in(dom, s, i);
    std::array<Point, 4> walk{};
    Point acc(0.0, 0.0);
    for (int j = 1; j <= m; ++j) {
      acc += s.complex_normal(i, (std::uint64_t{1} << 40) + static_cast<std::uint64_t>(j), sigma);
      walk[static_cast<std::size_t>(j)] = acc;
    }
    for (int j = 1; j < m; ++j) {
      z[static_cast<std::size_t>(j)] = z[0] + walk[static_cast<std::size_t>(j)] -
                                       (static_cast<double>(j) / m) * walk[static_cast<std::size_t>(m)];
      if (!contains(dom, z[static_cast<std::size_t>(j)])) return {0.0, 0.0};
    }
    cplx prod(1.0, 0.0);
    double gauss = 0.0;
    for (int j = 0; j < m; ++j) {
      const Point zi = z[static_cast<std::size_t>(j)], zn = z[static_cast<std::size_t>((j + 1) % m)];
      prod *= s_kernel_scaled(zi, zn, n, ko);
      gauss += std::norm(zi - zn);
    }
    return norm * prod * std::exp(0.5 * nn * gauss);
  });
}

// Ratio of the Monte Carlo value of
//   I_0 = \int_A \int_{C^{k-1}} exp(-(N/2) sum |z_i - z_{i+1}|^2 + i N sum g(z_i, z_{i+1}))
// (cyclic, g(z, w) = Re z Im w - Re w Im z) to pi^{k-1} N^{1-k} area(A).
// z_1 is uniform on A and z_2..z_k are an open Gaussian chain from z_1; the
// closing factor and the phase form the weight.
inline ComplexEstimate i0_check(const PolygonDomain& dom, int k, long n, const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  if (k < 2 || k > 4) throw RangeError("i0_check supports 2 <= k <= 4");
  const double nn = static_cast<double>(n);
  const double sigma = 1.0 / std::sqrt(nn);
  const double lead = std::pow(2.0, k - 1);
  auto g = [](Point z, Point w) { return z.real() * w.imag() - w.real() * z.imag(); };
  return detail::monte_carlo(spec, 0x10000000u + static_cast<std::uint64_t>(k), [&](const rng::CounterStream& s,
                                                                                   std::uint64_t i) -> cplx {
    std::array<Point, 4> z{};
    z[0] = detail::uniform_in(dom, s, i);
    for (int j = 1; j < k; ++j) {
      z[static_cast<std::size_t>(j)] =
          z[static_cast<std::size_t>(j - 1)] +
          s.complex_normal(i, (std::uint64_t{1} << 40) + static_cast<std::uint64_t>(j), sigma);
    }
    double phase = 0.0;
    for (int j = 0; j < k; ++j) phase += g(z[static_cast<std::size_t>(j)], z[static_cast<std::size_t>((j + 1) % k)]);
    const double closing = std::exp(-0.5 * nn * std::norm(z[static_cast<std::size_t>(k - 1)] - z[0]));
    return lead * closing * std::polar(1.0, nn * phase);
  });
}

}  // namespace ginoe

#endif  // GINOE_QUADRATURE_HPP
