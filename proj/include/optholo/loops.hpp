// Copyright 2026 The optholo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Closed control loops on the three pinned parameter planes and their
// weighted areas.
//
//   Plane I   : (u, v) = (x, r1), theta1 = 0,      weight 2 e^{-2 r1}
//   Plane II  : (u, v) = (x, r1), theta1 = pi / 2, weight 2 e^{-2 r1}
//   Plane III : (u, v) = (r2, r3), theta2 = theta3 = 0, weight 2 sinh(2 r2)
//
// Every other control coordinate is pinned at zero.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "optholo/diagnostics.hpp"
#include "optholo/fock.hpp"

namespace optholo {

enum class Plane { I, II, III };

inline const char* plane_name(Plane p) {
  switch (p) {
    case Plane::I: return "I";
    case Plane::II: return "II";
    case Plane::III: return "III";
  }
  return "?";
}

struct Point2 {
  double u = 0.0;
  double v = 0.0;
  bool operator==(const Point2&) const = default;
};

inline Point2 operator-(Point2 a, Point2 b) { return {a.u - b.u, a.v - b.v}; }
inline Point2 operator+(Point2 a, Point2 b) { return {a.u + b.u, a.v + b.v}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.u, s * a.v}; }
inline double cross(Point2 a, Point2 b) { return a.u * b.v - a.v * b.u; }
inline double dot(Point2 a, Point2 b) { return a.u * b.u + a.v * b.v; }
inline double length(Point2 a) { return std::hypot(a.u, a.v); }

/// Control point of the full manifold sitting at plane coordinates (u, v).
inline ControlPoint control_point(Plane plane, Point2 p) {
  ControlPoint c;
  switch (plane) {
    case Plane::I: c.x = p.u; c.r1 = p.v; break;
    case Plane::II: c.x = p.u; c.r1 = p.v; c.theta1 = kPi / 2; break;
    case Plane::III: c.r2 = p.u; c.r3 = p.v; break;
  }
  return c;
}

/// Whether `c` lies on `plane` (pinned coordinates exactly zero, pinned angle
/// exact up to 1e-12).
inline bool lies_on(Plane plane, const ControlPoint& c) {
  const ControlPoint n = c.normalized();
  auto zero = [](double a) { return a == 0.0; };
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  switch (plane) {
    case Plane::I:
    case Plane::II: {
      const double theta = plane == Plane::I ? 0.0 : kPi / 2;
      const bool angle_ok = zero(n.r1) || near(n.theta1, theta);
      return zero(n.y) && zero(n.r2) && zero(n.r3) && angle_ok;
    }
    case Plane::III:
      return zero(n.x) && zero(n.y) && zero(n.r1) &&
             (zero(n.r2) || near(n.theta2, 0.0)) &&
             (zero(n.r3) || near(n.theta3, 0.0));
  }
  return false;
}

inline Point2 plane_coordinates(Plane plane, const ControlPoint& c) {
  if (plane == Plane::III) return {c.r2, c.r3};
  return {c.x, c.r1};
}

inline bool admissible(Plane plane, Point2 p) {
  if (plane == Plane::III) return p.u >= 0.0 && p.v >= 0.0;
  return p.v >= 0.0;
}

namespace detail {

inline double weight_unchecked(Plane plane, Point2 p) {
  if (plane == Plane::III) return 2.0 * std::sinh(2.0 * p.u);
  return 2.0 * std::exp(-2.0 * p.v);
}

}  // namespace detail

/// Curvature density integrated by the area functional of `plane`.
inline double weight(Plane plane, Point2 p) {
  if (!admissible(plane, p)) {
    throw std::invalid_argument(std::string("weight: point outside plane ") +
                                plane_name(plane) + " half-plane");
  }
  return detail::weight_unchecked(plane, p);
}

struct Rect {
  double u_min = 0, u_max = 0, v_min = 0, v_max = 0;
  bool operator==(const Rect&) const = default;
};

struct Polyline {
  std::vector<Point2> vertices;
  bool operator==(const Polyline&) const = default;
};

/// Closed vertex path that may touch or retrace itself.  Only produced by
/// concatenate(); user input goes through Polyline validation.
struct ClosedPath {
  std::vector<Point2> vertices;
  bool operator==(const ClosedPath&) const = default;
};

using LoopShape = std::variant<Rect, Polyline, ClosedPath>;

namespace detail {

inline int orient_sign(Point2 a, Point2 b, Point2 c) {
  const double d = cross(b - a, c - a);
  return (d > 0) - (d < 0);
}

inline bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.u, b.u) <= p.u && p.u <= std::max(a.u, b.u) &&
         std::min(a.v, b.v) <= p.v && p.v <= std::max(a.v, b.v);
}

inline bool segments_touch(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int d1 = orient_sign(q1, q2, p1);
  const int d2 = orient_sign(q1, q2, p2);
  const int d3 = orient_sign(p1, p2, q1);
  const int d4 = orient_sign(p1, p2, q2);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

inline bool all_collinear(std::span<const Point2> pts) {
  const auto far = std::find_if(pts.begin(), pts.end(),
                                [&](Point2 p) { return !(p == pts.front()); });
  if (far == pts.end()) return true;
  const Point2 dir = *far - pts.front();
  for (const Point2& p : pts) {
    if (cross(dir, p - pts.front()) != 0.0) return false;
  }
  return true;
}

/// Segment-pair sweep.  Adjacent edges may only share their common vertex;
/// non-adjacent edges may not meet at all.
inline bool self_intersecting(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a0 = pts[i], a1 = pts[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2 b0 = pts[j], b1 = pts[(j + 1) % n];
      const bool next = j == i + 1;
      const bool wrap = i == 0 && j == n - 1;
      if (next || wrap) {
        // Shared vertex s; fold-back if the far ends point the same way.
        const Point2 s = next ? a1 : a0;
        const Point2 pa = next ? a0 : a1;
        const Point2 pb = next ? b1 : b0;
        if (cross(pa - s, pb - s) == 0.0 && dot(pa - s, pb - s) > 0.0) return true;
        continue;
      }
      if (segments_touch(a0, a1, b0, b1)) return true;
    }
  }
  return false;
}

}  // namespace detail

/// An oriented closed loop confined to one plane.
///
/// Traversal follows the vertex order (rectangles: counterclockwise from
/// (u_min, v_min)) when orientation is +1 and the reverse order when it is -1.
class LoopSpec {
 public:
  static LoopSpec rect(Plane plane, Rect r, int orientation = 1) {
    check_orientation(orientation);
    for (double c : {r.u_min, r.u_max, r.v_min, r.v_max}) {
      if (!std::isfinite(c)) throw std::invalid_argument("rect: non-finite bound");
    }
    if (r.u_min > r.u_max || r.v_min > r.v_max) {
      throw std::invalid_argument("rect: requires u_min <= u_max and v_min <= v_max");
    }
    if (!admissible(plane, {r.u_min, r.v_min})) {
      throw std::invalid_argument("rect: outside the plane's admissible region");
    }
    return LoopSpec(plane, r, orientation);
  }

  static LoopSpec polyline(Plane plane, std::vector<Point2> vertices,
                           int orientation = 1) {
    check_orientation(orientation);
    if (vertices.size() < 3) {
      throw std::invalid_argument("polyline: needs at least 3 vertices");
    }
    if (vertices.front() == vertices.back()) {
      throw std::invalid_argument("polyline: first and last vertex coincide "
                                  "(closure is implicit)");
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const Point2 p = vertices[i];
      if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
        throw std::invalid_argument("polyline: non-finite vertex");
      }
      if (!admissible(plane, p)) {
        throw std::invalid_argument("polyline: vertex outside the plane's "
                                    "admissible region");
      }
      if (i > 0 && vertices[i - 1] == p) {
        throw std::invalid_argument("polyline: repeated consecutive vertex");
      }
    }
    if (!detail::all_collinear(vertices) && detail::self_intersecting(vertices)) {
      throw std::invalid_argument("polyline: self-intersecting");
    }
    return LoopSpec(plane, Polyline{std::move(vertices)}, orientation);
  }

  static LoopSpec closed_path(Plane plane, std::vector<Point2> vertices) {
    if (vertices.empty()) throw std::invalid_argument("closed_path: no vertices");
    for (const Point2& p : vertices) {
      if (!admissible(plane, p)) {
        throw std::invalid_argument("closed_path: vertex outside admissible region");
      }
    }
    return LoopSpec(plane, ClosedPath{std::move(vertices)}, 1);
  }

  Plane plane() const { return plane_; }
  const LoopShape& shape() const { return shape_; }
  int orientation() const { return orientation_; }
  bool is_rect() const { return std::holds_alternative<Rect>(shape_); }
  const Rect& as_rect() const {
    if (!is_rect()) throw std::invalid_argument("loop is not a rectangle");
    return std::get<Rect>(shape_);
  }

  LoopSpec reversed() const {
    if (const auto* path = std::get_if<ClosedPath>(&shape_)) {
      std::vector<Point2> rev(path->vertices.rbegin(), path->vertices.rend());
      return LoopSpec(plane_, ClosedPath{std::move(rev)}, 1);
    }
    LoopSpec out = *this;
    out.orientation_ = -orientation_;
    return out;
  }

  /// Vertices in orientation +1 order.
  std::vector<Point2> base_vertices() const {
    return std::visit(
        [](const auto& s) -> std::vector<Point2> {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, Rect>) {
            return {{s.u_min, s.v_min}, {s.u_max, s.v_min},
                    {s.u_max, s.v_max}, {s.u_min, s.v_max}};
          } else {
            return s.vertices;
          }
        },
        shape_);
  }

  /// Vertices in traversal order.
  std::vector<Point2> traversal() const {
    std::vector<Point2> v = base_vertices();
    if (orientation_ < 0) std::reverse(v.begin(), v.end());
    return v;
  }

  double diameter() const {
    const auto v = base_vertices();
    double d = 0.0;
    for (const auto& a : v) {
      for (const auto& b : v) d = std::max(d, length(a - b));
    }
    return d;
  }

  bool operator==(const LoopSpec&) const = default;

 private:
  LoopSpec(Plane plane, LoopShape shape, int orientation)
      : plane_(plane), shape_(std::move(shape)), orientation_(orientation) {}

  static void check_orientation(int o) {
    if (o != 1 && o != -1) throw std::invalid_argument("orientation must be +1 or -1");
  }

  Plane plane_;
  LoopShape shape_;
  int orientation_;
};

enum class AreaMethod { quadrature, closed_form, line_integral };

inline const char* method_name(AreaMethod m) {
  switch (m) {
    case AreaMethod::quadrature: return "quadrature";
    case AreaMethod::closed_form: return "closed_form";
    case AreaMethod::line_integral: return "line_integral";
  }
  return "?";
}

struct AreaResult {
  double sigma = 0.0;
  AreaMethod method = AreaMethod::closed_form;
  double abs_error_estimate = 0.0;
};

/// `automatic` short-circuits rectangles to their closed form.
enum class AreaRoute { automatic, quadrature };

namespace detail {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double rect_closed_form(Plane plane, const Rect& r) {
  if (plane == Plane::III) {
    // cosh(2b) - cosh(2a) = 2 sinh(a + b) sinh(b - a)
    return (r.v_max - r.v_min) * 2.0 * std::sinh(r.u_min + r.u_max) *
           std::sinh(r.u_max - r.u_min);
  }
  // e^{-2a} - e^{-2b} = -e^{-2a} expm1(-2 (b - a))
  return -(r.u_max - r.u_min) * std::exp(-2.0 * r.v_min) *
         std::expm1(-2.0 * (r.v_max - r.v_min));
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Integral gk(F&& f, double a, double b) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 10, 1e-12, &err);
  return {value, err};
}

inline Integral quadrature_rect(Plane plane, const Rect& r) {
  if (r.u_min == r.u_max || r.v_min == r.v_max) return {};
  double inner_err = 0.0;
  auto inner = [&](double u) {
    const Integral in = gk(
        [&](double v) { return weight_unchecked(plane, {u, v}); }, r.v_min, r.v_max);
    inner_err = std::max(inner_err, in.error);
    return in.value;
  };
  const Integral out = gk(inner, r.u_min, r.u_max);
  return {out.value, out.error + inner_err * (r.u_max - r.u_min)};
}

/// Signed integral of the weight over triangle (p0, p1, p2) through the
/// Duffy map x(s, t) = p0 + s (p1 - p0) + s t (p2 - p1).
inline Integral quadrature_triangle(Plane plane, Point2 p0, Point2 p1, Point2 p2) {
  const double jac = cross(p1 - p0, p2 - p1);
  if (jac == 0.0) return {};
  double inner_err = 0.0;
  auto inner = [&](double s) {
    const Integral in = gk(
        [&](double t) {
          const Point2 x = p0 + s * (p1 - p0) + (s * t) * (p2 - p1);
          return weight_unchecked(plane, x);
        },
        0.0, 1.0);
    inner_err = std::max(inner_err, in.error);
    return s * in.value;
  };
  const Integral out = gk(inner, 0.0, 1.0);
  return {jac * out.value, std::abs(jac) * (out.error + inner_err)};
}

/// Fan triangulation from the first vertex.  Signed triangle contributions
/// add up to the winding-number-weighted integral, so any closed path works.
inline Integral quadrature_polygon(Plane plane, std::span<const Point2> pts) {
  Integral total;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const Integral t = quadrature_triangle(plane, pts[0], pts[k], pts[k + 1]);
    total.value += t.value;
    total.error += t.error;
  }
  return total;
}

/// Green's-theorem edge integrand: the weight's antiderivative paired with the
/// coordinate differential it integrates against.
///   Planes I/II : integral of e^{-2v} du
///   Plane III   : integral of cosh(2u) dv
inline double boundary_integrand(Plane plane, Point2 p, Point2 dp) {
  if (plane == Plane::III) return std::cosh(2.0 * p.u) * dp.v;
  return std::exp(-2.0 * p.v) * dp.u;
}

inline double line_integral_pass(Plane plane, std::span<const Point2> pts,
                                 int per_edge) {
  static constexpr double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
  static constexpr double kWeights[5] = {0.2369268850561891, 0.4786286704993665,
                                         0.5688888888888889, 0.4786286704993665,
                                         0.2369268850561891};
  double total = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Point2 a = pts[e], b = pts[(e + 1) % n];
    const Point2 d = b - a;
    if (d == Point2{}) continue;
    const Point2 step = (1.0 / per_edge) * d;
    for (int k = 0; k < per_edge; ++k) {
      const Point2 mid = a + ((k + 0.5) / per_edge) * d;
      for (int q = 0; q < 5; ++q) {
        const Point2 p = mid + (0.5 * kNodes[q]) * step;
        total += 0.5 * kWeights[q] * boundary_integrand(plane, p, step);
      }
    }
  }
  return total;
}

}  // namespace detail

/// Signed weighted area of a polygonal closed path from the exact edge
/// integrals of the Green's-theorem form.  Accepts vertices outside the
/// admissible region (the antiderivative is entire).
inline double polygon_area_exact(Plane plane, std::span<const Point2> pts) {
  double total = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Point2 a = pts[e], b = pts[(e + 1) % n];
    if (plane == Plane::III) {
      // dv * [sinh(2 u_b) - sinh(2 u_a)] / (2 du)
      const double du = b.u - a.u;
      const double factor = du == 0.0 ? 1.0 : std::sinh(du) / du;
      total += (b.v - a.v) * std::cosh(a.u + b.u) * factor;
    } else {
      // du * e^{-2 v_a} [1 - e^{-2 dv}] / (2 dv)
      const double dv = b.v - a.v;
      const double factor = dv == 0.0 ? 1.0 : -std::expm1(-2.0 * dv) / (2.0 * dv);
      total += (b.u - a.u) * std::exp(-2.0 * a.v) * factor;
    }
  }
  return total;
}

/// Signed weighted area of the loop.
inline AreaResult area(const LoopSpec& loop, double quadrature_tolerance = 1e-10,
                       AreaRoute route = AreaRoute::automatic) {
  if (!(quadrature_tolerance > 0)) {
    throw std::invalid_argument("area: tolerance must be > 0");
  }
  const int o = loop.orientation();
  if (loop.is_rect() && route == AreaRoute::automatic) {
    const double s = detail::rect_closed_form(loop.plane(), loop.as_rect());
    return {o * s, AreaMethod::closed_form, 8 * detail::kEps * std::abs(s)};
  }
  detail::Integral q;
  if (loop.is_rect()) {
    q = detail::quadrature_rect(loop.plane(), loop.as_rect());
  } else {
    const auto pts = loop.base_vertices();
    q = detail::quadrature_polygon(loop.plane(), pts);
  }
  if (!(q.error <= quadrature_tolerance * std::max(1.0, std::abs(q.value)))) {
    throw ConvergenceFailure("area: quadrature tolerance not reached", q.error);
  }
  return {o * q.value, AreaMethod::quadrature, q.error};
}

/// Same signed area as a contour integral of the weight's antiderivative,
/// Gauss-Legendre on `step_count` sub-segments per edge.  The error estimate
/// compares against a half-resolution pass.
inline AreaResult area_line_integral(const LoopSpec& loop, int step_count) {
  if (step_count < 8) {
    throw std::invalid_argument("area_line_integral: step_count must be >= 8");
  }
  const auto pts = loop.base_vertices();
  const double fine = detail::line_integral_pass(loop.plane(), pts, step_count);
  const double coarse = detail::line_integral_pass(loop.plane(), pts, step_count / 2);
  const int o = loop.orientation();
  return {o * fine, AreaMethod::line_integral,
          std::abs(fine - coarse) + 16 * detail::kEps * std::abs(fine)};
}

/// Joins two loops of the same plane at their first common vertex.  The
/// result is a single closed path whose signed area is the sum of both.
inline LoopSpec concatenate(const LoopSpec& a, const LoopSpec& b) {
  if (a.plane() != b.plane()) {
    throw std::invalid_argument("concatenate: loops live on different planes");
  }
  const auto ta = a.traversal();
  const auto tb = b.traversal();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const auto j = std::find(tb.begin(), tb.end(), ta[i]);
    if (j == tb.end()) continue;
    std::vector<Point2> path;
    path.reserve(ta.size() + tb.size());
    for (std::size_t k = 0; k < ta.size(); ++k) path.push_back(ta[(i + k) % ta.size()]);
    const std::size_t jb = static_cast<std::size_t>(j - tb.begin());
    for (std::size_t k = 0; k < tb.size(); ++k) path.push_back(tb[(jb + k) % tb.size()]);
    return LoopSpec::closed_path(a.plane(), std::move(path));
  }
  throw std::invalid_argument("concatenate: loops share no common vertex");
}

/// `steps` + 1 points along the traversal, last equal to first.  Segments are
/// shared among edges in proportion to edge length.
inline std::vector<Point2> discretize(const LoopSpec& loop, int steps) {
  if (steps < 1) throw std::invalid_argument("discretize: steps must be >= 1");
  const auto pts = loop.traversal();
  const std::size_t n = pts.size();
  std::vector<double> lengths(n);
  for (std::size_t e = 0; e < n; ++e) lengths[e] = length(pts[(e + 1) % n] - pts[e]);
  const double perimeter = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  std::vector<Point2> out;
  out.reserve(steps + 1);
  if (perimeter == 0.0) {
    out.assign(steps + 1, pts.front());
    return out;
  }
  // One segment per non-degenerate edge when possible (keeps every corner),
  // the rest by largest remainder.
  std::vector<int> counts(n, 0);
  int used = 0;
  const auto edges = static_cast<int>(
      std::count_if(lengths.begin(), lengths.end(), [](double l) { return l > 0.0; }));
  if (steps >= edges) {
    for (std::size_t e = 0; e < n; ++e) counts[e] = lengths[e] > 0.0 ? 1 : 0;
    used = edges;
  }
  const int spare = steps - used;
  std::vector<std::pair<double, std::size_t>> remainders;
  for (std::size_t e = 0; e < n; ++e) {
    const double exact = spare * lengths[e] / perimeter;
    const int whole = static_cast<int>(std::floor(exact));
    counts[e] += whole;
    used += whole;
    remainders.emplace_back(exact - whole, e);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (int k = 0; k < steps - used; ++k) ++counts[remainders[k].second];

  for (std::size_t e = 0; e < n; ++e) {
    const Point2 a = pts[e], d = pts[(e + 1) % n] - pts[e];
    for (int k = 0; k < counts[e]; ++k) {
      out.push_back(a + (static_cast<double>(k) / counts[e]) * d);
    }
  }
  out.push_back(pts.front());
  return out;
}

}  // namespace optholo
