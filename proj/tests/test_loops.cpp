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


#include <cmath>
#include <random>
#include <vector>

#include "optholo/loops.hpp"
#include "support.hpp"

namespace optholo {
namespace {

double rect_oracle(Plane plane, const Rect& r) {
  if (plane == Plane::III) {
    return (r.v_max - r.v_min) * (std::cosh(2 * r.u_max) - std::cosh(2 * r.u_min));
  }
  return (r.u_max - r.u_min) * (std::exp(-2 * r.v_min) - std::exp(-2 * r.v_max));
}

double weight_oracle(Plane plane, Point2 p) {
  return plane == Plane::III ? 2 * std::sinh(2 * p.u) : 2 * std::exp(-2 * p.v);
}

// Centroid rule on an n x n sub-triangulation of each fan triangle.
double polygon_brute_force(Plane plane, const std::vector<Point2>& pts, int n) {
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const Point2 a = pts[0], e1 = pts[k] - a, e2 = pts[k + 1] - a;
    const double jac = cross(e1, e2);
    const double cell = jac / (2.0 * n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; i + j < n; ++j) {
        const Point2 c1 = a + ((i + 1.0 / 3) / n) * e1 + ((j + 1.0 / 3) / n) * e2;
        total += cell * weight_oracle(plane, c1);
        if (i + j + 1 < n) {
          const Point2 c2 = a + ((i + 2.0 / 3) / n) * e1 + ((j + 2.0 / 3) / n) * e2;
          total += cell * weight_oracle(plane, c2);
        }
      }
    }
  }
  return total;
}

Rect random_rect(std::mt19937_64& rng, Plane plane) {
  std::uniform_real_distribution<double> lo(0.0, plane == Plane::III ? 1.5 : 2.0);
  std::uniform_real_distribution<double> side(1e-3, 1.5);
  Rect r;
  r.u_min = plane == Plane::III ? lo(rng) : lo(rng) - 1.0;
  r.v_min = lo(rng);
  r.u_max = r.u_min + side(rng);
  r.v_max = r.v_min + side(rng);
  return r;
}

constexpr Plane kPlanes[] = {Plane::I, Plane::II, Plane::III};

TEST(Weight, Values) {
  EXPECT_EQ(weight(Plane::I, {0.7, 0.0}), 2.0);
  EXPECT_EQ(weight(Plane::III, {0.0, 0.4}), 0.0);
  EXPECT_NEAR(weight(Plane::II, {0.1, std::log(2.0)}), 0.5, 1e-15);
  EXPECT_THROW(weight(Plane::I, {0.0, -0.1}), std::invalid_argument);
  EXPECT_THROW(weight(Plane::III, {-0.1, 0.0}), std::invalid_argument);
}

TEST(Planes, ControlPointRoundTrip) {
  for (Plane p : kPlanes) {
    const Point2 q{0.3, 0.2};
    const ControlPoint c = control_point(p, q);
    EXPECT_TRUE(lies_on(p, c));
    EXPECT_EQ(plane_coordinates(p, c), q);
  }
  EXPECT_NEAR(control_point(Plane::II, {0.1, 0.2}).theta1, kPi / 2, 1e-15);
  EXPECT_FALSE(lies_on(Plane::I, control_point(Plane::II, {0.1, 0.2})));
}

TEST(Area, ReferenceRectangles) {
  const auto h = LoopSpec::rect(Plane::II, {0, kPi / 4, 0, std::log(2.0)});
  EXPECT_NEAR(area(h).sigma, 3 * kPi / 16, 1e-12);
  EXPECT_NEAR(area(h).sigma, 0.589048622548, 1e-12);
  const auto t = LoopSpec::rect(Plane::III, {0, std::acosh(2.0), 0, kPi / 8});
  EXPECT_NEAR(area(t).sigma, 3 * kPi / 4, 1e-12);
  EXPECT_NEAR(area(t).sigma, 2.356194490192, 1e-12);
}

TEST(Area, DegenerateRectIsZero) {
  for (Plane p : kPlanes) {
    EXPECT_EQ(area(LoopSpec::rect(p, {0.2, 0.5, 0.3, 0.3})).sigma, 0.0);
    EXPECT_EQ(area(LoopSpec::rect(p, {0.2, 0.2, 0.3, 0.9})).sigma, 0.0);
    EXPECT_EQ(area(LoopSpec::rect(p, {0.2, 0.2, 0.3, 0.9}), 1e-10, AreaRoute::quadrature).sigma,
              0.0);
  }
}

TEST(Area, QuadratureMatchesClosedFormOnRandomRects) {
  std::mt19937_64 rng(314);
  for (Plane p : kPlanes) {
    for (int trial = 0; trial < 100; ++trial) {
      const Rect r = random_rect(rng, p);
      const auto loop = LoopSpec::rect(p, r);
      const double exact = rect_oracle(p, r);
      const auto q = area(loop, 1e-10, AreaRoute::quadrature);
      const auto c = area(loop);
      EXPECT_EQ(q.method, AreaMethod::quadrature);
      EXPECT_EQ(c.method, AreaMethod::closed_form);
      EXPECT_LT(std::abs(q.sigma - exact), 1e-9 * std::abs(exact));
      EXPECT_LT(std::abs(c.sigma - exact), 1e-12 * std::abs(exact));
    }
  }
}

TEST(Area, ReversalNegatesExactly) {
  std::mt19937_64 rng(7);
  for (Plane p : kPlanes) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto loop = LoopSpec::rect(p, random_rect(rng, p));
      EXPECT_EQ(area(loop.reversed()).sigma, -area(loop).sigma);
      EXPECT_EQ(area(loop.reversed(), 1e-10, AreaRoute::quadrature).sigma,
                -area(loop, 1e-10, AreaRoute::quadrature).sigma);
    }
  }
}

TEST(Area, PolygonAgainstBruteForce) {
  const std::vector<Point2> pentagon{{0.1, 0.1}, {0.9, 0.2}, {1.1, 0.8}, {0.5, 1.2}, {0.0, 0.7}};
  for (Plane p : kPlanes) {
    const auto loop = LoopSpec::polyline(p, pentagon);
    const double q = area(loop).sigma;
    const double b = polygon_brute_force(p, pentagon, 400);
    EXPECT_NEAR(q, b, 1e-5 * std::abs(b)) << plane_name(p);
    EXPECT_NEAR(q, polygon_area_exact(p, pentagon), 1e-11);
    EXPECT_GT(q, 0.0);
  }
}

TEST(Area, ClockwisePolylineIsNegative) {
  const auto ccw = LoopSpec::polyline(Plane::I, {{0, 0}, {0.1, 0}, {0, 0.1}});
  const auto cw = LoopSpec::polyline(Plane::I, {{0, 0}, {0, 0.1}, {0.1, 0}});
  EXPECT_GT(area(ccw).sigma, 0.0);
  EXPECT_NEAR(area(cw).sigma, -area(ccw).sigma, 1e-15);
}

TEST(Area, RectAsPolylineAgrees) {
  std::mt19937_64 rng(99);
  for (Plane p : kPlanes) {
    for (int trial = 0; trial < 10; ++trial) {
      const Rect r = random_rect(rng, p);
      const auto poly = LoopSpec::polyline(
          p, {{r.u_min, r.v_min}, {r.u_max, r.v_min}, {r.u_max, r.v_max}, {r.u_min, r.v_max}});
      EXPECT_NEAR(area(poly).sigma, rect_oracle(p, r), 1e-9 * std::abs(rect_oracle(p, r)));
    }
  }
}

TEST(LineIntegral, MatchesClosedForm) {
  const auto h = LoopSpec::rect(Plane::II, {0, kPi / 4, 0, std::log(2.0)});
  const auto li = area_line_integral(h, 64);
  EXPECT_EQ(li.method, AreaMethod::line_integral);
  EXPECT_NEAR(li.sigma, 3 * kPi / 16, 1e-9);
  const auto t = LoopSpec::rect(Plane::III, {0, std::acosh(2.0), 0, kPi / 8});
  EXPECT_NEAR(area_line_integral(t, 64).sigma, 3 * kPi / 4, 1e-9);
}

TEST(LineIntegral, DegenerateAndReversal) {
  const auto back_and_forth = LoopSpec::polyline(Plane::I, {{0, 0}, {0.5, 0.5}, {1, 1}});
  EXPECT_NEAR(area_line_integral(back_and_forth, 16).sigma, 0.0, 1e-15);
  const auto tri = LoopSpec::polyline(Plane::III, {{0.1, 0}, {0.6, 0.2}, {0.3, 0.5}});
  EXPECT_EQ(area_line_integral(tri.reversed(), 32).sigma, -area_line_integral(tri, 32).sigma);
  EXPECT_NEAR(area_line_integral(tri, 32).sigma, area(tri).sigma, 1e-10);
  EXPECT_THROW(area_line_integral(tri, 4), std::invalid_argument);
}

TEST(Concatenate, AdjacentRectsAdd) {
  const auto a = LoopSpec::rect(Plane::I, {0, 1, 0, 1});
  const auto b = LoopSpec::rect(Plane::I, {1, 2, 0, 1});
  const auto c = concatenate(a, b);
  EXPECT_NEAR(area(c).sigma, area(a).sigma + area(b).sigma, 1e-9);
  EXPECT_NEAR(area(c).sigma, rect_oracle(Plane::I, {0, 2, 0, 1}), 1e-9);
}

TEST(Concatenate, WithReversalCancels) {
  const auto a = LoopSpec::rect(Plane::III, {0.2, 0.9, 0.1, 0.4});
  EXPECT_NEAR(area(concatenate(a, a.reversed())).sigma, 0.0, 1e-9);
  const auto t = LoopSpec::polyline(Plane::II, {{0, 0}, {1, 0.3}, {0.2, 0.8}});
  EXPECT_NEAR(area(concatenate(t, t.reversed())).sigma, 0.0, 1e-9);
}

TEST(Concatenate, PointLoopIsNeutral) {
  const auto a = LoopSpec::rect(Plane::I, {0, 1, 0, 1});
  const auto point = LoopSpec::rect(Plane::I, {1, 1, 1, 1});
  EXPECT_NEAR(area(concatenate(a, point)).sigma, area(a).sigma, 1e-9);
}

TEST(Concatenate, Rejections) {
  const auto a = LoopSpec::rect(Plane::I, {0, 1, 0, 1});
  EXPECT_THROW(concatenate(a, LoopSpec::rect(Plane::II, {0, 1, 0, 1})), std::invalid_argument);
  EXPECT_THROW(concatenate(a, LoopSpec::rect(Plane::I, {3, 4, 0, 1})), std::invalid_argument);
}

TEST(Validation, RectBounds) {
  EXPECT_THROW(LoopSpec::rect(Plane::I, {1, 0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(LoopSpec::rect(Plane::I, {0, 1, -0.1, 1}), std::invalid_argument);
  EXPECT_THROW(LoopSpec::rect(Plane::III, {-0.1, 1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(LoopSpec::rect(Plane::I, {0, 1, 0, 1}, 2), std::invalid_argument);
  EXPECT_THROW(LoopSpec::rect(Plane::I, {0, NAN, 0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(LoopSpec::rect(Plane::I, {-1, 1, 0, 1}));
}

TEST(Validation, Polyline) {
  EXPECT_THROW(LoopSpec::polyline(Plane::I, {{0, 0}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(LoopSpec::polyline(Plane::I, {{0, 0}, {1, 0}, {1, 1}, {0, 0}}),
               std::invalid_argument);
  EXPECT_THROW(LoopSpec::polyline(Plane::I, {{0, 0}, {1, 0}, {1, 0}, {0, 1}}),
               std::invalid_argument);
  EXPECT_THROW(LoopSpec::polyline(Plane::I, {{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
               std::invalid_argument);
  EXPECT_THROW(LoopSpec::polyline(Plane::III, {{-0.1, 0}, {1, 1}, {1, 0}}),
               std::invalid_argument);
}

TEST(Discretize, CountsAndClosure) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> steps(4, 500);
  for (int trial = 0; trial < 50; ++trial) {
    const auto loop = LoopSpec::rect(Plane::I, random_rect(rng, Plane::I), trial % 2 ? 1 : -1);
    const int n = steps(rng);
    const auto pts = discretize(loop, n);
    ASSERT_EQ(pts.size(), static_cast<std::size_t>(n + 1));
    EXPECT_EQ(pts.front(), pts.back());
    EXPECT_EQ(pts.front(), loop.traversal().front());
    double polyline_area = polygon_area_exact(Plane::I, std::vector<Point2>(pts.begin(), pts.end() - 1));
    EXPECT_NEAR(polyline_area, area(loop).sigma, 1e-12);
  }
}

TEST(Discretize, DegenerateLoopRepeatsPoint) {
  const auto pts = discretize(LoopSpec::rect(Plane::I, {0.3, 0.3, 0.2, 0.2}), 10);
  ASSERT_EQ(pts.size(), 11u);
  for (const auto& p : pts) EXPECT_EQ(p, (Point2{0.3, 0.2}));
}

TEST(LineIntegral, ConvexPolylinesAgreeWithQuadrature) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> count(3, 12);
  std::uniform_real_distribution<double> radius(0.1, 0.6), center(0.7, 1.3), jitter(0.0, 1.0);
  for (Plane p : kPlanes) {
    for (int trial = 0; trial < 20; ++trial) {
      const int k = count(rng);
      std::vector<double> angles(k);
      for (auto& a : angles) a = 2 * kPi * jitter(rng);
      std::sort(angles.begin(), angles.end());
      const double r = radius(rng), cu = center(rng), cv = center(rng);
      std::vector<Point2> pts;
      for (double a : angles) pts.push_back({cu + r * std::cos(a), cv + r * std::sin(a)});
      const auto loop = LoopSpec::polyline(p, pts);
      const double q = area(loop).sigma;
      const double l = area_line_integral(loop, 64).sigma;
      EXPECT_LT(std::abs(q - l), 1e-7 * std::abs(q)) << plane_name(p) << " " << k;
    }
  }
}

TEST(Area, UpwardGrowthBelowExponentialCeiling) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> c(0.0, 2.0), dh(1e-3, 1.0);
  for (Plane p : {Plane::I, Plane::II}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Rect r = random_rect(rng, p);
      const double h = dh(rng);
      Rect taller = r;
      taller.v_max += h;
      const double gain = area(LoopSpec::rect(p, taller)).sigma - area(LoopSpec::rect(p, r)).sigma;
      EXPECT_GT(gain, 0.0);
      EXPECT_LT(gain, (r.u_max - r.u_min) * 2 * std::exp(-2 * r.v_max) * h);
    }
  }
}

}  // namespace
}  // namespace optholo
