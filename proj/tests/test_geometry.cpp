#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ylab/geometry.hpp"

using namespace ylab;

namespace {

// Brute-force distance from x to the ellipsoid surface: dense (theta, phi)
// sampling followed by two rounds of local re-sampling around the best cell.
double ellipsoid_distance_by_sampling(const std::vector<double>& a, const Vec& x) {
  auto dist = [&](double th, double ph) {
    const double px = a[0] * std::sin(th) * std::cos(ph);
    const double py = a[1] * std::sin(th) * std::sin(ph);
    const double pz = a[2] * std::cos(th);
    return std::hypot(px - x[0], py - x[1], pz - x[2]);
  };
  double th_lo = 0.0, th_hi = std::numbers::pi;
  double ph_lo = -std::numbers::pi, ph_hi = std::numbers::pi;
  double best = INFINITY, best_th = 0.0, best_ph = 0.0;
  const int samples = 600;
  for (int round = 0; round < 4; ++round) {
    const double dth = (th_hi - th_lo) / samples, dph = (ph_hi - ph_lo) / samples;
    for (int i = 0; i <= samples; ++i)
      for (int j = 0; j <= samples; ++j) {
        const double th = th_lo + i * dth, ph = ph_lo + j * dph;
        const double d = dist(th, ph);
        if (d < best) {
          best = d;
          best_th = th;
          best_ph = ph;
        }
      }
    th_lo = best_th - 3 * dth;
    th_hi = best_th + 3 * dth;
    ph_lo = best_ph - 3 * dph;
    ph_hi = best_ph + 3 * dph;
  }
  return best;
}

// -Laplacian of the signed distance by central differences; equals the mean
// curvature of the boundary in the limit x -> boundary.
double minus_laplacian_of_distance(const Domain& dom, const Vec& x, double s) {
  double lap = 0.0;
  const double d0 = dom.signed_distance(x);
  for (int k = 0; k < x.dim(); ++k) {
    Vec p = x, m = x;
    p[k] += s;
    m[k] -= s;
    lap += (dom.signed_distance(p) - 2.0 * d0 + dom.signed_distance(m)) / (s * s);
  }
  return -lap;
}

Vec random_point(std::mt19937_64& rng, int n, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  return x;
}

std::vector<Domain> catalog() {
  return {
      Domain::ball(3, 1.0),
      Domain::ball(4, 1.5, Vec{0.1, -0.2, 0.0, 0.3}),
      Domain::annulus(3, 0.5, 2.0),
      Domain::ellipsoid({1.0, 1.5, 2.0}),
      Domain::ball_minus_balls(Ball{Vec{0, 0, 0}, 3.0}, {Ball{Vec{1, 0, 0}, 0.1}, Ball{Vec{-1, 0.5, 0}, 0.3}}),
      Domain::half_space_cap(Ball{Vec{0, 0, 0}, 1.0}, Vec{0, 0, 1}, 0.3, 0.1),
      Domain::ball_minus_cones(4, 2.5, 0.2, 1.0 / 0.8 + 0.05),
  };
}

}  // namespace

TEST_CASE("signed distance examples") {
  CHECK(Domain::ball(3, 1.0).signed_distance(Vec{0, 0, 0}) == 1.0);
  CHECK(Domain::annulus(3, 0.5, 2.0).signed_distance(Vec{1, 0, 0}) == 0.5);
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  CHECK(ell.signed_distance(Vec{0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));

  const double oracle = ellipsoid_distance_by_sampling({1.0, 1.5, 2.0}, Vec{0.9, 0, 0});
  CHECK(oracle == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(ell.signed_distance(Vec{0.9, 0, 0}) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("ellipsoid projection matches brute-force sampling") {
  const std::vector<double> axes{1.0, 1.5, 2.0};
  const Domain ell = Domain::ellipsoid(axes);
  const std::vector<Vec> points{Vec{0.3, 0.2, 0.1},  Vec{0.0, 0.0, 1.2},  Vec{0.5, -1.0, 0.7},
                                Vec{1.4, 0.3, -0.9}, Vec{-2.0, 2.0, 2.5}, Vec{0.0, 0.6, 0.0},
                                Vec{0.0, 0.0, 0.0},  Vec{0.95, 0.0, 0.0}};
  for (const Vec& x : points) {
    const double expect = ellipsoid_distance_by_sampling(axes, x);
    const double got = std::abs(ell.signed_distance(x));
    CHECK(got == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("projection non-convergence carries the last iterate") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0}).with_options(GeometryOptions{1e-12, 0});
  try {
    (void)ell.signed_distance(Vec{0.3, 0.2, 0.1});
    FAIL("expected ProjectionError");
  } catch (const ProjectionError& e) {
    CHECK(e.last_iterate().dim() == 3);
  }
}

TEST_CASE("mean curvature examples and convention") {
  CHECK(Domain::ball(3, 1.0).mean_curvature(Vec{1, 0, 0}).mean_curvature == doctest::Approx(2.0));
  CHECK(Domain::annulus(3, 0.5, 2.0).mean_curvature(Vec{0.5, 0, 0}).mean_curvature == doctest::Approx(-4.0));
  CHECK(Domain::annulus(3, 0.5, 2.0).mean_curvature(Vec{0, 2, 0}).mean_curvature == doctest::Approx(1.0));
  CHECK(Domain::ellipsoid({1, 1, 1}).mean_curvature(Vec{0, 0, 1}).mean_curvature == doctest::Approx(2.0));

  // sphere of radius rho: +(n-1)/rho when the interior normal points to the center
  for (int n = 3; n <= 6; ++n) {
    Vec c(n);
    c[0] = 0.25;
    const Domain b = Domain::ball(n, 0.7, c);
    Vec p = c;
    p[1] += 0.7;
    const BoundaryPoint bp = b.mean_curvature(p);
    CHECK(bp.mean_curvature == doctest::Approx((n - 1) / 0.7));
    CHECK(dot(bp.interior_normal, c - p) > 0.0);
  }
  CHECK_THROWS_AS((void)Domain::ball(3, 1.0).mean_curvature(Vec{0.5, 0, 0}), PreconditionError);
}

TEST_CASE("mean curvature agrees with the Laplacian of the distance") {
  const double delta = 2e-3, step = 2e-4;
  for (const Domain& dom : catalog()) {
    CAPTURE(dom.describe());
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 4000 && checked < 20; ++trial) {
      const Vec x = random_point(rng, dom.dim(), 0.5 * dom.diameter());
      const double d = dom.signed_distance(x);
      if (!(d > 0.0)) continue;
      const BoundaryPoint bp = dom.nearest_boundary_point(x);
      // skip points near seams of piecewise boundaries
      const Vec probe = bp.position + delta * bp.interior_normal;
      if (std::abs(dom.signed_distance(probe) - delta) > 1e-10) continue;
      const BoundaryPoint again = dom.nearest_boundary_point(probe);
      if (std::abs(again.mean_curvature - bp.mean_curvature) > 1e-9) continue;
      const double h_parallel = minus_laplacian_of_distance(dom, probe, step);
      // parallel surface at distance delta: H(delta) = H + O(delta * |II|^2)
      CHECK(h_parallel == doctest::Approx(bp.mean_curvature).epsilon(0.02).scale(1.0));
      ++checked;
    }
    CHECK(checked >= 5);
  }
}

TEST_CASE("cap fillet and sharp rim") {
  const Domain sharp = Domain::half_space_cap(Ball{Vec{0, 0, 0}, 1.0}, Vec{0, 0, 1}, 0.3, 0.0);
  const Vec rim{std::sqrt(1.0 - 0.09), 0.0, 0.3};
  CHECK_THROWS_AS((void)sharp.mean_curvature(rim), NonSmoothBoundary);
  CHECK(sharp.mean_curvature(Vec{0.2, 0.1, 0.3}).mean_curvature == 0.0);

  // fillet: ring of radius rho_rim = sqrt(0.9^2 - 0.2^2) at height 0.2, tube radius 0.1
  const Domain smooth = Domain::half_space_cap(Ball{Vec{0, 0, 0}, 1.0}, Vec{0, 0, 1}, 0.3, 0.1);
  const double rim_r = std::sqrt(0.81 - 0.04);
  const double phi = 0.6;
  const Vec p{rim_r + 0.1 * std::cos(phi), 0.0, 0.2 + 0.1 * std::sin(phi)};
  CHECK(smooth.signed_distance(p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  const BoundaryPoint bp = smooth.mean_curvature(p);
  const double w = rim_r + 0.1 * std::cos(phi);
  CHECK(bp.mean_curvature == doctest::Approx(1.0 / 0.1 + std::cos(phi) / w));
}

TEST_CASE("classify") {
  CHECK(Domain::ball(3, 1.0).classify() == DomainClass::convex);
  CHECK(Domain::annulus(3, 0.1, 3.0).classify() == DomainClass::annular);
  CHECK(Domain::ball_minus_balls(Ball{Vec{0, 0, 0}, 3.0}, {Ball{Vec{1, 0, 0}, 0.1}}).classify() ==
        DomainClass::multi_hole);
  CHECK(Domain::ellipsoid({0.1, 5.0, 2.0, 1.0}).classify() == DomainClass::convex);
  CHECK(Domain::half_space_cap(Ball{Vec{0, 0, 0}, 1.0}, Vec{1, 1, 0}, 0.0).classify() == DomainClass::convex);
}

TEST_CASE("signed distance is 1-Lipschitz") {
  std::mt19937_64 rng(2024);
  for (const Domain& dom : catalog()) {
    CAPTURE(dom.describe());
    const double box = 0.7 * dom.diameter();
    for (int i = 0; i < 400; ++i) {
      const Vec x = random_point(rng, dom.dim(), box);
      const Vec y = x + random_point(rng, dom.dim(), 0.2);
      CHECK(std::abs(dom.signed_distance(x) - dom.signed_distance(y)) <= norm(x - y) * (1 + 1e-12) + 1e-14);
    }
  }
}

TEST_CASE("ball distance is exact") {
  std::mt19937_64 rng(3);
  const Vec c{0.3, -0.1, 0.2};
  const Domain b = Domain::ball(3, 1.3, c);
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_point(rng, 3, 2.0);
    CHECK(b.signed_distance(x) == 1.3 - norm(x - c));
  }
}

TEST_CASE("axis crossing") {
  const Domain b = Domain::ball(3, 1.0);
  CHECK(b.axis_crossing(Vec{0.9, 0, 0}, 0, 1.0, 0.2) == doctest::Approx(0.1).epsilon(1e-13));
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const double t = ell.axis_crossing(Vec{0, 0.2, 1.7}, 2, 1.0, 0.5);
  const double z = 1.7 + t;
  CHECK((0.2 / 1.5) * (0.2 / 1.5) + (z / 2.0) * (z / 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)b.axis_crossing(Vec{0.1, 0, 0}, 0, 1.0, 0.2), PreconditionError);
}

TEST_CASE("scaling") {
  std::mt19937_64 rng(11);
  for (const Domain& dom : catalog()) {
    const Domain big = dom.scaled(2.5);
    for (int i = 0; i < 50; ++i) {
      const Vec x = random_point(rng, dom.dim(), 0.5 * dom.diameter());
      CHECK(big.signed_distance(2.5 * x) == doctest::Approx(2.5 * dom.signed_distance(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Domain::annulus(3, 2.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(Domain::ball(2, 1.0), PreconditionError);
  CHECK_THROWS_AS(Domain::ellipsoid({1.0, -1.0, 2.0}), PreconditionError);
  CHECK_THROWS_AS(Domain::ball_minus_balls(Ball{Vec{0, 0, 0}, 1.0}, {Ball{Vec{0.95, 0, 0}, 0.1}}),
                  PreconditionError);
  CHECK_THROWS_AS(Domain::ball_minus_balls(Ball{Vec{0, 0, 0}, 3.0},
                                           {Ball{Vec{0.5, 0, 0}, 0.3}, Ball{Vec{1.0, 0, 0}, 0.3}}),
                  PreconditionError);
}

TEST_CASE("capped cones keep the domain star-shaped and the axis segment free") {
  for (double sb : {0.3, 0.15, 0.05}) {
    const double start = 1.0 / (1.0 - sb) + 0.01;
    const Domain dom = Domain::ball_minus_cones(4, 3.0, sb, start);
    for (double x4 = -0.99; x4 <= 0.99; x4 += 0.01) CHECK(dom.signed_distance(Vec{0, 0, 0, x4}) > 0.0);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      const Vec x = random_point(rng, 4, 3.0);
      if (!(dom.signed_distance(x) > 0.0)) continue;
      for (int k = 1; k < 200; ++k) CHECK(dom.signed_distance(x * (k / 200.0)) > 0.0);
    }
  }
}
