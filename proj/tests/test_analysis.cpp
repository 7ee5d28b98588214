#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ylab/analysis.hpp"

using namespace ylab;

namespace {

const Assertion& find(const ConvexVerdict& v, const std::string& name) {
  for (const Assertion& a : v.assertions)
    if (a.name == name) return a;
  throw std::runtime_error("no assertion " + name);
}

}  // namespace

TEST_CASE("verify_convex on the ball") {
  const ConvexVerdict v = verify_convex(Domain::ball(3, 1.0), 1.0 / 16);
  CHECK(v.pass);
  REQUIRE(v.assertions.size() == 5);
  CHECK(find(v, "ricci").worst == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(find(v, "ricci").margin == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(find(v, "sectional").worst == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(v.strictness == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(find(v, "laplacian").worst == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(v.eps_concave == doctest::Approx(10.0 / 256 * v.curvature.max_abs_v));
  CHECK(v.solve.residual_inf <= 1e-10);
}

TEST_CASE("verify_convex on an ellipsoid and a filleted cap") {
  const ConvexVerdict e = verify_convex(Domain::ellipsoid({1.0, 1.5, 2.0}), 1.0 / 16);
  CHECK(e.pass);
  for (const Assertion& a : e.assertions) CHECK(a.margin > 0.0);
  CHECK(e.strictness > 0.0);
  const Domain cap = Domain::half_space_cap(Ball{Vec(3), 1.0}, Vec{0.0, 0.0, 1.0}, 0.3);
  REQUIRE(cap.classify() == DomainClass::convex);
  CHECK(verify_convex(cap, 1.0 / 16).pass);
}

TEST_CASE("verify_convex rejects non-convex domains") {
  CHECK_THROWS_AS(verify_convex(Domain::annulus(3, 0.5, 2.0), 0.1), PreconditionError);
}

TEST_CASE("verify_convex reports the failing node") {
  const Domain ball = Domain::ball(3, 1.0);
  GridField g = make_grid(ball, 1.0 / 16);
  // Laplacian -3 + 4 > 0
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (g.mask[i] != NodeKind::exterior) {
      const Vec x = g.position(i);
      g.values[i] = 1.0 - dot(x, x) / 2.0 + 2.0 * x[0] * x[0];
    }
  const ConvexVerdict v = verify_convex(g, ball);
  CHECK(!v.pass);
  const Assertion& lap = find(v, "laplacian");
  CHECK(!lap.pass);
  CHECK(lap.margin < 0.0);
  CHECK(ball.signed_distance(lap.where) >= 2.0 / 16);
}

TEST_CASE("annulus scan on the radial path") {
  const ScanResult s = scan_annulus(3, {0.2, 0.1, 0.05}, {4.0});
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[0].r0 == 0.2);
  CHECK(s.rows[2].r0 == 0.05);
  CHECK(s.monotone);
  CHECK(s.positive_found);
  CHECK(*s.threshold_r0 == 0.05);
  CHECK(!s.rows[1].positive);
  CHECK(s.failed_rows == 0);

  const ScanResult again = scan_annulus(3, {0.05, 0.2, 0.1}, {4.0});
  for (std::size_t k = 0; k < 3; ++k) CHECK(again.rows[k].max_ricci == s.rows[k].max_ricci);

  const ScanResult small = scan_annulus(3, {0.5}, {2.0});
  CHECK(small.rows[0].ok);
  CHECK(small.rows[0].max_ricci < 0.0);
  CHECK(!small.monotone);

  CHECK_THROWS_AS(scan_annulus(3, {}, {4.0}), PreconditionError);
  CHECK_THROWS_AS(scan_annulus(3, {5.0}, {4.0}), PreconditionError);
}

TEST_CASE("growing R at fixed r0 also raises the maximum") {
  const ScanResult s = scan_annulus(3, {0.1}, {1.0, 2.0, 4.0});
  CHECK(s.rows[0].R == 1.0);
  for (std::size_t k = 1; k < s.rows.size(); ++k) CHECK(s.rows[k].max_ricci > s.rows[k - 1].max_ricci);
}

TEST_CASE("failed rows are kept and the scan continues") {
  ScanOptions opts;
  opts.radial.max_newton = 1;
  const ScanResult s = scan_annulus(3, {0.2, 0.1}, {4.0}, opts);
  CHECK(s.failed_rows == 2);
  for (const ScanRow& r : s.rows) {
    CHECK(!r.ok);
    CHECK(!r.error.empty());
  }
  CHECK(!s.positive_found);
}

TEST_CASE("extending the scan until the sign flips") {
  const ScanResult s = extend_annulus_scan(3, 0.4, 4.0);
  REQUIRE(s.rows.size() == 5);
  CHECK(s.rows[3].r0 == 0.05);
  CHECK(s.rows[3].positive);
  CHECK(!s.rows[2].positive);
  CHECK(s.monotone);
  CHECK(*s.threshold_r0 == 0.05);
  CHECK(extend_annulus_scan(3, 0.4, 4.0, 0.5, 1.0, 2).rows.size() == 2);
  CHECK_THROWS_AS(extend_annulus_scan(3, 0.4, 4.0, 1.0, 1.0), PreconditionError);
}

TEST_CASE("grid path agrees with the radial path") {
  ScanOptions opts;
  opts.path = ScanPath::grid;
  opts.h = 1.0 / 16;
  const ScanResult g = scan_annulus(3, {0.5}, {2.0}, opts);
  const ScanResult r = scan_annulus(3, {0.5}, {2.0});
  REQUIRE(g.rows[0].ok);
  CHECK(g.h == opts.h);
  // the grid only reports nodes at d >= 2h, where the radial maximum lives
  CHECK(std::abs(g.rows[0].max_ricci - r.rows[0].max_ricci) < 2e-2);
}

TEST_CASE("stereographic projection") {
  const Vec s = stereographic_lift(Vec{0.0, 0.0, 0.0});
  CHECK(s.dim() == 4);
  CHECK(s[3] == -1.0);
  const Vec e = stereographic_lift(Vec{1.0, 0.0, 0.0});
  CHECK(e[0] == 1.0);
  CHECK(e[3] == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_real_distribution<double> L(-3.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    const double scale = std::pow(10.0, L(rng));
    const Vec x = Vec{U(rng), U(rng), U(rng)} * scale;
    const Vec y = stereographic_lift(x);
    CHECK(norm(y) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm(stereographic_inverse(y) - x) <= 1e-12 * std::max(1.0, dot(x, x)));
  }
  CHECK_THROWS_AS(stereographic_inverse(Vec{0.0, 0.0, 0.0, 1.0}), PreconditionError);
}

TEST_CASE("cap complement images") {
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double r = cap_image_radius(i);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(cap_image_radius(2) == doctest::Approx(1.0 / std::tan(0.25)));
  // points of the cap complement land in the ball, cap points outside
  std::mt19937_64 rng(4);
  std::normal_distribution<double> N;
  const double R = cap_image_radius(2);
  for (int k = 0; k < 500; ++k) {
    Vec y{N(rng), N(rng), N(rng), N(rng)};
    y *= 1.0 / norm(y);
    if (y[3] >= 1.0) continue;
    const bool in_cap = std::acos(std::clamp(y[3], -1.0, 1.0)) < 0.5;
    CHECK((norm(stereographic_inverse(y)) > R) == in_cap);
  }
  const CapVerdict v = cap_complement_check(2, 3, 1.0 / 16);
  CHECK(v.pass);
  CHECK(v.radius == doctest::Approx(R));
  CHECK(v.map_error <= 1e-12);
  CHECK(v.min_sectional == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(v.max_ricci == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("star-shaped family") {
  CHECK_THROWS_AS(star_shaped_slab(3), PreconditionError);
  StarFamily f;
  f.members = 5;
  f.radius_growth = 1.1;
  const std::vector<Domain> family = star_shaped_slab(4, f);
  REQUIRE(family.size() == 5);
  for (const Domain& d : family) {
    CHECK(star_shaped_sampled(d, 500, 3));
    for (double x4 = -0.999; x4 < 1.0; x4 += 0.01) CHECK(d.signed_distance(Vec{0, 0, 0, x4}) > 0.0);
  }
  // nested: interior points of one member stay inside the next
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int k = 0; k < 4000; ++k) {
    const Vec x{U(rng), U(rng), U(rng), U(rng)};
    for (std::size_t m = 0; m + 1 < family.size(); ++m)
      if (family[m].contains(x)) CHECK(family[m + 1].contains(x));
  }
  CHECK(!star_shaped_sampled(Domain::annulus(4, 0.2, 1.0), 100, 1));
}

TEST_CASE("star scan trend at coarse h") {
  const StarScan s = star_scan(StarFamily{}, 1.0 / 6);
  REQUIRE(s.rows.size() == 4);
  for (const StarRow& r : s.rows) {
    CHECK(r.ok);
    CHECK(r.star_shaped);
  }
  CHECK(s.monotone);
}
