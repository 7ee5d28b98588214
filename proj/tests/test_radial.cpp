#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "ylab/radial.hpp"

using namespace ylab;

namespace {

// shooting oracle, RK4 at 4000/8000 steps plus one Richardson step
constexpr double kAnnulusMax_3_05_2 = 0.547096441928965;

int sign_changes(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
  int changes = 0;
  for (std::size_t k = lo + 1; k < hi; ++k)
    if ((xs[k - 1] > 0) != (xs[k] > 0)) ++changes;
  return changes;
}

}  // namespace

TEST_CASE("closed-form ball") {
  const RadialSolution s = solve_ball(3, 1.0);
  CHECK(s.v.front() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.dv.back() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(s.v.back() == 0.0);
  CHECK(s.max_residual <= 1e-14);

  CHECK(solve_ball(3, 2.0).v.front() == doctest::Approx(1.0).epsilon(1e-15));

  const RadialSolution s7 = solve_ball(7, 1.0, 64);
  for (std::size_t k = 0; k < s7.r.size(); ++k)
    CHECK(s7.v[k] == doctest::Approx((1.0 - s7.r[k] * s7.r[k]) / 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(solve_ball(2, 1.0), PreconditionError);
  CHECK_THROWS_AS(solve_ball(3, 0.0), PreconditionError);
}

TEST_CASE("ball collocation reproduces the closed form") {
  // the three-point scheme is exact on quadratics
  RadialOptions opts;
  opts.nodes = 512;
  for (int n : {3, 4, 6}) {
    const RadialSolution s = solve_ball_collocation(n, 1.5, opts);
    for (std::size_t k = 0; k < s.r.size(); ++k)
      CHECK(std::abs(s.v[k] - (2.25 - s.r[k] * s.r[k]) / 3.0) <= 1e-12);
  }
}

TEST_CASE("ball curvature is constant") {
  for (int n : {3, 5}) {
    const RadialCurvature c = curvature_radial(solve_ball(n, 1.0));
    for (std::size_t k = 0; k < c.Ric_rad.size(); ++k) {
      CHECK(std::abs(c.K_rad_tan[k] + 1.0) <= 1e-12);
      CHECK(std::abs(c.K_tan_tan[k] + 1.0) <= 1e-12);
      CHECK(std::abs(c.Ric_rad[k] + (n - 1)) <= 1e-12);
      CHECK(std::abs(c.Ric_tan[k] + (n - 1)) <= 1e-12);
    }
  }
}

TEST_CASE("annulus profile shape") {
  const RadialSolution s = solve_annulus(3, 0.5, 2.0);
  const std::size_t last = s.r.size() - 1;
  CHECK(s.v.front() == 0.0);
  CHECK(s.v.back() == 0.0);
  for (std::size_t k = 1; k < last; ++k) REQUIRE(s.v[k] > 0.0);
  CHECK(sign_changes(s.dv, 0, s.r.size()) == 1);
  CHECK(std::abs(s.dv[1] - 1.0) <= 1e-5);
  CHECK(std::abs(s.dv[last - 1] + 1.0) <= 1e-5);
  CHECK(s.max_scaled_residual <= 1e-10);
}

TEST_CASE("annulus max against the shooting oracle") {
  const double live = oracle::annulus_max_value_extrapolated(3, 0.5, 2.0);
  CHECK(live == doctest::Approx(kAnnulusMax_3_05_2).epsilon(1e-12));
  RadialOptions opts;
  opts.nodes = 100000;
  CHECK(std::abs(solve_annulus(3, 0.5, 2.0, opts).max_value() - kAnnulusMax_3_05_2) <= 1e-9);
  CHECK(std::abs(solve_annulus(3, 0.5, 2.0).max_value() - kAnnulusMax_3_05_2) <= 1e-7);
}

TEST_CASE("refinement shrinks the error at second order") {
  double prev = 0.0;
  for (int nodes : {256, 512, 1024, 2048}) {
    RadialOptions opts;
    opts.nodes = nodes;
    const double err = std::abs(solve_annulus(3, 0.5, 2.0, opts).max_value() - kAnnulusMax_3_05_2);
    if (prev > 0.0) CHECK(prev / err >= 3.0);
    prev = err;
  }
}

TEST_CASE("trace identity") {
  const RadialSolution s = solve_annulus(4, 0.3, 2.0);
  const RadialCurvature c = curvature_radial(s);
  for (std::size_t k = 1; k + 1 < s.r.size(); ++k)
    CHECK(c.trace_defect[k] <= (s.n - 2) * std::abs(s.residual[k]) + 1e-9);
}

TEST_CASE("scaling equivariance") {
  const double tol = 1e-10;
  const double lambda = 2.5;
  const RadialSolution a = solve_annulus(3, 0.4, 1.7);
  const RadialSolution b = solve_annulus(3, lambda * 0.4, lambda * 1.7);
  REQUIRE(a.r.size() == b.r.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.r.size(); ++k) worst = std::max(worst, std::abs(b.v[k] - lambda * a.v[k]));
  CHECK(worst <= 10.0 * tol * lambda * a.max_value());
}

TEST_CASE("domain monotonicity") {
  const double tol = 1e-10;
  // A1 ⊂ A2 ⊂ A3
  const RadialSolution a1 = solve_annulus(3, 0.6, 1.8);
  const RadialSolution a2 = solve_annulus(3, 0.4, 2.5);
  const RadialSolution a3 = solve_annulus(3, 0.2, 4.0);
  for (double r = 0.6; r <= 1.8; r += 0.01) {
    CHECK(a1.value_at(r) <= a2.value_at(r) + 10 * tol);
    CHECK(a2.value_at(r) <= a3.value_at(r) + 10 * tol);
  }
  // an annulus sits inside the ball of the same outer radius
  const RadialSolution ball = solve_ball(3, 1.8);
  for (double r = 0.6; r <= 1.8; r += 0.01) CHECK(a1.value_at(r) <= ball.value_at(r) + 10 * tol);
}

TEST_CASE("half-space bound") {
  for (double R : {0.5, 1.0, 3.0}) {
    const RadialSolution s = solve_ball(3, R);
    for (std::size_t k = 0; k < s.r.size(); ++k) CHECK(s.v[k] <= R - s.r[k] + 1e-15);
  }
}

TEST_CASE("boundary fits") {
  const EndpointFit ball = boundary_fit(solve_ball(3, 1.0)).at(0);
  CHECK(ball.slope == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ball.quad_coeff == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(ball.expected_quad == doctest::Approx(-0.5));
  for (int n : {3, 4, 8}) CHECK(boundary_fit(solve_ball(n, 2.0)).at(0).slope == doctest::Approx(1.0).epsilon(1e-10));

  const RadialSolution s = solve_annulus(3, 0.5, 2.0);
  REQUIRE(s.endpoint_data.size() == 2);
  const EndpointFit& in = s.endpoint_data[0];
  const EndpointFit& out = s.endpoint_data[1];
  CHECK(in.mean_curvature == doctest::Approx(-4.0));
  CHECK(in.expected_quad == doctest::Approx(1.0));
  CHECK(in.slope == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(in.quad_coeff / in.expected_quad - 1.0) <= 0.05);
  CHECK(out.slope == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(out.quad_coeff / out.expected_quad - 1.0) <= 0.05);

  FitOptions tiny;
  tiny.window_fraction = 1e-9;
  CHECK_THROWS_AS(boundary_fit(s, tiny), PreconditionError);
}

TEST_CASE("thin annuli gain positive Ricci") {
  double prev = -INFINITY;
  for (double r0 : {0.4, 0.2, 0.1, 0.05, 0.025}) {
    const RadialCurvature c = curvature_radial(solve_annulus(3, r0, 4.0));
    CHECK(c.max_ricci > prev);
    prev = c.max_ricci;
    if (r0 == 0.05) CHECK(c.max_ricci > 0.0);
  }
  const RadialCurvature small = curvature_radial(solve_annulus(3, 0.05, 4.0));
  const RadialCurvature big = curvature_radial(solve_annulus(3, 0.5, 2.0));
  CHECK(small.max_ricci > big.max_ricci);
  double tan_max = -INFINITY;
  for (double x : small.Ric_tan) tan_max = std::max(tan_max, x);
  CHECK(tan_max > 0.0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(solve_annulus(3, 2.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(solve_annulus(3, 2.5, 2.0), PreconditionError);
  RadialOptions opts;
  opts.max_newton = 1;
  try {
    solve_annulus(3, 0.5, 2.0, opts);
    FAIL("expected RadialSolveError");
  } catch (const RadialSolveError& e) {
    CHECK(!e.residual_history().empty());
  }
}

TEST_CASE("csv output") {
  const RadialSolution s = solve_ball(3, 1.0, 4);
  std::ostringstream os;
  write_radial_csv(os, s, curvature_radial(s));
  std::istringstream is(os.str());
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  CHECK(header == "r,v,v',v'',residual,K_rad_tan,K_tan_tan,Ric_rad,Ric_tan");
  CHECK(first.rfind("0,0.5,", 0) == 0);
  int rows = 1;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("truncated ball against the enlarged-ball closed form") {
  // u = M on |x| = 1 is the Poincare profile of the ball of radius
  // rho = m + sqrt(1 + m^2), m = M^(-2/(n-2)); so v_M(0) = rho/2.
  auto exact = [](int n, double M) {
    const double m = std::pow(M, -2.0 / (n - 2));
    return (m + std::sqrt(1.0 + m * m)) / 2.0;
  };
  double prev_gap = 0.0;
  for (double M : {1e2, 1e3, 1e4}) {
    const double v0 = truncated_center_value(3, 1.0, M);
    CHECK(std::abs(v0 - exact(3, M)) <= 1e-9);
    const double gap = v0 - 0.5;
    CHECK(gap > 0.0);
    if (prev_gap > 0.0) CHECK(prev_gap / gap >= 2.0);
    prev_gap = gap;
  }
  const TruncatedRadial t = solve_ball_truncated(4, 2.0, 50.0, 1000);
  CHECK(t.r.front() == 0.0);
  CHECK(t.r.back() == 2.0);
  CHECK(t.u.back() == 50.0);
  for (std::size_t k = 1; k < t.r.size(); ++k) {
    CHECK(t.r[k] > t.r[k - 1]);
    CHECK(t.u[k] >= t.u[k - 1]);
  }
  // rho = 2(m' + sqrt(1 + m'^2)) for radius 2 with m' = m/2
  const double m = 1.0 / 50.0;
  CHECK(truncated_center_value(4, 2.0, 50.0) == doctest::Approx(m / 2.0 + std::sqrt(1.0 + m * m / 4.0)).epsilon(1e-8));
  CHECK_THROWS_AS(solve_ball_truncated(3, 1.0, 1e200), PreconditionError);
}
