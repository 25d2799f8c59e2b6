#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "radial/gallery.hpp"
#include "radial/glue.hpp"

using namespace radial;

namespace {

C1Radial quad_inside(double A, double R) {
  return {[A, R](double r) { return A * (r * r - R * R); },
          [A](double r) { return 2.0 * A * r; }};
}

C1Radial log_outside(double R) {
  return {[R](double r) { return std::log(r / R); }, [](double r) { return 1.0 / r; }};
}

GluedFunction log_plus_glued(int n) {
  C1Radial inner{[](double) { return 0.0; }, [](double) { return 0.0; }};
  C1Radial outer{[](double r) { return std::log(r); }, [](double r) { return 1.0 / r; }};
  return glue_radial(n, 1.0, inner, outer);
}

}  // namespace

TEST_CASE("radial_glue_check at the quadratic-ball threshold") {
  // matching normal derivatives: 2AR = 1/R exactly when 2AR^2 = 1
  for (double R : {0.5, 1.0, 2.0}) {
    double A = 1.0 / (2.0 * R * R);
    GlueCheck chk = radial_glue_check(quad_inside(A, R), log_outside(R), R);
    CHECK(chk.continuous);
    CHECK(chk.derivative_ok);
    CHECK(chk.margin == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("a function glues trivially against itself") {
  C1Radial f{[](double r) { return r * r; }, [](double r) { return 2.0 * r; }};
  GlueCheck chk = radial_glue_check(f, f, 1.3);
  CHECK(chk.continuous);
  CHECK(chk.derivative_ok);
  CHECK(chk.margin == doctest::Approx(0.0));
}

TEST_CASE("an over-steep inside is rejected by the derivative criterion") {
  double R = 1.0, A = 0.6;  // 2 A R^2 = 1.2
  GlueCheck chk = radial_glue_check(quad_inside(A, R), log_outside(R), R);
  CHECK(chk.continuous);
  CHECK_FALSE(chk.derivative_ok);
  CHECK(chk.margin == doctest::Approx(1.0 - 1.2).epsilon(1e-12));
}

TEST_CASE("discontinuous pairs get no derivative verdict") {
  C1Radial inner{[](double) { return 0.0; }, [](double) { return 0.0; }};
  C1Radial outer{[](double) { return 1.0; }, [](double) { return 0.0; }};
  GlueCheck chk = radial_glue_check(inner, outer, 1.0);
  CHECK_FALSE(chk.continuous);
  CHECK(chk.mismatch == doctest::Approx(1.0));
  CHECK_FALSE(chk.derivative_ok);
}

TEST_CASE("disc reflection of a constant gives c + log+|z|") {
  HarmonicExpansion h{0.75, {}, {}};
  DiscGlueResult res = disc_reflection_glue(h);
  REQUIRE(res.accepted);
  CHECK(res.worst_abs == doctest::Approx(0.0));
  for (double rho : {0.3, 1.0, 2.0, 7.0}) {
    std::complex<double> z[1] = {std::polar(rho, 1.1)};
    double want = 0.75 + std::max(0.0, std::log(rho));
    CHECK(res.g.eval(z) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("disc reflection accepts |a| = 1/2 and rejects a = 1") {
  SUBCASE("h = Re(z)/2 sits exactly at the bound") {
    HarmonicExpansion h{0.0, {0.5}, {}};
    DiscGlueResult res = disc_reflection_glue(h);
    CHECK(res.accepted);
    CHECK(res.worst_abs == doctest::Approx(0.5).epsilon(1e-9));
    // g is continuous across the unit circle
    for (double theta : {0.0, 0.9, 2.4}) {
      std::complex<double> in[1] = {std::polar(1.0 - 1e-10, theta)};
      std::complex<double> out[1] = {std::polar(1.0 + 1e-10, theta)};
      CHECK(res.g.eval(in) == doctest::Approx(res.g.eval(out)).epsilon(1e-8));
    }
  }
  SUBCASE("h = Re(z) violates the bound at theta = 0") {
    HarmonicExpansion h{0.0, {1.0}, {}};
    DiscGlueResult res = disc_reflection_glue(h);
    CHECK_FALSE(res.accepted);
    CHECK(res.worst_abs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(std::remainder(res.worst_theta, 2.0 * M_PI)) <= 1e-3);
  }
}

TEST_CASE("the reflected function approaches log|z| + h(0) far away") {
  HarmonicExpansion h{0.2, {0.5}, {}};
  DiscGlueResult res = disc_reflection_glue(h);
  REQUIRE(res.accepted);
  for (double rho : {10.0, 31.6, 100.0}) {
    for (double theta : {0.0, 1.0, 2.5}) {
      std::complex<double> z[1] = {std::polar(rho, theta)};
      CHECK(std::fabs(res.g.eval(z) - std::log(rho) - h.a0) <= 0.5 / rho + 1e-12);
    }
  }
}

TEST_CASE("submean_check finds no violations for known PSH functions") {
  SUBCASE("log+|z| in two complex variables") {
    SubmeanReport rep = submean_check(log_plus_glued(2), 10000, 1e-3, 0.05, 99);
    CHECK(rep.samples == 10000);
    CHECK(rep.violations == 0);
  }
  SUBCASE("the quadratic-ball glue at threshold") {
    GluedFunction g = glue_radial(2, 1.0, quad_inside(0.5, 1.0), log_outside(1.0));
    SubmeanReport rep = submean_check(g, 10000, 1e-3, 0.05, 99);
    CHECK(rep.violations == 0);
  }
  SUBCASE("the two-sphere extremal profile from the solver") {
    Solution sol = gallery::solve_spheres_chain(2, 2).back();
    RadialProfile V = sol.V;
    C1Radial inner = curve_from_profile_left(V);
    C1Radial outer = curve_from_profile_right(V);
    GlueCheck chk = radial_glue_check(inner, outer, 2.0);
    CHECK(chk.continuous);
    CHECK(chk.derivative_ok);
    GluedFunction g = glue_radial(2, 2.0, inner, outer);
    SubmeanReport rep = submean_check(g, 10000, 1e-3, 0.1, 7);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("submean_check detects the over-steep glue") {
  GluedFunction g = glue_radial(2, 1.0, quad_inside(0.6, 1.0), log_outside(1.0));
  SubmeanReport rep = submean_check(g, 10000, 1e-3, 0.05, 99);
  CHECK(rep.violations >= 1);
  CHECK(rep.worst_margin > 1e-9);
  // the worst center sits near the interface sphere
  double r = 0.0;
  for (const auto& c : rep.worst.center) r += std::norm(c);
  r = std::sqrt(r);
  CHECK(r == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("submean_check is deterministic for a fixed seed") {
  GluedFunction g = log_plus_glued(1);
  SubmeanReport a = submean_check(g, 5000, 1e-3, 0.05, 1234);
  SubmeanReport b = submean_check(g, 5000, 1e-3, 0.05, 1234);
  CHECK(a.violations == b.violations);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst.rho == b.worst.rho);
  SubmeanReport c = submean_check(g, 5000, 1e-3, 0.05, 4321);
  CHECK(c.worst_margin != a.worst_margin);
}

TEST_CASE("submean_check validates its sample count") {
  CHECK_THROWS_AS(submean_check(log_plus_glued(1), 0, 1e-3, 0.05, 1), std::domain_error);
}

TEST_CASE("radial glue acceptance implies no submean violations on gallery glues") {
  // cross-validation on the solver outputs whose interfaces are genuine kinks
  struct Case {
    Solution sol;
    double R;
  };
  std::vector<Case> cases;
  cases.push_back({solve_global(gallery::ex1_problem(2)), std::exp(-0.5)});
  cases.push_back({solve_global(gallery::quad_ball_problem(2, 0.3)), 1.0});
  for (const auto& c : cases) {
    C1Radial inner = curve_from_profile_left(c.sol.V);
    C1Radial outer = curve_from_profile_right(c.sol.V);
    GlueCheck chk = radial_glue_check(inner, outer, c.R);
    CHECK(chk.continuous);
    CHECK(chk.derivative_ok);
    GluedFunction g = glue_radial(2, c.R, inner, outer);
    SubmeanReport rep = submean_check(g, 10000, 1e-3, 0.05, 31);
    CHECK(rep.violations == 0);
  }
}
