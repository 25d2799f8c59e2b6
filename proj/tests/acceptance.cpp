// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is pinned here; nothing is calibrated at run
// time.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "radial/gallery.hpp"

using namespace radial;
namespace gal = radial::gallery;

namespace {

constexpr std::uint64_t kSeed = 20250809;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --- criterion 1: gallery closed-form reproduction -------------------------
void criterion1() {
  const std::vector<std::string> names = {
      "example1-global", "example1-relative-B2", "example1-relative-Be",
      "example2-global", "example2-relative-Be", "shell",
      "spheres-m1",      "spheres-m2",           "spheres-m3",
      "spheres-m4",      "quad-ball-A0.3",       "quad-ball-A0.5"};
  bool pass = true;
  double worst_profile = 0.0, worst_support = 0.0, slowest = 0.0;
  std::string bad;
  for (const auto& nm : names) {
    gal::Outcome out = gal::run_fixture(nm, GridSpec{}, kSeed);
    worst_profile = std::max(worst_profile, out.profile_err);
    worst_support = std::max(worst_support, out.support_err);
    slowest = std::max(slowest, out.wall_ms);
    bool fixture_ok = out.pass && out.profile_err <= 1e-6 && out.wall_ms < 1000.0;
    if (!fixture_ok) {
      pass = false;
      bad += " " + nm + (out.detail.empty() ? "" : " (" + out.detail + ")");
    }
  }
  std::ostringstream os;
  os << "gallery closed forms: sup profile err " << worst_profile << ", support err "
     << worst_support << ", slowest fixture " << slowest << " ms";
  if (!pass) os << "; failing:" << bad;
  report(1, pass, os.str());
}

// --- criterion 2: total Monge-Ampere mass (2 pi)^n --------------------------
void criterion2() {
  bool pass = true;
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<Problem> probs = {
        gal::ex1_problem(n),          gal::ex2_problem(n),
        gal::shell_problem(n),        gal::quad_ball_problem(n, 0.3),
        gal::quad_ball_problem(n, 0.5), gal::power_well_problem(n, -1.0, 2.0),
        gal::constant_ball_problem(n, 0.25)};
    for (const auto& prob : probs) {
      Solution sol = solve_global(prob);
      worst = std::max(worst,
                       std::fabs(sol.measure.total_mass() - full_mass(n)) / full_mass(n));
    }
    Solution m4 = gal::solve_spheres_chain(n, 4).back();
    worst = std::max(worst,
                     std::fabs(m4.measure.total_mass() - full_mass(n)) / full_mass(n));
  }
  // L+ profiles in the corpus: normalized random measures reconstruct into L+
  SplitMix64 rng(kSeed);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + it % 4;
    RadialMeasure m = oracles::random_admissible_measure(rng, n, true);
    RadialProfile u = reconstruct(m, 0.0);
    if (!check_class(u).in_L_plus) {
      pass = false;
      continue;
    }
    worst = std::max(worst,
                     std::fabs(ma_cdf(u, n).total_mass() - full_mass(n)) / full_mass(n));
  }
  pass = pass && worst <= 1e-8;
  std::ostringstream os;
  os << "mass normalization over n in {1..4}: worst relative error " << worst;
  report(2, pass, os.str());
}

// --- criterion 3: forward/inverse round trips -------------------------------
void criterion3() {
  SplitMix64 rng(kSeed + 3);
  bool pass = true;
  double worst_cdf = 0.0, worst_atom = 0.0, worst_profile = 0.0;
  for (int it = 0; it < 200; ++it) {
    int n = 1 + it % 4;
    RadialMeasure m = oracles::random_admissible_measure(rng, n, it % 3 == 0);
    double u0 = rng.uniform(-1.0, 1.0);
    RadialProfile u = reconstruct(m, u0);
    if (!check_class(u).is_psh_radial) pass = false;
    RadialMeasure back = ma_cdf(u, n);
    worst_cdf = std::max(worst_cdf, cdf_sup_distance(m, back, 10000));
    if (back.atoms().size() != m.atoms().size()) {
      pass = false;
    } else {
      for (std::size_t i = 0; i < m.atoms().size(); ++i) {
        worst_atom = std::max(worst_atom, std::fabs(back.atoms()[i].r - m.atoms()[i].r));
        worst_atom =
            std::max(worst_atom, std::fabs(back.atoms()[i].mass - m.atoms()[i].mass));
      }
    }
    // inverse direction: reconstruct the measure of the profile we just built
    RadialProfile again = reconstruct(back, u0);
    double base = again.value(u.s_first()) - u.value(u.s_first());
    for (int j = 0; j <= 400; ++j) {
      double s = u.s_first() - 2.0 + (u.s_last() - u.s_first() + 6.0) * j / 400.0;
      worst_profile =
          std::max(worst_profile, std::fabs(again.value(s) - u.value(s) - base));
    }
  }
  pass = pass && worst_cdf <= 1e-8 && worst_atom <= 1e-8 && worst_profile <= 1e-8;
  std::ostringstream os;
  os << "200 measure round trips: CDF sup " << worst_cdf << ", atom err " << worst_atom
     << ", profile err " << worst_profile;
  report(3, pass, os.str());
}

// --- criterion 4: S_w subset of S_w* ----------------------------------------
void criterion4() {
  bool pass = true;
  int checked = 0, exceptions = 0;
  auto check_sol = [&](const Solution& sol, double max_r) {
    ++checked;
    if (!oracles::support_in_contact(sol, 1e-6 * std::max(1.0, max_r))) {
      ++exceptions;
      pass = false;
    }
  };
  for (const auto& nm :
       {"example1-global", "example1-relative-B2", "example1-relative-Be",
        "example2-global", "example2-relative-Be", "shell", "spheres-m4",
        "quad-ball-A0.3", "quad-ball-A0.5", "superharmonic-r2"}) {
    gal::Outcome out = gal::run_fixture(nm, GridSpec{}, kSeed);
    if (out.solution) check_sol(*out.solution, out.problem->K.max_radius());
  }
  SplitMix64 rng(kSeed + 4);
  GridSpec grid;
  grid.points = 150000;
  for (int it = 0; it < 100; ++it) {
    Problem prob = oracles::random_problem(rng, 1 + it % 3);
    if (rng.uniform() < 0.3) prob = oracles::make_relative(prob, rng);
    Solution sol = solve(prob, grid);
    check_sol(sol, prob.K.max_radius());
  }
  std::ostringstream os;
  os << "support within contact set on " << checked << " problems, " << exceptions
     << " exceptions";
  report(4, pass, os.str());
}

// --- criterion 5: absolute-continuity counterexamples -----------------------
void criterion5() {
  int n = 2;
  Solution rel1 = solve_relative(gal::ex1_relative_problem(n, 2.0));
  Solution glob1 = solve_global(gal::ex1_problem(n));
  AbsContinuity ex1 =
      compare_abs_continuity(rel1.measure, glob1.measure, default_atom_tol(n));
  Solution glob2 = solve_global(gal::ex2_problem(n));
  Solution rel2 = solve_relative(gal::ex2_relative_problem(n));
  AbsContinuity ex2 =
      compare_abs_continuity(glob2.measure, rel2.measure, default_atom_tol(n));
  bool pass = !ex1.m1_ll_m2 && ex1.m2_ll_m1 && !ex2.m1_ll_m2 && ex2.m2_ll_m1;
  std::ostringstream os;
  os << "mutual absolute continuity: example 1 pair {" << ex1.m1_ll_m2 << ", "
     << ex1.m2_ll_m1 << "}, example 2 pair {" << ex2.m1_ll_m2 << ", " << ex2.m2_ll_m1
     << "} (want {0, 1} twice)";
  report(5, pass, os.str());
}

// --- criterion 6: gluing verification ---------------------------------------
void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  const long samples = 100000;
  bool pass = true;
  std::ostringstream os;

  C1Radial inner{[](double r) { return 0.5 * (r * r - 1.0); }, [](double r) { return r; }};
  C1Radial outer{[](double r) { return std::log(r); }, [](double r) { return 1.0 / r; }};
  GlueCheck chk = radial_glue_check(inner, outer, 1.0);
  SubmeanReport quad =
      submean_check(glue_radial(2, 1.0, inner, outer), samples, 1e-3, 0.05, kSeed);
  pass = pass && chk.continuous && chk.derivative_ok && std::fabs(chk.margin) <= 1e-12 &&
         quad.violations == 0;

  DiscGlueResult disc = disc_reflection_glue(HarmonicExpansion{0.0, {0.5}, {}});
  SubmeanReport discrep;
  if (disc.accepted) discrep = submean_check(disc.g, samples, 1e-3, 0.05, kSeed + 1);
  pass = pass && disc.accepted && discrep.violations == 0;

  C1Radial steep{[](double r) { return 0.6 * (r * r - 1.0); },
                 [](double r) { return 1.2 * r; }};
  GlueCheck chk_bad = radial_glue_check(steep, outer, 1.0);
  SubmeanReport bad =
      submean_check(glue_radial(2, 1.0, steep, outer), samples, 1e-3, 0.05, kSeed + 2);
  pass = pass && chk_bad.continuous && !chk_bad.derivative_ok && bad.violations >= 1;

  double ms = ms_since(t0);
  pass = pass && ms < 30000.0;
  os << "glue checks: threshold margin " << chk.margin << ", violations "
     << quad.violations << "/" << discrep.violations << "/" << bad.violations
     << " (want 0/0/>=1), worst margins " << quad.worst_margin << "/"
     << discrep.worst_margin << "/" << bad.worst_margin << ", " << ms << " ms";
  report(6, pass, os.str());
}

// --- criterion 7: superharmonic weights push mass to the boundary -----------
void criterion7() {
  int n = 2;
  bool pass = true;
  std::ostringstream os;
  struct Case {
    const char* name;
    Problem prob;
    WeightShape want;
  };
  std::vector<Case> cases;
  cases.push_back({"-r^2", gal::power_well_problem(n, -1.0, 2.0),
                   WeightShape::kSuperharmonic});
  cases.push_back({"-r^4", gal::power_well_problem(n, -1.0, 4.0),
                   WeightShape::kSuperharmonic});
  cases.push_back({"const", gal::constant_ball_problem(n, -0.3),
                   WeightShape::kMaximalPsh});
  for (const auto& c : cases) {
    BoundaryReport rep = boundary_support_check(c.prob);
    bool ok = rep.shape == c.want && rep.proposition_applies && rep.support_in_boundary;
    pass = pass && ok;
    os << c.name << (ok ? " on" : " OFF") << " boundary; ";
  }
  BoundaryReport sub = boundary_support_check(gal::quad_ball_problem(n, 0.3));
  Solution subsol = solve_global(gal::quad_ball_problem(n, 0.3));
  bool full_ball = sub.shape == WeightShape::kSubharmonic && !sub.proposition_applies &&
                   subsol.support.density_intervals.size() == 1 &&
                   subsol.support.density_intervals[0].hi >= 1.0 - 1e-6 &&
                   subsol.support.density_intervals[0].lo <= 1e-4;
  pass = pass && full_ball;
  os << "subharmonic quadratic fills the ball: " << (full_ball ? "yes" : "no");
  report(7, pass, os.str());
}

// --- criterion 8: executable domination principle ---------------------------
void criterion8() {
  bool pass = true;
  double worst = 0.0;
  long competitor_checks = 0;
  SplitMix64 rng(kSeed + 8);

  std::vector<std::string> global_names = {"example1-global", "example2-global",
                                           "shell",           "spheres-m4",
                                           "quad-ball-A0.3",  "quad-ball-A0.5",
                                           "superharmonic-r2"};
  for (const auto& nm : global_names) {
    gal::Outcome out = gal::run_fixture(nm, GridSpec{}, kSeed);
    const Solution& sol = *out.solution;
    DominationReport self = verify_domination(sol.V, sol.V, sol.measure);
    if (!self.dominated) pass = false;
    for (int it = 0; it < 100; ++it) {
      RadialProfile u = oracles::random_L_profile(rng);
      if (!check_class(u).in_L) continue;
      double shift = -std::numeric_limits<double>::infinity();
      for (const auto& a : sol.measure.atoms())
        if (a.r > 0.0)
          shift = std::max(shift, u.value(log_coord(a.r)) - sol.V.value(log_coord(a.r)));
      for (const auto& iv : sol.support.density_intervals)
        shift = std::max(shift, oracles::gap_max(u, sol.V, log_coord(iv.lo),
                                                 log_coord(iv.hi)));
      DominationReport rep = verify_domination(u.shifted(-shift), sol.V, sol.measure);
      ++competitor_checks;
      worst = std::max(worst, rep.max_violation);
      if (!rep.dominated || rep.max_violation > 1e-10) pass = false;
    }
  }

  std::vector<std::string> relative_names = {"example1-relative-B2",
                                             "example1-relative-Be",
                                             "example2-relative-Be"};
  for (const auto& nm : relative_names) {
    gal::Outcome out = gal::run_fixture(nm, GridSpec{}, kSeed);
    const Solution& sol = *out.solution;
    for (int it = 0; it < 100; ++it) {
      RadialProfile u = oracles::random_L_profile(rng);
      double v = oracles::relative_domination_violation(u, sol, sol.V.s_first() - 4.0);
      ++competitor_checks;
      worst = std::max(worst, v);
      if (v > 1e-10) pass = false;
    }
  }
  std::ostringstream os;
  os << "domination self-checks on " << (global_names.size() + relative_names.size())
     << " fixtures, " << competitor_checks << " competitors, worst violation " << worst;
  report(8, pass, os.str());
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d of 8 criteria passed (%.1f s)\n", 8 - g_failures,
              ms_since(t0) / 1000.0);
  return g_failures == 0 ? 0 : 1;
}
