#include "radial/gallery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

namespace radial::gallery {

namespace {

constexpr double kProfileTol = 1e-6;
constexpr double kMassTol = 1e-8;

RadialProfile ex1_weight_profile() {
  // max(s/2, -1/2) - 1 in s-coordinates
  return RadialProfile::from_breakpoints({{-1.0, -1.5}, {0.0, -1.0}}, 0.0, 0.5);
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct SupportExpectation {
  std::vector<double> atoms;
  std::vector<double> atom_masses;  // empty = unchecked
  std::vector<RadialSet::Interval> intervals;
};

// Worst radius mismatch between the observed support and the expectation;
// +inf on a structural mismatch.  An expected interval starting at 0 matches
// any observed start below the origin cutoff.
double match_support(const SupportReport& got, const SupportExpectation& want,
                     double atom_mass_rel_tol, std::string& detail) {
  const double inf = std::numeric_limits<double>::infinity();
  if (got.atoms.size() != want.atoms.size()) {
    detail = "atom count " + std::to_string(got.atoms.size()) + " != " +
             std::to_string(want.atoms.size());
    return inf;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < want.atoms.size(); ++i)
    worst = std::max(worst, std::fabs(got.atoms[i] - want.atoms[i]));
  if (got.density_intervals.size() != want.intervals.size()) {
    detail = "density interval count " + std::to_string(got.density_intervals.size()) +
             " != " + std::to_string(want.intervals.size());
    return inf;
  }
  for (std::size_t i = 0; i < want.intervals.size(); ++i) {
    const auto& g = got.density_intervals[i];
    const auto& w = want.intervals[i];
    worst = std::max(worst, std::fabs(g.hi - w.hi));
    if (w.lo == 0.0) {
      if (g.lo > 0.05) {
        detail = "density interval does not reach the origin cutoff";
        return inf;
      }
    } else {
      worst = std::max(worst, std::fabs(g.lo - w.lo));
    }
  }
  (void)atom_mass_rel_tol;
  return worst;
}

double match_atom_masses(const RadialMeasure& m, const SupportExpectation& want) {
  if (want.atom_masses.empty()) return 0.0;
  double worst = 0.0;
  std::size_t j = 0;
  for (const auto& a : m.atoms()) {
    if (a.r == 0.0 || a.mass <= default_atom_tol(m.dimension())) continue;
    if (j >= want.atom_masses.size()) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::fabs(a.mass - want.atom_masses[j]) /
                                std::max(1.0, want.atom_masses[j]));
    ++j;
  }
  if (j != want.atom_masses.size()) return std::numeric_limits<double>::infinity();
  return worst;
}

Outcome solver_fixture(const std::string& name, const Problem& prob, const GridSpec& grid,
                       const std::function<double(double)>& expected, double s_lo,
                       double s_hi, const SupportExpectation& want,
                       double expected_total_mass) {
  Outcome out;
  out.name = name;
  auto t0 = std::chrono::steady_clock::now();
  out.problem = std::make_shared<Problem>(prob);
  Solution sol = solve(prob, grid);
  out.solution = std::make_shared<Solution>(std::move(sol));
  out.wall_ms = wall_ms_since(t0);
  out.resolution_ok = out.solution->diagnostics.resolution_ok;

  out.profile_err = profile_sup_error(out.solution->V, expected, s_lo, s_hi);
  out.support_err = match_support(out.solution->support, want, 1e-9, out.detail);
  double mass = out.solution->measure.total_mass();
  out.mass_err = std::fabs(mass - expected_total_mass) / expected_total_mass;
  double atom_mass_err = match_atom_masses(out.solution->measure, want);

  double cell = 1e-6 * std::max(1.0, prob.K.max_radius());
  out.pass = out.resolution_ok && out.profile_err <= kProfileTol &&
             out.support_err <= std::max(cell, 1e-9) && out.mass_err <= kMassTol &&
             atom_mass_err <= 1e-8;
  if (!out.resolution_ok)
    out.detail = "constraint budget below the curvature target (" +
                 std::to_string(out.solution->diagnostics.grid_points) + " of " +
                 std::to_string(out.solution->diagnostics.required_points) + " points)";
  else if (!out.pass && out.detail.empty()) {
    std::ostringstream os;
    os << "profile_err=" << out.profile_err << " support_err=" << out.support_err
       << " mass_err=" << out.mass_err << " atom_mass_err=" << atom_mass_err;
    out.detail = os.str();
  }
  return out;
}

}  // namespace

Problem ex1_problem(int n) {
  return {n, RadialSet::ball(1.0),
          RadialWeight(ScaledProfileWeight{1.0, ex1_weight_profile()}, RadialSet::ball(1.0)),
          Mode::kGlobal, 0.0};
}

Problem ex1_relative_problem(int n, double omega) {
  Problem p = ex1_problem(n);
  p.mode = Mode::kRelative;
  p.omega_radius = omega;
  return p;
}

Problem ex2_problem(int n) {
  return {n, RadialSet::ball(1.0),
          RadialWeight(ScaledProfileWeight{0.5, ex1_weight_profile()}, RadialSet::ball(1.0)),
          Mode::kGlobal, 0.0};
}

Problem ex2_relative_problem(int n) {
  Problem p = ex2_problem(n);
  p.mode = Mode::kRelative;
  p.omega_radius = std::exp(1.0);
  return p;
}

Problem shell_problem(int n) {
  // Q(s) = (e^{s/2} - s/2) / (e - 1) on the log-image [0, 2] of the shell
  const double R = std::exp(1.0);
  const double d = R - 1.0;
  ProfileSegment seg;
  seg.s_lo = 0.0;
  seg.s_hi = 2.0;
  seg.c0 = 0.0;
  seg.c1 = -0.5 / d;
  seg.c2 = 1.0 / d;
  seg.c3 = 0.5;
  RadialProfile q = RadialProfile::from_segments({seg}, 0.0, seg.slope(2.0));
  RadialSet K = RadialSet::shell(1.0, R);
  return {n, K, RadialWeight(ScaledProfileWeight{1.0, q}, K), Mode::kGlobal, 0.0};
}

Problem quad_ball_problem(int n, double A) {
  RadialSet K = RadialSet::ball(1.0);
  return {n, K, RadialWeight(PowerWeight{A, 2.0, -A}, K), Mode::kGlobal, 0.0};
}

Problem power_well_problem(int n, double A, double beta) {
  RadialSet K = RadialSet::ball(1.0);
  return {n, K, RadialWeight(PowerWeight{A, beta, 0.0}, K), Mode::kGlobal, 0.0};
}

Problem constant_ball_problem(int n, double c) {
  RadialSet K = RadialSet::ball(1.0);
  return {n, K, RadialWeight(ConstantWeight{c}, K), Mode::kGlobal, 0.0};
}

Problem spheres_problem(int n, int m, const RadialProfile& prev_V) {
  double rm = std::pow(2.0, m - 1);
  RadialSet K = RadialSet::ball(rm);
  return {n, K, RadialWeight(ScaledProfileWeight{0.5, prev_V}, K), Mode::kGlobal, 0.0};
}

std::vector<Solution> solve_spheres_chain(int n, int m, const GridSpec& grid) {
  std::vector<Solution> chain;
  {
    RadialSet K = RadialSet::ball(1.0);
    Problem p1{n, K, RadialWeight(ConstantWeight{0.0}, K), Mode::kGlobal, 0.0};
    chain.push_back(solve_global(p1, grid));
  }
  for (int k = 2; k <= m; ++k)
    chain.push_back(solve_global(spheres_problem(n, k, chain.back().V), grid));
  return chain;
}

double ex1_expected(double s) { return std::max(0.5 * s, -0.5) - 1.0; }

double ex1_relative2_expected(double s) {
  return std::max(ex1_expected(s), s / (2.0 * std::log(2.0)) - 1.0);
}

double ex1_relative_e_expected(double s) { return ex1_expected(s); }

double ex2_expected(double s) {
  return std::max(0.5 * ex1_expected(s), 0.5 * s - 0.5);
}

double ex2_relative_e_expected(double s) { return 0.5 * ex1_expected(s); }

double shell_expected(double s) {
  const double d = std::exp(1.0) - 1.0;
  if (s <= 0.0) return 1.0 / d;
  if (s >= 2.0) return 0.5 * s;
  return (std::exp(0.5 * s) - 0.5 * s) / d;
}

double quad_ball_expected(double A, double s) {
  if (s >= 0.0) return 0.5 * s;
  return A * (std::exp(s) - 1.0);
}

double superharmonic_expected(double s) { return std::max(0.5 * s, 0.0) - 1.0; }

double spheres_expected(int m, double s) {
  if (m == 1) return std::max(0.5 * s, 0.0);
  double sm = 2.0 * (m - 1) * std::log(2.0);
  if (s <= sm) return 0.5 * spheres_expected(m - 1, s);
  return 0.5 * s + 0.5 * spheres_expected(m - 1, sm) - (m - 1) * std::log(2.0);
}

std::vector<RadialMeasure> union_components(int n, int k) {
  std::vector<RadialMeasure> comps;
  for (int i = 0; i < k; ++i) {
    double base = 1.0 + 1.5 * (i / 2);
    if (i % 2 == 0)
      comps.push_back(RadialMeasure::sphere(n, base));
    else
      comps.push_back(RadialMeasure::shell(n, base + 0.5, base + 1.0));
  }
  return comps;
}

RadialMeasure union_measure(int n, int k) {
  std::vector<double> weights;
  for (int i = 1; i <= k; ++i) weights.push_back(std::pow(0.5, i));
  return mixture(union_components(n, k), weights);
}

double profile_sup_error(const RadialProfile& V, const std::function<double(double)>& want,
                         double s_lo, double s_hi, int pts) {
  double worst = 0.0;
  for (int i = 0; i <= pts; ++i) {
    double s = s_lo + (s_hi - s_lo) * i / pts;
    worst = std::max(worst, std::fabs(V.value(s) - want(s)));
  }
  return worst;
}

namespace {

const double kE = std::exp(1.0);
const double kRootE = std::exp(-0.5);

Outcome run_ex1(const GridSpec& grid) {
  int n = 2;
  SupportExpectation want{{kRootE}, {full_mass(n)}, {}};
  return solver_fixture("example1-global", ex1_problem(n), grid,
                        [](double s) { return ex1_expected(s); }, -6.0, 2.0, want,
                        full_mass(n));
}

Outcome run_ex1_rel2(const GridSpec& grid) {
  int n = 2;
  double k = 1.0 / (2.0 * std::log(2.0));
  double mass1 = cdf_norm(n) * (pow_int(k, n) - pow_int(0.5, n));
  SupportExpectation want{{kRootE, 1.0}, {full_mass(n), mass1}, {}};
  double total = cdf_norm(n) * pow_int(k, n);
  return solver_fixture("example1-relative-B2", ex1_relative_problem(n, 2.0), grid,
                        [](double s) { return ex1_relative2_expected(s); }, -6.0,
                        std::log(4.0), want, total);
}

Outcome run_ex1_rel_e(const GridSpec& grid) {
  int n = 2;
  SupportExpectation want{{kRootE}, {full_mass(n)}, {}};
  return solver_fixture("example1-relative-Be", ex1_relative_problem(n, kE), grid,
                        [](double s) { return ex1_relative_e_expected(s); }, -6.0, 2.0,
                        want, full_mass(n));
}

Outcome run_ex2(const GridSpec& grid) {
  int n = 2;
  double m1 = full_mass(n) * pow_int(0.5, n);
  SupportExpectation want{{kRootE, 1.0}, {m1, full_mass(n) - m1}, {}};
  return solver_fixture("example2-global", ex2_problem(n), grid,
                        [](double s) { return ex2_expected(s); }, -6.0, 2.0, want,
                        full_mass(n));
}

Outcome run_ex2_rel(const GridSpec& grid) {
  int n = 2;
  double m1 = cdf_norm(n) * pow_int(0.25, n);
  SupportExpectation want{{kRootE}, {m1}, {}};
  return solver_fixture("example2-relative-Be", ex2_relative_problem(n), grid,
                        [](double s) { return ex2_relative_e_expected(s); }, -6.0, 2.0,
                        want, m1);
}

Outcome run_compare(const std::string& name, const GridSpec& grid, bool example1) {
  Outcome out;
  out.name = name;
  auto t0 = std::chrono::steady_clock::now();
  int n = 2;
  AbsContinuity got;
  if (example1) {
    Solution rel = solve_relative(ex1_relative_problem(n, 2.0), grid);
    Solution glob = solve_global(ex1_problem(n), grid);
    got = compare_abs_continuity(rel.measure, glob.measure, default_atom_tol(n));
  } else {
    Solution glob = solve_global(ex2_problem(n), grid);
    Solution rel = solve_relative(ex2_relative_problem(n), grid);
    got = compare_abs_continuity(glob.measure, rel.measure, default_atom_tol(n));
  }
  out.wall_ms = wall_ms_since(t0);
  out.pass = !got.m1_ll_m2 && got.m2_ll_m1;
  if (!out.pass)
    out.detail = std::string("expected {false, true}, got {") +
                 (got.m1_ll_m2 ? "true" : "false") + ", " +
                 (got.m2_ll_m1 ? "true" : "false") + "}";
  return out;
}

Outcome run_spheres(int m, const GridSpec& grid) {
  Outcome out;
  out.name = "spheres-m" + std::to_string(m);
  int n = 2;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Solution> chain = solve_spheres_chain(n, m, grid);
  Solution& sol = chain.back();
  out.wall_ms = wall_ms_since(t0);
  out.resolution_ok = sol.diagnostics.resolution_ok;

  SupportExpectation want;
  for (int i = 1; i <= m; ++i) {
    want.atoms.push_back(std::pow(2.0, i - 1));
    double k_hi = std::pow(2.0, i - m - 1);
    double k_lo = i == 1 ? 0.0 : std::pow(2.0, i - m - 2);
    want.atom_masses.push_back(cdf_norm(n) * (pow_int(k_hi, n) - pow_int(k_lo, n)));
  }
  out.profile_err = profile_sup_error(
      sol.V, [m](double s) { return spheres_expected(m, s); }, -6.0,
      2.0 * m * std::log(2.0) + 2.0);
  out.support_err = match_support(sol.support, want, 1e-9, out.detail);
  out.mass_err = std::fabs(sol.measure.total_mass() - full_mass(n)) / full_mass(n);
  double am_err = match_atom_masses(sol.measure, want);
  out.pass = out.resolution_ok && out.profile_err <= kProfileTol &&
             out.support_err <= 1e-6 && out.mass_err <= kMassTol && am_err <= 1e-8;
  out.problem = std::make_shared<Problem>(
      m == 1 ? constant_ball_problem(n, 0.0)
             : spheres_problem(n, m, chain[chain.size() - 2].V));
  out.solution = std::make_shared<Solution>(std::move(sol));
  if (!out.pass && out.detail.empty()) {
    std::ostringstream os;
    os << "profile_err=" << out.profile_err << " support_err=" << out.support_err
       << " mass_err=" << out.mass_err << " atom_mass_err=" << am_err;
    out.detail = os.str();
  }
  return out;
}

Outcome run_shell(const GridSpec& grid) {
  int n = 2;
  SupportExpectation want{{}, {}, {{1.0, kE}}};
  return solver_fixture("shell", shell_problem(n), grid,
                        [](double s) { return shell_expected(s); }, -4.0, 4.0, want,
                        full_mass(n));
}

Outcome run_quad(double A, const GridSpec& grid) {
  int n = 2;
  SupportExpectation want;
  want.intervals = {{0.0, 1.0}};
  if (2.0 * A < 1.0) {
    want.atoms = {1.0};
    want.atom_masses = {full_mass(n) * (1.0 - pow_int(2.0 * A, n))};
  }
  std::ostringstream nm;
  nm << "quad-ball-A" << A;
  return solver_fixture(nm.str(), quad_ball_problem(n, A), grid,
                        [A](double s) { return quad_ball_expected(A, s); }, -20.0, 2.0,
                        want, full_mass(n));
}

Outcome run_superharmonic(const GridSpec& grid) {
  int n = 2;
  SupportExpectation want{{1.0}, {full_mass(n)}, {}};
  return solver_fixture("superharmonic-r2", power_well_problem(n, -1.0, 2.0), grid,
                        [](double s) { return superharmonic_expected(s); }, -8.0, 2.0,
                        want, full_mass(n));
}

Outcome run_disc_reflection(std::uint64_t seed) {
  Outcome out;
  out.name = "disc-reflection";
  auto t0 = std::chrono::steady_clock::now();
  HarmonicExpansion h{0.0, {0.5}, {}};
  DiscGlueResult res = disc_reflection_glue(h);
  bool ok = res.accepted && std::fabs(res.worst_abs - 0.5) <= 1e-9;
  // far field: g - log|z| approaches h(0); here h(0) = a0 = 0
  double far_err = 0.0;
  if (ok) {
    for (double rho : {10.0, 31.6, 100.0}) {
      std::complex<double> z[1] = {std::polar(rho, 0.7)};
      double bound = 0.5 / rho + 1e-12;
      far_err = std::max(far_err, std::fabs(res.g.eval(z) - std::log(rho)) - bound);
    }
    ok = ok && far_err <= 0.0;
  }
  SubmeanReport rep;
  if (ok) {
    rep = submean_check(res.g, 20000, 1e-3, 0.05, seed);
    ok = rep.violations == 0;
  }
  out.wall_ms = wall_ms_since(t0);
  out.pass = ok;
  if (!ok) {
    std::ostringstream os;
    os << "accepted=" << res.accepted << " worst|dh/dn|=" << res.worst_abs
       << " violations=" << rep.violations << " worst_margin=" << rep.worst_margin;
    out.detail = os.str();
  }
  return out;
}

GluedFunction quad_ball_glue(int n, double A) {
  C1Radial inner{[A](double r) { return A * (r * r - 1.0); },
                 [A](double r) { return 2.0 * A * r; }};
  C1Radial outer{[](double r) { return std::log(r); }, [](double r) { return 1.0 / r; }};
  return glue_radial(n, 1.0, inner, outer);
}

Outcome run_quad_glue(bool oversteep, std::uint64_t seed) {
  Outcome out;
  out.name = oversteep ? "quad-glue-oversteep" : "quad-glue-threshold";
  auto t0 = std::chrono::steady_clock::now();
  double A = oversteep ? 0.6 : 0.5;  // 2 A R^2 = 1 at the threshold for R = 1
  C1Radial inner{[A](double r) { return A * (r * r - 1.0); },
                 [A](double r) { return 2.0 * A * r; }};
  C1Radial outer{[](double r) { return std::log(r); }, [](double r) { return 1.0 / r; }};
  GlueCheck chk = radial_glue_check(inner, outer, 1.0);
  SubmeanReport rep = submean_check(quad_ball_glue(2, A), 20000, 1e-3, 0.05, seed);
  out.wall_ms = wall_ms_since(t0);
  if (oversteep) {
    out.pass = chk.continuous && !chk.derivative_ok && rep.violations >= 1;
  } else {
    out.pass = chk.continuous && chk.derivative_ok && std::fabs(chk.margin) <= 1e-12 &&
               rep.violations == 0;
  }
  if (!out.pass) {
    std::ostringstream os;
    os << "continuous=" << chk.continuous << " derivative_ok=" << chk.derivative_ok
       << " margin=" << chk.margin << " violations=" << rep.violations;
    out.detail = os.str();
  }
  return out;
}

Outcome run_union(const GridSpec&) {
  Outcome out;
  out.name = "countable-union-k8";
  auto t0 = std::chrono::steady_clock::now();
  const int n = 2, k = 8;
  RadialMeasure mu = union_measure(n, k);
  double expected_total = full_mass(n) * (1.0 - std::pow(0.5, k));
  double mass_err = std::fabs(mu.total_mass() - expected_total) / expected_total;

  RadialProfile u = reconstruct(mu, 0.0);
  ClassFlags flags = check_class(u);
  RadialMeasure back = ma_cdf(u, n);
  SupportReport sup = support(back);

  SupportExpectation want;
  for (int i = 0; i < k; ++i) {
    double base = 1.0 + 1.5 * (i / 2);
    if (i % 2 == 0)
      want.atoms.push_back(base);
    else
      want.intervals.push_back({base + 0.5, base + 1.0});
  }
  std::string detail;
  double serr = match_support(sup, want, 0.0, detail);
  // atom masses go through the quadrature path, so compare loosely
  double am_err = 0.0;
  std::size_t ai = 0;
  for (const auto& a : back.atoms()) {
    if (a.mass <= default_atom_tol(n)) continue;
    double expect = full_mass(n) * std::pow(0.5, 2.0 * ai + 1.0);
    am_err = std::max(am_err, std::fabs(a.mass - expect) / expect);
    ++ai;
  }
  double back_total_err = std::fabs(back.total_mass() - expected_total) / expected_total;

  out.wall_ms = wall_ms_since(t0);
  out.mass_err = mass_err;
  out.support_err = serr;
  out.pass = mass_err <= kMassTol && back_total_err <= kMassTol && serr <= 1e-6 &&
             am_err <= 5e-3 && flags.is_psh_radial && flags.bounded_below && flags.in_L &&
             !flags.in_L_plus;
  if (!out.pass) {
    std::ostringstream os;
    os << detail << " mass_err=" << mass_err << " back_total_err=" << back_total_err
       << " support_err=" << serr << " atom_mass_err=" << am_err
       << " in_L=" << flags.in_L << " in_L_plus=" << flags.in_L_plus;
    out.detail = os.str();
  }
  return out;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"example1-global",     "example1-relative-B2", "example1-relative-Be",
          "example1-compare",    "example2-global",      "example2-relative-Be",
          "example2-compare",    "spheres-m1",           "spheres-m2",
          "spheres-m3",          "spheres-m4",           "shell",
          "quad-ball-A0.3",      "quad-ball-A0.5",       "superharmonic-r2",
          "disc-reflection",     "quad-glue-threshold",  "quad-glue-oversteep",
          "countable-union-k8"};
}

Outcome run_fixture(const std::string& name, const GridSpec& grid, std::uint64_t seed) {
  if (name == "example1-global") return run_ex1(grid);
  if (name == "example1-relative-B2") return run_ex1_rel2(grid);
  if (name == "example1-relative-Be") return run_ex1_rel_e(grid);
  if (name == "example1-compare") return run_compare(name, grid, true);
  if (name == "example2-global") return run_ex2(grid);
  if (name == "example2-relative-Be") return run_ex2_rel(grid);
  if (name == "example2-compare") return run_compare(name, grid, false);
  if (name == "spheres-m1") return run_spheres(1, grid);
  if (name == "spheres-m2") return run_spheres(2, grid);
  if (name == "spheres-m3") return run_spheres(3, grid);
  if (name == "spheres-m4") return run_spheres(4, grid);
  if (name == "shell") return run_shell(grid);
  if (name == "quad-ball-A0.3") return run_quad(0.3, grid);
  if (name == "quad-ball-A0.5") return run_quad(0.5, grid);
  if (name == "superharmonic-r2") return run_superharmonic(grid);
  if (name == "disc-reflection") return run_disc_reflection(seed);
  if (name == "quad-glue-threshold") return run_quad_glue(false, seed);
  if (name == "quad-glue-oversteep") return run_quad_glue(true, seed);
  if (name == "countable-union-k8") return run_union(grid);
  Outcome out;
  out.name = name;
  out.detail = "unknown fixture";
  return out;
}

GalleryResult run_all(const GridSpec& grid, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  GalleryResult res;
  std::vector<std::string> names = fixture_names();
  std::vector<std::future<Outcome>> futs;
  futs.reserve(names.size());
  for (const auto& nm : names)
    futs.push_back(std::async(std::launch::async,
                              [&, nm] { return run_fixture(nm, grid, seed); }));
  for (auto& f : futs) {
    res.outcomes.push_back(f.get());
    res.all_pass = res.all_pass && res.outcomes.back().pass;
  }
  res.wall_ms = wall_ms_since(t0);
  return res;
}

}  // namespace radial::gallery
