// Fixture registry: the worked examples with known closed forms, used by the
// `gallery` CLI command and by the acceptance suite.  Each fixture solves a
// problem (or runs a reconstruction / glue check) and compares the result
// against the stored closed-form profile, support and masses.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radial/extremal.hpp"
#include "radial/glue.hpp"
#include "radial/reconstruct.hpp"

namespace radial::gallery {

// --- problem builders ----------------------------------------------------
Problem ex1_problem(int n);                       // K = unit ball, Q = max(log r, -1/2) - 1
Problem ex1_relative_problem(int n, double omega);
Problem ex2_problem(int n);                       // Q = (1/2) max(log r, -1/2) - 1/2
Problem ex2_relative_problem(int n);              // omega = e
Problem shell_problem(int n);                     // K = {1 <= r <= e}
Problem quad_ball_problem(int n, double A);       // K = unit ball, Q = A(r^2 - 1)
Problem power_well_problem(int n, double A, double beta);  // Q = A r^beta on unit ball
Problem constant_ball_problem(int n, double c);
Problem spheres_problem(int n, int m, const RadialProfile& prev_V);  // Q_m = V_{m-1}/2

// Solves the inductive spheres chain V_1..V_m for radii 1, 2, 4, ..., 2^{m-1}.
std::vector<Solution> solve_spheres_chain(int n, int m, const GridSpec& grid = {});

// --- closed-form expectations (dimension-free, in s = log|z|^2) -----------
double ex1_expected(double s);
double ex1_relative2_expected(double s);
double ex1_relative_e_expected(double s);
double ex2_expected(double s);
double ex2_relative_e_expected(double s);
double shell_expected(double s);
double quad_ball_expected(double A, double s);
double superharmonic_expected(double s);  // Q = -r^2 (or -r^4): max(s/2,0) - 1
double spheres_expected(int m, double s);

// Components of the truncated countable-union measure (spheres alternating
// with shells), each of total mass (2 pi)^n.
std::vector<RadialMeasure> union_components(int n, int k);
RadialMeasure union_measure(int n, int k);  // weights 2^{-i}, i = 1..k

double profile_sup_error(const RadialProfile& V, const std::function<double(double)>& want,
                         double s_lo, double s_hi, int pts = 10000);

// --- gallery driver --------------------------------------------------------
struct Outcome {
  std::string name;
  bool pass = false;
  double profile_err = 0.0;   // sup error vs the closed form (when applicable)
  double support_err = 0.0;   // worst support mismatch in radius units
  double mass_err = 0.0;      // relative mass error (when applicable)
  double wall_ms = 0.0;
  bool resolution_ok = true;
  std::string detail;
  std::shared_ptr<Problem> problem;    // set for solver fixtures
  std::shared_ptr<Solution> solution;  // set for solver fixtures
};

std::vector<std::string> fixture_names();
Outcome run_fixture(const std::string& name, const GridSpec& grid, std::uint64_t seed);

struct GalleryResult {
  std::vector<Outcome> outcomes;
  bool all_pass = true;
  double wall_ms = 0.0;
};

// Runs every fixture (concurrently; merged in registry order).
GalleryResult run_all(const GridSpec& grid, std::uint64_t seed);

}  // namespace radial::gallery
