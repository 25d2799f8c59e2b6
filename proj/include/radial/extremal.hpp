// Weighted extremal functions of radial problems.
//
// In s = log|z|^2 coordinates the weighted extremal function V_{K,Q} is the
// largest convex nondecreasing minorant of Qtilde on the log-image of K with
// terminal slope at most 1/2 (global mode), and the relative extremal
// U_{K,Q,Omega} is the same envelope anchored to the value 0 at the boundary
// of Omega with no slope cap.  The solver builds a discrete lower convex
// hull over constraint points, flattens the nonincreasing prefix, applies
// the recession cap or boundary anchor, and then snaps hull edges whose
// endpoints lie in the same convex weight piece back onto the exact piece
// (between two contact points of a convex piece the envelope equals the
// piece itself, so the snap is exact, not a fit).
#pragma once

#include <string>
#include <vector>

#include "radial/core.hpp"
#include "radial/measure.hpp"

namespace radial {

enum class Mode { kGlobal, kRelative };

struct Problem {
  int n = 1;
  RadialSet K;
  RadialWeight Q;
  Mode mode = Mode::kGlobal;
  double omega_radius = 0.0;  // relative mode only; must exceed max radius of K
};

struct GridSpec {
  int points = 40000;  // total constraint-point budget
  double s_min = std::numeric_limits<double>::quiet_NaN();  // auto when NaN
  double s_max = std::numeric_limits<double>::quiet_NaN();
};

struct ContactReport {
  std::vector<double> isolated_radii;
  std::vector<RadialSet::Interval> intervals;
  bool contains(double r, double tol) const;
};

struct Diagnostics {
  int grid_points = 0;
  int hull_vertices = 0;
  int repair_iterations = 0;
  double max_constraint_violation = 0.0;  // max(V - Q) over constraint grid
  bool resolution_ok = true;  // constraint budget met the curvature target
  int required_points = 0;
};

struct Solution {
  RadialProfile V;
  RadialMeasure measure;
  SupportReport support;
  ContactReport contact;
  Diagnostics diagnostics;
  Mode mode = Mode::kGlobal;
  double omega_radius = 0.0;
};

Solution solve_global(const Problem& prob, const GridSpec& grid = {});
Solution solve_relative(const Problem& prob, const GridSpec& grid = {});
Solution solve(const Problem& prob, const GridSpec& grid = {});

// Radii of K where V >= Q - tol, grouped into intervals at grid resolution.
ContactReport contact_set(const Solution& sol, const Problem& prob, double tol);

struct DominationReport {
  bool class_ok = false;       // candidate in L, reference in L+
  bool hypothesis_ok = false;  // candidate <= reference on supp(m)
  bool dominated = false;      // candidate <= reference + tol on the whole grid
  double max_violation = 0.0;
  std::string note;
};

// Executable domination principle: if u <= v on supp((dd^c v)^n) for u in L,
// v in L+, then u <= v everywhere.  Used as the solver's self-check oracle.
DominationReport verify_domination(const RadialProfile& candidate,
                                   const RadialProfile& v, const RadialMeasure& m,
                                   double tol = 1e-10, int grid_points = 20000);

struct AbsContinuity {
  bool m1_ll_m2 = false;
  bool m2_ll_m1 = false;
};

// Set-level absolute-continuity check at radial resolution: m1 << m2 fails
// iff m1 carries mass > tol (an atom or part of a density interval) where m2
// has none of the same type.
AbsContinuity compare_abs_continuity(const RadialMeasure& m1, const RadialMeasure& m2,
                                     double tol);

enum class WeightShape {
  kSuperharmonic,
  kHarmonic,
  kSubharmonic,
  kMaximalPsh,
  kIndefinite,
  kUnsupported,  // tabulated / non-smooth weights
};

struct BoundaryReport {
  WeightShape shape = WeightShape::kUnsupported;
  bool proposition_applies = false;  // superharmonic or maximal-psh interior weight
  bool support_in_boundary = false;
  std::vector<double> boundary_radii;
  std::string note;
};

// Classifies Q on the interior of K via the radial Laplacian sign
// (r^{2n-1} Q'(r))' and, when the boundary-support proposition applies,
// solves the problem and verifies supp subset of the boundary spheres.
BoundaryReport boundary_support_check(const Problem& prob, const GridSpec& grid = {});

}  // namespace radial
