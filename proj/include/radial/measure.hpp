// Monge-Ampere measures of radial profiles, encoded by the ball-mass CDF
// f(t) = mu(B(0,t)).
//
// For a convex nondecreasing profile v(s) the CDF is
//   f(t) = (4 pi)^n * v'(log t^2)^n          (right derivative),
// so slope jumps of the profile become atoms on spheres, linear pieces carry
// no mass, and exp-affine pieces produce exact power-form density segments.
#pragma once

#include <variant>
#include <vector>

#include "radial/core.hpp"

namespace radial {

struct Atom {
  double r = 0.0;  // r == 0 encodes mass at the origin
  double mass = 0.0;
};

// Density segment with closed-form CDF: on [t_lo, t_hi] the accumulated mass
// is scale * [ (a + b t^g)^n - (a + b t_lo^g)^n ], strictly increasing.
struct PowerPiece {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double a = 0.0;
  double b = 0.0;
  double g = 1.0;
  double scale = 1.0;
};

// Density segment tabulated at radii t[0..m]: cum[j] is the mass accumulated
// on (t[0], t[j]].  Used for sampled (quadrature / tabulated-weight) pieces,
// which are reported as one density segment rather than as sample-level atoms.
struct TablePiece {
  std::vector<double> t;
  std::vector<double> cum;  // same length as t, cum[0] == 0, nondecreasing
};

using MeasurePiece = std::variant<PowerPiece, TablePiece>;

class RadialMeasure {
 public:
  RadialMeasure() = default;  // the zero measure in dimension 1
  RadialMeasure(int n, std::vector<Atom> atoms, std::vector<MeasurePiece> pieces);
  static RadialMeasure zero(int n) { return RadialMeasure(n, {}, {}); }
  // The template measures behind the sphere / shell constructions: total mass
  // (2 pi)^n on the sphere of radius r, or spread over [lo, hi] with
  // f(t) = ((2 pi / (hi - lo)) (t - lo))^n.
  static RadialMeasure sphere(int n, double r);
  static RadialMeasure shell(int n, double lo, double hi);

  int dimension() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<MeasurePiece>& pieces() const { return pieces_; }

  // Right-continuous CDF f(t) = mu(B(0,t)).
  double cdf(double t) const;
  double total_mass() const;
  double origin_mass() const;
  RadialMeasure scaled(double w) const;

 private:
  int n_ = 1;
  std::vector<Atom> atoms_;          // sorted by radius
  std::vector<MeasurePiece> pieces_; // sorted by t_lo; overlaps allowed (mixtures)
};

struct SupportReport {
  std::vector<double> atoms;                          // sorted radii
  std::vector<RadialSet::Interval> density_intervals; // sorted, disjoint
  double origin_mass = 0.0;
};

// Default atom threshold separating genuine kinks from float noise.
inline double default_atom_tol(int n) { return 1e-9 * full_mass(n); }

// Forward map: profile -> measure.  Requires check_class(p).is_psh_radial.
RadialMeasure ma_cdf(const RadialProfile& p, int n);

SupportReport support(const RadialMeasure& m, double tol);
inline SupportReport support(const RadialMeasure& m) {
  return support(m, default_atom_tol(m.dimension()));
}

double total_mass(const RadialMeasure& m);

// Max |f1 - f2| on a uniform radius grid refined at atom radii.
double cdf_sup_distance(const RadialMeasure& a, const RadialMeasure& b, int grid_points);

}  // namespace radial
