// Executable checks for gluing plurisubharmonic functions along a sphere:
// the normal-derivative criterion at a radial interface, the unit-disc
// harmonic reflection h(1/conj(z)) + log|z|, and a seeded Monte Carlo
// verifier of the sub-mean-value inequality on circles in complex lines.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "radial/core.hpp"

namespace radial {

// A C^1 radial function presented by value and radial derivative.
struct C1Radial {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

C1Radial curve_from_weight(const RadialWeight& w);
// One-sided curves from a profile (derivatives at kinks differ by side).
C1Radial curve_from_profile_left(const RadialProfile& p);
C1Radial curve_from_profile_right(const RadialProfile& p);

struct GlueCheck {
  bool continuous = false;
  bool derivative_ok = false;
  double margin = 0.0;  // outer derivative minus inner derivative at R
  double mismatch = 0.0;
};

// Normal-derivative criterion at |z| = R: glue is PSH iff
// d(inner)/dr (R-) <= d(outer)/dr (R+).
GlueCheck radial_glue_check(const C1Radial& inner, const C1Radial& outer, double R);

// A function on C^n glued across the sphere |z| = R.
struct GluedFunction {
  int n = 1;
  double R = 1.0;
  std::function<double(std::span<const std::complex<double>>)> inner;
  std::function<double(std::span<const std::complex<double>>)> outer;

  double eval(std::span<const std::complex<double>> z) const;
};

GluedFunction glue_radial(int n, double R, const C1Radial& inner, const C1Radial& outer);

// Finite real-trigonometric expansion of a harmonic function on the disc:
// h(rho, theta) = a0 + sum_k rho^k (a_k cos k theta + b_k sin k theta).
struct HarmonicExpansion {
  double a0 = 0.0;
  std::vector<double> ak;
  std::vector<double> bk;

  double eval(double rho, double theta) const;
  double boundary_normal_derivative(double theta) const;
};

struct DiscGlueResult {
  bool accepted = false;
  double worst_theta = 0.0;
  double worst_abs = 0.0;  // max |dh/dn| over the boundary sampling
  GluedFunction g;
};

// Builds g = h on the closed disc, h(1/conj(z)) + log|z| outside, provided
// sup |dh/dn| <= 1/2 on the circle (checked on 10^4 boundary samples).
DiscGlueResult disc_reflection_glue(const HarmonicExpansion& h);

struct SubmeanSample {
  std::vector<std::complex<double>> center;
  std::vector<std::complex<double>> direction;
  double rho = 0.0;
  double margin = 0.0;  // value(center) - circle average
};

struct SubmeanReport {
  long samples = 0;
  long violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  SubmeanSample worst;
};

// Draws `samples` (center, complex line, circle radius) triples concentrated
// near the interface, averages g over each circle with a 512-node trapezoid
// rule, and counts violations of g(center) <= average + 1e-9.  Deterministic
// for a fixed seed; batches merge by count/max so the result is independent
// of batch scheduling.
SubmeanReport submean_check(const GluedFunction& g, long samples, double rho_min,
                            double rho_max, std::uint64_t seed);

}  // namespace radial
