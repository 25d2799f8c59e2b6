// Core data model for radially symmetric plurisubharmonic functions.
//
// Everything lives in the logarithmic coordinate s = log|z|^2.  A radial
// function u(z) = v(log|z|^2) is plurisubharmonic exactly when v is convex
// and nondecreasing, so membership tests reduce to slope scans and the
// extremal-function solver reduces to a constrained convex envelope.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace radial {

// Absolute tolerance for slope comparisons; profile slopes are O(1) in
// s-units (the Lelong cap is 1/2).
inline constexpr double kSlopeTol = 1e-10;

inline double log_coord(double r) { return 2.0 * std::log(r); }
inline double radius_of(double s) { return std::exp(0.5 * s); }

inline double pow_int(double x, int n) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= x;
  return acc;
}

// Volume of the unit ball in R^{2n}: pi^n / n!.
inline double ball_volume_2n(int n) {
  double acc = 1.0;
  for (int i = 1; i <= n; ++i) acc *= M_PI / i;
  return acc;
}

// 4^n n! omega_{2n} = (4 pi)^n, the constant relating the ball-mass CDF to
// the n-th power of the profile slope.
inline double cdf_norm(int n) { return pow_int(4.0 * M_PI, n); }

// Total Monge-Ampere mass of a function in L+.
inline double full_mass(int n) { return pow_int(2.0 * M_PI, n); }

// One piece of a radial profile on [s_lo, s_hi]:
//   v(s) = c0 + c1*s + c2*exp(c3*s).
// c2 == 0 is the piecewise-linear base case.  The exponential term carries
// exact closed forms (power weights, measure reconstructions) so that
// envelopes and Monge-Ampere measures stay exact instead of being sampled.
// `run` groups consecutive segments that jointly sample one smooth curve
// (quadrature output, tabulated weights); measure extraction treats a run
// as a density, not as a string of atoms.
struct ProfileSegment {
  double s_lo = 0.0;
  double s_hi = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  int run = -1;

  bool linear() const { return c2 == 0.0; }
  double value(double s) const {
    return c0 + c1 * s + (c2 != 0.0 ? c2 * std::exp(c3 * s) : 0.0);
  }
  double slope(double s) const {
    return c1 + (c2 != 0.0 ? c2 * c3 * std::exp(c3 * s) : 0.0);
  }
  // d^2 v / ds^2; nonnegative iff the piece is convex.
  double curvature(double s) const {
    return c2 != 0.0 ? c2 * c3 * c3 * std::exp(c3 * s) : 0.0;
  }
};

// A radial function v(s) made of contiguous segments, extended linearly on
// both sides: slope `left_slope` on (-inf, s_first] and `right_slope` on
// [s_last, inf).  Structural validity (ordering, continuity, left_slope>=0)
// is enforced at construction; convexity/monotonicity are properties that
// check_class reports, so non-PSH profiles are representable.
class RadialProfile {
 public:
  RadialProfile() = default;  // the constant-zero profile

  // Piecewise-linear profile through the given (s, value) breakpoints.
  static RadialProfile from_breakpoints(std::vector<std::pair<double, double>> bps,
                                        double left_slope, double right_slope);
  static RadialProfile from_segments(std::vector<ProfileSegment> segs,
                                     double left_slope, double right_slope);
  static RadialProfile constant(double c) {
    return from_breakpoints({{0.0, c}}, 0.0, 0.0);
  }

  double value(double s) const;
  // Value at |z| = r; r = 0 returns -inf when the profile is unbounded below.
  double value_at_radius(double r) const;
  double slope_left(double s) const;   // left derivative
  double slope_right(double s) const;  // right derivative

  double left_slope() const { return left_slope_; }
  double right_slope() const { return right_slope_; }
  double s_first() const { return anchor_s_; }
  double s_last() const;
  // Junctions (s, value), including the outer endpoints.
  std::vector<std::pair<double, double>> breakpoints() const;
  const std::vector<ProfileSegment>& segments() const { return segs_; }

  RadialProfile scaled(double lambda) const;
  RadialProfile shifted(double dc) const;

 private:
  std::vector<ProfileSegment> segs_;  // may be empty (single-anchor profile)
  double anchor_s_ = 0.0;             // leftmost breakpoint
  double anchor_v_ = 0.0;
  double left_slope_ = 0.0;
  double right_slope_ = 0.0;
};

struct ClassFlags {
  bool is_psh_radial = false;
  bool in_L = false;
  bool in_L_plus = false;
  bool bounded_below = false;
};

// Slope scan: convex + nondecreasing <=> radially PSH; right slope <= 1/2
// <=> Lelong class L; exactly 1/2 <=> L+; left slope 0 <=> bounded below.
ClassFlags check_class(const RadialProfile& p);

double eval_profile(const RadialProfile& p, double r);

// Multiplies values and slopes by lambda > 0.
RadialProfile scale_profile(const RadialProfile& p, double lambda);

// A radially symmetric compact set: a finite union of closed radius
// intervals [a_i, b_i] (a_i == b_i is a sphere).  A leading a_1 == 0 means a
// closed ball component.
class RadialSet {
 public:
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
  };

  explicit RadialSet(std::vector<Interval> intervals);
  static RadialSet ball(double radius) { return RadialSet({{0.0, radius}}); }
  static RadialSet sphere(double radius) { return RadialSet({{radius, radius}}); }
  static RadialSet shell(double lo, double hi) { return RadialSet({{lo, hi}}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool includes_origin() const { return intervals_.front().lo == 0.0; }
  double max_radius() const { return intervals_.back().hi; }
  bool contains(double r, double tol = 0.0) const;

 private:
  std::vector<Interval> intervals_;
};

// Weight kinds; Q(z) = Qtilde(log|z|^2) on the domain set.
struct ConstantWeight {
  double c = 0.0;
};
struct ScaledLogWeight {  // alpha*log r + c
  double alpha = 0.0;
  double c = 0.0;
};
struct PowerWeight {  // A*r^beta + c
  double A = 0.0;
  double beta = 0.0;
  double c = 0.0;
};
struct TableWeight {  // linear interpolation in s between samples
  std::vector<std::pair<double, double>> samples;
};
struct ScaledProfileWeight {  // lambda * profile(s)
  double lambda = 1.0;
  RadialProfile profile;
};

// One closed-form piece of a weight restricted to an s-interval, in the same
// exp-affine form as ProfileSegment.  `sampled` marks pieces that come from
// tabulated data; `piece_id` identifies the underlying piece so the envelope
// can recognize contact runs.
struct WeightPiece {
  double s_lo = 0.0;
  double s_hi = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  bool sampled = false;
  int piece_id = -1;

  double value(double s) const {
    return c0 + c1 * s + (c2 != 0.0 ? c2 * std::exp(c3 * s) : 0.0);
  }
  double slope(double s) const {
    return c1 + (c2 != 0.0 ? c2 * c3 * std::exp(c3 * s) : 0.0);
  }
  double curvature(double s) const {
    return c2 != 0.0 ? c2 * c3 * c3 * std::exp(c3 * s) : 0.0;
  }
  bool convex() const { return c2 >= 0.0; }
};

class RadialWeight {
 public:
  using Kind = std::variant<ConstantWeight, ScaledLogWeight, PowerWeight,
                            TableWeight, ScaledProfileWeight>;

  RadialWeight(Kind kind, RadialSet domain);

  const RadialSet& domain() const { return domain_; }
  const Kind& kind() const { return kind_; }

  double value_s(double s) const;
  double value_at_radius(double r) const;

  // Closed-form pieces covering [s_lo, s_hi] (clipped).
  std::vector<WeightPiece> pieces_on(double s_lo, double s_hi) const;

  // Radial derivatives for the superharmonicity classifier.  Only available
  // for smooth closed forms (constant / scaled_log / power).
  bool smooth_closed_form() const;
  double dr(double r) const;
  double d2r(double r) const;

  // Weight shifted by an additive constant (same kind family).
  RadialWeight shifted(double dc) const;

  // s below which the weight is flat to within `tol` on an origin-including
  // component; used to truncate the log-image of balls.
  double flat_left_cutoff(double tol) const;

 private:
  Kind kind_;
  RadialSet domain_;
};

}  // namespace radial
