// Inverse map: from a radially symmetric measure back to the radial
// plurisubharmonic function generating it,
//   u(r) = u(0) + integral_0^r (2/t) (f(t)/(4 pi)^n)^{1/n} dt,
// valid when the near-origin integral converges (no mass at the origin).
// Power-form CDF segments integrate in closed form; anything else goes
// through adaptive quadrature in s-coordinates.
#pragma once

#include <string>
#include <vector>

#include "radial/measure.hpp"

namespace radial {

struct AdmissibilityReport {
  bool admissible = false;
  std::string diagnostic;
};

AdmissibilityReport admissible(const RadialMeasure& m);

struct ReconstructOptions {
  double quad_abs_tol = 1e-10;
  long max_evals_per_segment = 1000000;
  bool force_quadrature = false;  // test hook: skip the closed-form path
};

// Throws std::domain_error when the measure is inadmissible.
RadialProfile reconstruct(const RadialMeasure& m, double u0,
                          const ReconstructOptions& opt = {});

// Weighted sum of component measures.  Weights must be positive and sum to
// at most 1 (+1e-12); a sum strictly below 1 represents a truncated series
// and the caller reports the mass deficit.
RadialMeasure mixture(const std::vector<RadialMeasure>& components,
                      const std::vector<double>& weights);

}  // namespace radial
