#include "radial/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace radial {

namespace {

struct PieceSpan {
  double lo, hi;
  const PowerPiece* power;  // null for table pieces
  double scale;
};

double nth_root(double x, int n) {
  if (x <= 0.0) return 0.0;
  return n == 1 ? x : std::pow(x, 1.0 / n);
}

// Adaptive Simpson with an absolute tolerance and an evaluation budget.
class Quadrature {
 public:
  Quadrature(std::function<double(double)> f, long budget)
      : f_(std::move(f)), budget_(budget) {}

  double integrate(double a, double b, double tol) {
    double fa = eval(a), fm = eval(0.5 * (a + b)), fb = eval(b);
    return simpson(a, b, fa, fm, fb, tol, 48);
  }

 private:
  double eval(double x) {
    if (--budget_ < 0)
      throw std::runtime_error("quadrature evaluation budget exhausted");
    return f_(x);
  }

  double simpson(double a, double b, double fa, double fm, double fb, double tol,
                 int depth) {
    double m = 0.5 * (a + b);
    double fl = eval(0.5 * (a + m));
    double fr = eval(0.5 * (m + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    return simpson(a, m, fa, fl, fm, 0.5 * tol, depth - 1) +
           simpson(m, b, fm, fr, fb, 0.5 * tol, depth - 1);
  }

  std::function<double(double)> f_;
  long budget_;
};

}  // namespace

AdmissibilityReport admissible(const RadialMeasure& m) {
  AdmissibilityReport rep;
  if (m.origin_mass() > 0.0) {
    rep.admissible = false;
    rep.diagnostic =
        "f(0+) > 0: an origin atom makes the integral of f(t)^{1/n}/t diverge near 0";
    return rep;
  }
  // Every representable density piece has f(t) = O(t^g) with g > 0 near its
  // left end, so with no origin mass the near-origin integral converges.
  rep.admissible = true;
  rep.diagnostic = "convergent near the origin";
  return rep;
}

RadialProfile reconstruct(const RadialMeasure& m, double u0,
                          const ReconstructOptions& opt) {
  auto adm = admissible(m);
  if (!adm.admissible) throw std::domain_error("inadmissible measure: " + adm.diagnostic);
  const int n = m.dimension();
  const double norm = cdf_norm(n);

  // Critical radii: every place where the CDF structure can change.
  std::vector<double> crit;
  for (const auto& a : m.atoms()) crit.push_back(a.r);
  std::vector<PieceSpan> spans;
  for (const auto& p : m.pieces()) {
    if (const auto* pp = std::get_if<PowerPiece>(&p)) {
      crit.push_back(pp->t_lo);
      crit.push_back(pp->t_hi);
      spans.push_back({pp->t_lo, pp->t_hi, pp, pp->scale});
    } else {
      const auto& tp = std::get<TablePiece>(p);
      for (double t : tp.t) crit.push_back(t);
      spans.push_back({tp.t.front(), tp.t.back(), nullptr, 1.0});
    }
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end(),
                         [](double a, double b) {
                           return std::fabs(a - b) <= 1e-14 * std::max(1.0, std::fabs(a));
                         }),
             crit.end());

  if (crit.empty()) return RadialProfile::constant(u0);

  std::vector<ProfileSegment> segs;
  double v_acc = u0;
  int run_counter = 0;

  auto push_linear = [&](double s_lo, double s_hi, double k, int run = -1) {
    ProfileSegment seg;
    seg.s_lo = s_lo;
    seg.s_hi = s_hi;
    seg.c1 = k;
    seg.c0 = v_acc - k * s_lo;
    seg.run = run;
    segs.push_back(seg);
    v_acc = seg.value(s_hi);
  };

  auto quadrature_region = [&](double s_lo, double s_hi) {
    auto slope_at = [&](double sigma) {
      return nth_root(m.cdf(radius_of(sigma)) / norm, n);
    };
    // The CDF is right-continuous, so the slope at the region's right end is
    // the limit from below (an atom sitting exactly at the end must not leak
    // into this region).
    double k_start = slope_at(s_lo);
    double k_end = nth_root(m.cdf(std::nextafter(radius_of(s_hi), 0.0)) / norm, n);

    // Cell count from an estimate of the slope curvature, so the sampled
    // profile stays within ~1e-9 of the true one.
    double span = s_hi - s_lo;
    double max_dd = 0.0;
    int probe = 32;
    double prev_k = slope_at(s_lo), prev2 = 0.0;
    for (int i = 1; i <= probe; ++i) {
      double k = slope_at(s_lo + span * i / probe);
      if (i >= 2) max_dd = std::max(max_dd, std::fabs(k - 2 * prev_k + prev2));
      prev2 = prev_k;
      prev_k = k;
    }
    double h_probe = span / probe;
    double curv = max_dd / (h_probe * h_probe);
    int cells = static_cast<int>(std::ceil(span * std::sqrt(curv / 8e-9)));
    cells = std::clamp(cells, 16, 20000);

    // Narrow terminal cells carry the exact endpoint slopes so the junction
    // to the neighboring region shows no sampling-induced kink (which would
    // otherwise be reported as a spurious atom).
    int run = run_counter++;
    double eps = std::min(1e-9, 1e-3 * span / cells);
    push_linear(s_lo, s_lo + eps, k_start, run);
    Quadrature quad(slope_at, opt.max_evals_per_segment);
    double s = s_lo + eps;
    for (int i = 0; i < cells; ++i) {
      double s_next = s_lo + (span - 2.0 * eps) * (i + 1) / cells + eps;
      double dv = quad.integrate(s, s_next, opt.quad_abs_tol / cells);
      push_linear(s, s_next, dv / (s_next - s), run);
      s = s_next;
    }
    push_linear(s, s_hi, k_end, run);
  };

  for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
    double x = crit[i];
    double y = crit[i + 1];
    double mid = 0.5 * (x + y);
    double f_mid = m.cdf(mid);
    if (f_mid <= 0.0) continue;  // still no mass: profile stays flat at u0

    double s_hi = log_coord(y);
    double s_lo;
    bool origin_region = (x == 0.0);
    // Active spans fully covering (x, y).
    std::vector<const PieceSpan*> active;
    for (const auto& sp : spans)
      if (sp.lo <= x + 1e-14 * std::max(1.0, x) && sp.hi >= y - 1e-14 * std::max(1.0, y))
        active.push_back(&sp);

    double f_x = origin_region ? 0.0 : m.cdf(x);
    bool closed_form = false;
    if (!opt.force_quadrature && active.size() == 1 && active[0]->power != nullptr) {
      const PowerPiece& pp = *active[0]->power;
      double base = pp.a + pp.b * std::pow(std::max(x, 0.0), pp.g);
      double pure = pp.scale * pow_int(base, n);
      if (std::fabs(f_x - pure) <= 1e-12 * std::max(1.0, f_x)) {
        // f(t) = scale (a + b t^g)^n on the whole region: exact segment
        double w = nth_root(pp.scale, n);
        double A = w * pp.a;
        double B = w * pp.b;
        ProfileSegment seg;
        seg.c1 = A / (4.0 * M_PI);
        seg.c3 = 0.5 * pp.g;
        seg.c2 = B / (4.0 * M_PI * seg.c3);
        if (origin_region) {
          // A must be 0 here (f(0+)=0): truncate where the exp term is dust
          s_lo = (std::log(1e-16 * std::max(1.0, std::fabs(v_acc) + 1.0) /
                           std::max(std::fabs(seg.c2), 1e-300))) /
                 seg.c3;
          s_lo = std::min(s_lo, s_hi - 1.0);
        } else {
          s_lo = log_coord(x);
        }
        seg.s_lo = s_lo;
        seg.s_hi = s_hi;
        seg.c0 = v_acc - seg.c1 * s_lo - seg.c2 * std::exp(seg.c3 * s_lo);
        segs.push_back(seg);
        v_acc = seg.value(s_hi);
        closed_form = true;
      }
    }
    if (!closed_form) {
      if (active.empty()) {
        // constant CDF: linear (maximal) stretch
        push_linear(log_coord(x), s_hi, nth_root(f_x / norm, n));
      } else if (origin_region) {
        // No closed form down to t = 0: push the lower quadrature limit
        // toward the origin dyadically until the remaining chunk is dust
        // (the chunks decay geometrically for power-behaved CDFs).
        auto slope_at = [&](double sigma) {
          return nth_root(m.cdf(radius_of(sigma)) / norm, n);
        };
        double y_k = y;
        double s_cut = log_coord(y);
        for (int k = 0; k < 400; ++k) {
          double x_k = 0.5 * y_k;
          Quadrature quad(slope_at, opt.max_evals_per_segment);
          double dv = quad.integrate(log_coord(x_k), log_coord(y_k), opt.quad_abs_tol);
          s_cut = log_coord(x_k);
          y_k = x_k;
          if (dv < 1e-13 * std::max(1.0, std::fabs(u0) + std::fabs(v_acc))) break;
        }
        quadrature_region(s_cut, s_hi);
      } else {
        quadrature_region(log_coord(x), s_hi);
      }
    }
  }

  double total = m.total_mass();
  double right = nth_root(total / norm, n);

  if (segs.empty()) {
    // pure atoms: breakpoints at atom radii with ideal slopes
    std::vector<std::pair<double, double>> bps;
    double v = u0;
    double prev_s = 0.0;
    double prev_k = 0.0;
    bool first = true;
    for (const auto& a : m.atoms()) {
      double s = log_coord(a.r);
      if (!first) v += prev_k * (s - prev_s);
      bps.emplace_back(s, v);
      prev_k = nth_root(m.cdf(a.r) / norm, n);
      prev_s = s;
      first = false;
    }
    return RadialProfile::from_breakpoints(bps, 0.0, right);
  }
  return RadialProfile::from_segments(std::move(segs), 0.0, right);
}

RadialMeasure mixture(const std::vector<RadialMeasure>& components,
                      const std::vector<double>& weights) {
  if (components.empty() || components.size() != weights.size())
    throw std::domain_error("mixture needs matching nonempty components and weights");
  int n = components.front().dimension();
  double wsum = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].dimension() != n)
      throw std::domain_error("mixture components must share the dimension");
    if (!(weights[i] > 0.0)) throw std::domain_error("mixture weights must be positive");
    wsum += weights[i];
  }
  if (wsum > 1.0 + 1e-12)
    throw std::domain_error("mixture weights must sum to at most 1");

  std::vector<Atom> atoms;
  std::vector<MeasurePiece> pieces;
  for (std::size_t i = 0; i < components.size(); ++i) {
    RadialMeasure scaled = components[i].scaled(weights[i]);
    for (const auto& a : scaled.atoms()) {
      bool merged = false;
      for (auto& b : atoms) {
        if (std::fabs(a.r - b.r) <= 1e-12 * std::max(1.0, a.r)) {
          b.mass += a.mass;
          merged = true;
          break;
        }
      }
      if (!merged) atoms.push_back(a);
    }
    for (const auto& p : scaled.pieces()) pieces.push_back(p);
  }
  return RadialMeasure(n, std::move(atoms), std::move(pieces));
}

}  // namespace radial
