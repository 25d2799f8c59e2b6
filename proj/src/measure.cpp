#include "radial/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radial {

namespace {

double piece_lo(const MeasurePiece& p) {
  if (const auto* pp = std::get_if<PowerPiece>(&p)) return pp->t_lo;
  return std::get<TablePiece>(p).t.front();
}

double piece_hi(const MeasurePiece& p) {
  if (const auto* pp = std::get_if<PowerPiece>(&p)) return pp->t_hi;
  return std::get<TablePiece>(p).t.back();
}

double piece_cdf(const MeasurePiece& p, double t, int n) {
  if (const auto* pp = std::get_if<PowerPiece>(&p)) {
    if (t < pp->t_lo) return 0.0;
    double tc = std::min(t, pp->t_hi);
    double base = pp->a + pp->b * std::pow(pp->t_lo, pp->g);
    double val = pp->a + pp->b * std::pow(tc, pp->g);
    return pp->scale * (pow_int(val, n) - pow_int(base, n));
  }
  const auto& tp = std::get<TablePiece>(p);
  if (t < tp.t.front()) return 0.0;
  if (t >= tp.t.back()) return tp.cum.back();
  auto it = std::upper_bound(tp.t.begin(), tp.t.end(), t);
  return tp.cum[static_cast<std::size_t>(it - tp.t.begin()) - 1];
}

double piece_mass(const MeasurePiece& p, int n) {
  return piece_cdf(p, piece_hi(p), n);
}

void validate_piece(const MeasurePiece& p, int n) {
  if (const auto* pp = std::get_if<PowerPiece>(&p)) {
    if (!(pp->t_lo >= 0.0 && pp->t_lo < pp->t_hi))
      throw std::invalid_argument("power piece needs 0 <= t_lo < t_hi");
    if (pp->g == 0.0) throw std::invalid_argument("power piece exponent must be nonzero");
    if (pp->t_lo == 0.0 && pp->g < 0.0)
      throw std::invalid_argument("power piece reaching the origin needs g > 0");
    if (pp->scale < 0.0) throw std::invalid_argument("piece scale must be >= 0");
    double vlo = pp->a + pp->b * std::pow(pp->t_lo, pp->g);
    double vhi = pp->a + pp->b * std::pow(pp->t_hi, pp->g);
    if (vlo < -1e-12 || vhi < vlo - 1e-12)
      throw std::invalid_argument("power piece CDF must be nonnegative and nondecreasing");
    (void)n;
  } else {
    const auto& tp = std::get<TablePiece>(p);
    if (tp.t.size() < 2 || tp.cum.size() != tp.t.size())
      throw std::invalid_argument("table piece needs matching t/cum arrays");
    if (tp.cum.front() != 0.0) throw std::invalid_argument("table piece cum[0] must be 0");
    for (std::size_t i = 0; i + 1 < tp.t.size(); ++i) {
      if (!(tp.t[i] < tp.t[i + 1]) || tp.cum[i] > tp.cum[i + 1] + 1e-15)
        throw std::invalid_argument("table piece must be increasing");
    }
  }
}

}  // namespace

RadialMeasure::RadialMeasure(int n, std::vector<Atom> atoms,
                             std::vector<MeasurePiece> pieces)
    : n_(n), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  if (n_ < 1) throw std::invalid_argument("dimension must be >= 1");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.r < b.r; });
  for (const auto& a : atoms_) {
    if (a.r < 0.0) throw std::invalid_argument("atom radius must be >= 0");
    if (a.mass < 0.0) throw std::invalid_argument("atom mass must be >= 0");
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const MeasurePiece& a, const MeasurePiece& b) { return piece_lo(a) < piece_lo(b); });
  for (const auto& p : pieces_) validate_piece(p, n_);
}

RadialMeasure RadialMeasure::sphere(int n, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be > 0");
  return RadialMeasure(n, {{r, full_mass(n)}}, {});
}

RadialMeasure RadialMeasure::shell(int n, double lo, double hi) {
  if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("shell needs 0 < lo < hi");
  PowerPiece p;
  p.t_lo = lo;
  p.t_hi = hi;
  p.b = 2.0 * M_PI / (hi - lo);
  p.a = -p.b * lo;
  p.g = 1.0;
  return RadialMeasure(n, {}, {p});
}

double RadialMeasure::cdf(double t) const {
  double f = 0.0;
  for (const auto& a : atoms_)
    if (a.r <= t) f += a.mass;
  for (const auto& p : pieces_) f += piece_cdf(p, t, n_);
  return f;
}

double RadialMeasure::total_mass() const {
  double f = 0.0;
  for (const auto& a : atoms_) f += a.mass;
  for (const auto& p : pieces_) f += piece_mass(p, n_);
  return f;
}

double RadialMeasure::origin_mass() const {
  double f = 0.0;
  for (const auto& a : atoms_)
    if (a.r == 0.0) f += a.mass;
  return f;
}

RadialMeasure RadialMeasure::scaled(double w) const {
  if (w < 0.0) throw std::domain_error("measure scale must be >= 0");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= w;
  std::vector<MeasurePiece> pieces = pieces_;
  for (auto& p : pieces) {
    if (auto* pp = std::get_if<PowerPiece>(&p)) {
      pp->scale *= w;
    } else {
      for (auto& c : std::get<TablePiece>(p).cum) c *= w;
    }
  }
  return RadialMeasure(n_, std::move(atoms), std::move(pieces));
}

RadialMeasure ma_cdf(const RadialProfile& p, int n) {
  ClassFlags flags = check_class(p);
  if (!flags.is_psh_radial)
    throw std::domain_error("ma_cdf requires a convex nondecreasing profile");

  const double norm = cdf_norm(n);
  std::vector<Atom> atoms;
  std::vector<MeasurePiece> pieces;

  auto add_atom = [&](double s, double k_minus, double k_plus) {
    // slope gaps at rounding scale are junction dust, not kinks
    if (k_plus - k_minus <= 1e-13 * std::max(1.0, std::fabs(k_plus))) return;
    double mass = norm * (pow_int(k_plus, n) - pow_int(k_minus, n));
    if (mass > 0.0) atoms.push_back({radius_of(s), mass});
  };

  if (p.left_slope() > kSlopeTol)
    atoms.push_back({0.0, norm * pow_int(p.left_slope(), n)});

  double prev_slope = p.left_slope();
  const auto& segs = p.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    bool run_start = seg.run >= 0 && (i == 0 || segs[i - 1].run != seg.run);
    bool in_run = seg.run >= 0 && !run_start;
    if (!in_run) add_atom(seg.s_lo, prev_slope, seg.slope(seg.s_lo));

    if (seg.run >= 0) {
      if (run_start) {
        // collect the whole sampled run into one table piece
        TablePiece tp;
        tp.t.push_back(radius_of(seg.s_lo));
        tp.cum.push_back(0.0);
        double base = pow_int(segs[i].slope(seg.s_lo), n);
        std::size_t j = i;
        for (; j < segs.size() && segs[j].run == seg.run; ++j) {
          double k_hi = segs[j].slope(segs[j].s_hi);
          tp.t.push_back(radius_of(segs[j].s_hi));
          tp.cum.push_back(norm * (pow_int(k_hi, n) - base));
          // interior junction mass is absorbed into the next sample's cum
          if (j + 1 < segs.size() && segs[j + 1].run == seg.run)
            tp.cum.back() = norm * (pow_int(segs[j + 1].slope(segs[j + 1].s_lo), n) - base);
        }
        // make cum nondecreasing against float dust
        for (std::size_t k = 1; k < tp.cum.size(); ++k)
          tp.cum[k] = std::max(tp.cum[k], tp.cum[k - 1]);
        if (tp.cum.back() > 0.0) pieces.push_back(tp);
      }
    } else if (!seg.linear()) {
      PowerPiece pp;
      pp.t_lo = radius_of(seg.s_lo);
      pp.t_hi = radius_of(seg.s_hi);
      pp.a = 4.0 * M_PI * seg.c1;
      pp.b = 4.0 * M_PI * seg.c2 * seg.c3;
      pp.g = 2.0 * seg.c3;
      if (pow_int(pp.a + pp.b * std::pow(pp.t_hi, pp.g), n) -
              pow_int(pp.a + pp.b * std::pow(pp.t_lo, pp.g), n) >
          0.0)
        pieces.push_back(pp);
    }
    prev_slope = seg.slope(seg.s_hi);
  }
  if (!segs.empty()) add_atom(segs.back().s_hi, prev_slope, p.right_slope());
  if (segs.empty()) add_atom(p.s_first(), p.left_slope(), p.right_slope());

  return RadialMeasure(n, std::move(atoms), std::move(pieces));
}

SupportReport support(const RadialMeasure& m, double tol) {
  SupportReport rep;
  rep.origin_mass = m.origin_mass();
  for (const auto& a : m.atoms())
    if (a.r > 0.0 && a.mass > tol) rep.atoms.push_back(a.r);

  std::vector<RadialSet::Interval> ivs;
  for (const auto& p : m.pieces()) {
    if (piece_mass(p, m.dimension()) > tol)
      ivs.push_back({piece_lo(p), piece_hi(p)});
  }
  std::sort(ivs.begin(), ivs.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (const auto& iv : ivs) {
    if (!rep.density_intervals.empty() &&
        iv.lo <= rep.density_intervals.back().hi + 1e-12 * std::max(1.0, iv.lo)) {
      rep.density_intervals.back().hi = std::max(rep.density_intervals.back().hi, iv.hi);
    } else {
      rep.density_intervals.push_back(iv);
    }
  }
  return rep;
}

double total_mass(const RadialMeasure& m) { return m.total_mass(); }

double cdf_sup_distance(const RadialMeasure& a, const RadialMeasure& b, int grid_points) {
  double t_max = 0.0;
  auto extend = [&](const RadialMeasure& m) {
    for (const auto& at : m.atoms()) t_max = std::max(t_max, at.r);
    for (const auto& p : m.pieces()) t_max = std::max(t_max, piece_hi(p));
  };
  extend(a);
  extend(b);
  if (t_max == 0.0) t_max = 1.0;

  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(grid_points) + 8 * (a.atoms().size() + b.atoms().size()));
  for (int i = 0; i <= grid_points; ++i)
    ts.push_back(t_max * 1.05 * i / grid_points);
  // probe just around atom radii; the offset stays above the 1-ulp slip that
  // atom radii pick up through the log/exp coordinate round trip
  for (const auto& m : {&a, &b})
    for (const auto& at : m->atoms()) {
      ts.push_back(at.r * (1.0 - 5e-9));
      ts.push_back(at.r * (1.0 + 5e-9));
    }
  double worst = 0.0;
  for (double t : ts) worst = std::max(worst, std::fabs(a.cdf(t) - b.cdf(t)));
  return worst;
}

}  // namespace radial
