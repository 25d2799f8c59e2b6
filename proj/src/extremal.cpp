#include "radial/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radial {

namespace {

constexpr double kEnvelopeTarget = 1e-9;  // per-cell envelope error target

struct ConstraintPoint {
  double s = 0.0;
  double q = 0.0;
  int interval = -1;  // K-interval index; -1 marks the relative-mode anchor
};

struct BuiltGrid {
  std::vector<ConstraintPoint> pts;
  std::vector<std::vector<WeightPiece>> pieces;  // per K interval
  int required_points = 0;
  bool resolution_ok = true;
  double max_cell_r = 0.0;  // widest radius gap between neighboring points
};

double piece_max_abs_curvature(const WeightPiece& w, double x, double y) {
  if (w.c2 == 0.0) return 0.0;
  return std::max(std::fabs(w.curvature(x)), std::fabs(w.curvature(y)));
}

// Points equidistributed in phi(s) = exp(c3 s / 2) make h^2 |Q''| roughly
// constant across an exp piece.
void fill_piece_points(const WeightPiece& w, double x, double y, int cells,
                       std::vector<double>& out) {
  if (w.c2 != 0.0 && w.c3 != 0.0) {
    double px = std::exp(0.5 * w.c3 * x);
    double py = std::exp(0.5 * w.c3 * y);
    for (int j = 1; j < cells; ++j) {
      double phi = px + (py - px) * j / cells;
      out.push_back(2.0 / w.c3 * std::log(phi));
    }
  } else {
    for (int j = 1; j < cells; ++j) out.push_back(x + (y - x) * j / cells);
  }
}

BuiltGrid build_grid(const Problem& prob, const GridSpec& grid) {
  BuiltGrid bg;
  const auto& ivs = prob.K.intervals();
  bg.pieces.resize(ivs.size());

  struct SubPiece {
    int interval;
    int piece_idx;
    double x, y;
    int n_curv;
  };
  std::vector<SubPiece> subs;
  double total_len = 0.0;

  for (std::size_t i = 0; i < ivs.size(); ++i) {
    double lo = ivs[i].lo, hi = ivs[i].hi;
    if (lo == hi) {
      double s = log_coord(lo);
      bg.pts.push_back({s, prob.Q.value_s(s), static_cast<int>(i)});
      bg.pieces[i] = prob.Q.pieces_on(s - 1e-9, s + 1e-9);
      continue;
    }
    double tau = log_coord(hi);
    double sigma;
    if (lo > 0.0) {
      sigma = log_coord(lo);
    } else {
      sigma = std::min(tau - 4.0, prob.Q.flat_left_cutoff(1e-11));
      if (std::isfinite(grid.s_min)) sigma = std::min(sigma, std::max(grid.s_min, tau - 1000.0));
      sigma = std::max(sigma, tau - 1000.0);
    }
    auto pieces = prob.Q.pieces_on(sigma, tau);
    if (pieces.empty())
      throw std::domain_error("weight does not cover the log-image of K");
    for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
      const auto& w = pieces[pi];
      double curv = piece_max_abs_curvature(w, w.s_lo, w.s_hi);
      int n_curv = 1;
      if (curv > 0.0 && w.c3 != 0.0) {
        if (w.c2 < 0.0) {
          // a concave arc can meet the envelope only at its endpoints
          n_curv = 4;
        } else {
          // integral of sqrt(|Q''|/(8 eps)) ds for an exp piece, closed form
          double coef = std::sqrt(std::fabs(w.c2) / (8.0 * kEnvelopeTarget));
          double need = 2.0 * coef *
                        std::fabs(std::exp(0.5 * w.c3 * w.s_hi) -
                                  std::exp(0.5 * w.c3 * w.s_lo));
          n_curv = static_cast<int>(std::ceil(need)) + 1;
        }
      }
      subs.push_back({static_cast<int>(i), static_cast<int>(pi), w.s_lo, w.s_hi, n_curv});
      total_len += w.s_hi - w.s_lo;
    }
    bg.pieces[i] = std::move(pieces);
  }

  long required = 0;
  for (const auto& sp : subs) required += std::max(sp.n_curv, 2);
  bg.required_points = static_cast<int>(std::min<long>(required, 1 << 30));
  long budget = std::max(grid.points, 4);
  bg.resolution_ok = budget >= required;
  double shrink = bg.resolution_ok ? 1.0 : static_cast<double>(budget) / required;
  long spare = bg.resolution_ok ? budget - required : 0;

  for (const auto& sp : subs) {
    const auto& w = bg.pieces[sp.interval][sp.piece_idx];
    int cells = std::max(2, static_cast<int>(sp.n_curv * shrink));
    if (spare > 0 && total_len > 0.0)
      cells += static_cast<int>(spare * (sp.y - sp.x) / total_len);
    cells = std::min(cells, 400000);
    std::vector<double> ss;
    ss.push_back(sp.x);
    fill_piece_points(w, sp.x, sp.y, cells, ss);
    ss.push_back(sp.y);
    for (double s : ss) bg.pts.push_back({s, prob.Q.value_s(s), sp.interval});
  }

  std::sort(bg.pts.begin(), bg.pts.end(),
            [](const ConstraintPoint& a, const ConstraintPoint& b) { return a.s < b.s; });
  bg.pts.erase(std::unique(bg.pts.begin(), bg.pts.end(),
                           [](const ConstraintPoint& a, const ConstraintPoint& b) {
                             return std::fabs(a.s - b.s) <= 1e-13 * std::max(1.0, std::fabs(a.s));
                           }),
               bg.pts.end());
  for (std::size_t i = 0; i + 1 < bg.pts.size(); ++i) {
    if (bg.pts[i].interval == bg.pts[i + 1].interval)
      bg.max_cell_r =
          std::max(bg.max_cell_r, radius_of(bg.pts[i + 1].s) - radius_of(bg.pts[i].s));
  }
  return bg;
}

double edge_slope(const ConstraintPoint& a, const ConstraintPoint& b) {
  return (b.q - a.q) / (b.s - a.s);
}

// Lower convex hull over s-sorted points; collinear interior points are
// dropped.  Returns indices into pts.
std::vector<int> lower_hull(const std::vector<ConstraintPoint>& pts) {
  std::vector<int> hull;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    while (hull.size() >= 2) {
      const auto& o = pts[hull[hull.size() - 2]];
      const auto& a = pts[hull[hull.size() - 1]];
      const auto& b = pts[i];
      double cross = (a.s - o.s) * (b.q - o.q) - (a.q - o.q) * (b.s - o.s);
      double scale = (std::fabs(b.s - o.s) + 1.0) *
                     std::max({1.0, std::fabs(o.q), std::fabs(a.q), std::fabs(b.q)});
      if (cross <= 1e-12 * scale)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  return hull;
}

// Finds a weight piece of the given interval covering [s_lo, s_hi]; returns
// nullptr when none does.
const WeightPiece* covering_piece(const std::vector<WeightPiece>& pieces, double s_lo,
                                  double s_hi) {
  double tol = 1e-11 * std::max(1.0, std::fabs(s_lo));
  for (const auto& w : pieces)
    if (w.s_lo <= s_lo + tol && w.s_hi >= s_hi - tol) return &w;
  return nullptr;
}

struct Edge {
  int a, b;                        // indices into pts
  const WeightPiece* snap = nullptr;  // non-null: emit the piece's exact form
};

Solution finish_solution(const Problem& prob, const BuiltGrid& bg,
                         const std::vector<ConstraintPoint>& pts, std::vector<int> hull,
                         bool relative, Diagnostics diag) {
  // --- snap pass -------------------------------------------------------
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    Edge e{hull[i], hull[i + 1], nullptr};
    const auto& pa = pts[e.a];
    const auto& pb = pts[e.b];
    if (pa.interval >= 0 && pa.interval == pb.interval) {
      // Between two contact points inside one convex piece the envelope is
      // the piece itself (for a linear piece the chord already is the piece).
      const WeightPiece* w = covering_piece(bg.pieces[pa.interval], pa.s, pb.s);
      if (w != nullptr && w->convex()) e.snap = w;
    }
    edges.push_back(e);
  }

  // --- repair: enforce slope monotonicity across junctions --------------
  auto slope_at_start = [&](const Edge& e) {
    return e.snap ? e.snap->slope(pts[e.a].s) : edge_slope(pts[e.a], pts[e.b]);
  };
  auto slope_at_end = [&](const Edge& e) {
    return e.snap ? e.snap->slope(pts[e.b].s) : edge_slope(pts[e.a], pts[e.b]);
  };
  int repairs = 0;
  for (bool changed = true; changed && repairs < 200;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      double k0 = slope_at_end(edges[i]);
      double k1 = slope_at_start(edges[i + 1]);
      if (k0 > k1 + 1e-12) {
        if (edges[i].snap && edges[i].snap->c2 != 0.0) {
          edges[i].snap = nullptr;
        } else if (edges[i + 1].snap && edges[i + 1].snap->c2 != 0.0) {
          edges[i + 1].snap = nullptr;
        } else {
          continue;  // two chords: hull guarantees monotone up to dust
        }
        ++repairs;
        changed = true;
      }
    }
  }
  diag.repair_iterations = repairs;

  // --- emit profile segments --------------------------------------------
  std::vector<ProfileSegment> segs;
  int run_counter = 0;
  int last_run_interval = -2;
  for (const auto& e : edges) {
    const auto& pa = pts[e.a];
    const auto& pb = pts[e.b];
    ProfileSegment seg;
    seg.s_lo = pa.s;
    seg.s_hi = pb.s;
    if (e.snap) {
      seg.c0 = e.snap->c0;
      seg.c1 = e.snap->c1;
      seg.c2 = e.snap->c2;
      seg.c3 = e.snap->c3;
      if (e.snap->sampled) {
        // consecutive sampled contact cells share one run id
        bool cont = last_run_interval == pa.interval && !segs.empty() && segs.back().run >= 0;
        if (!cont) ++run_counter;
        seg.run = run_counter;
        last_run_interval = pa.interval;
      } else {
        last_run_interval = -2;
      }
    } else {
      seg.c1 = edge_slope(pa, pb);
      seg.c0 = pa.q - seg.c1 * pa.s;
      last_run_interval = -2;
    }
    segs.push_back(seg);
  }

  // merge contiguous segments with identical coefficients / collinear chords
  std::vector<ProfileSegment> merged;
  for (const auto& seg : segs) {
    if (!merged.empty()) {
      auto& m = merged.back();
      bool same_form = m.run == seg.run && m.c2 == seg.c2 && m.c3 == seg.c3 &&
                       std::fabs(m.c1 - seg.c1) <= 1e-12 * std::max(1.0, std::fabs(m.c1)) &&
                       std::fabs(m.c0 - seg.c0) <= 1e-11 * std::max(1.0, std::fabs(m.c0));
      if (same_form) {
        m.s_hi = seg.s_hi;
        continue;
      }
    }
    merged.push_back(seg);
  }

  // Exact terminal cap: the hull caps at a grid vertex, but a snapped curve
  // can cross slope 1/2 inside its last cell.  Trim it where the slope is
  // exactly 1/2 so the recession ray leaves tangentially.
  if (!relative) {
    while (!merged.empty()) {
      ProfileSegment& last = merged.back();
      if (last.slope(last.s_hi) <= 0.5 + 1e-12) break;
      double s_cap = last.s_lo;
      if (last.c2 > 0.0 && last.c3 != 0.0) {
        double arg = (0.5 - last.c1) / (last.c2 * last.c3);
        if (arg > 0.0) s_cap = std::log(arg) / last.c3;
      }
      if (s_cap > last.s_lo + 1e-12 && s_cap < last.s_hi) {
        last.s_hi = s_cap;
        break;
      }
      merged.pop_back();
    }
  }
  // Same at the left end: trim a leading curve where its slope reaches 0
  // (the exact version of the monotone flatten).
  while (!merged.empty()) {
    ProfileSegment& first = merged.front();
    if (first.slope(first.s_lo) >= -1e-12) break;
    double s_flat = first.s_hi;
    if (first.c2 > 0.0 && first.c3 != 0.0) {
      double arg = -first.c1 / (first.c2 * first.c3);
      if (arg > 0.0) s_flat = std::log(arg) / first.c3;
    }
    if (s_flat > first.s_lo && s_flat < first.s_hi - 1e-12) {
      first.s_lo = s_flat;
      break;
    }
    merged.erase(merged.begin());
  }

  RadialProfile V = merged.empty()
                        ? RadialProfile::from_breakpoints(
                              {{pts[hull.front()].s, pts[hull.front()].q}}, 0.0,
                              relative ? 0.0 : 0.5)
                        : RadialProfile::from_segments(
                              merged, 0.0,
                              relative ? slope_at_end(edges.back()) : 0.5);

  diag.hull_vertices = static_cast<int>(hull.size());

  // --- constraint check + contact scan ----------------------------------
  double qscale = 1.0;
  for (const auto& p : pts)
    if (p.interval >= 0) qscale = std::max(qscale, std::fabs(p.q));
  double ctol = 1e-9 * qscale;
  double worst = -std::numeric_limits<double>::infinity();

  ContactReport contact;
  int group_start = -1;
  int prev_idx = -1;
  auto flush_group = [&](int last_idx) {
    if (group_start < 0) return;
    const auto& first = pts[group_start];
    const auto& last = pts[last_idx];
    if (group_start == last_idx) {
      contact.isolated_radii.push_back(radius_of(first.s));
    } else {
      double lo = radius_of(first.s);
      const auto& kiv = prob.K.intervals()[first.interval];
      // a contact run starting at the truncated left edge of a ball
      // component extends to the origin
      bool at_left_edge = true;
      for (const auto& p : pts)
        if (p.interval == first.interval && p.s < first.s - 1e-13) {
          at_left_edge = false;
          break;
        }
      if (kiv.lo == 0.0 && at_left_edge) lo = 0.0;
      contact.intervals.push_back({lo, radius_of(last.s)});
    }
    group_start = -1;
  };
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const auto& p = pts[i];
    if (p.interval < 0) continue;  // anchor
    double v = V.value(p.s);
    worst = std::max(worst, v - p.q);
    bool touching = v >= p.q - ctol;
    bool adjacent = prev_idx >= 0 && pts[prev_idx].interval == p.interval &&
                    group_start >= 0;
    if (touching) {
      if (!adjacent) flush_group(prev_idx);
      if (group_start < 0) group_start = i;
    } else {
      flush_group(prev_idx);
    }
    prev_idx = i;
  }
  flush_group(prev_idx);
  diag.max_constraint_violation = std::max(0.0, worst);
  if (worst > 1e-7 * qscale)
    throw std::logic_error("envelope exceeds the weight on the constraint grid");

  ClassFlags flags = check_class(V);
  if (!flags.is_psh_radial)
    throw std::logic_error("envelope is not convex nondecreasing");

  RadialMeasure measure = ma_cdf(V, prob.n);
  SupportReport sup = support(measure);
  Solution sol{std::move(V),     std::move(measure),
               std::move(sup),   std::move(contact),
               diag,             relative ? Mode::kRelative : Mode::kGlobal,
               prob.omega_radius};

  // Lemma-style inclusion: the measure lives where the envelope touches the
  // weight.  Checked here so a broken envelope never escapes the solver.
  double cell = std::max(bg.max_cell_r, 1e-9);
  for (double r : sol.support.atoms)
    if (!sol.contact.contains(r, cell))
      throw std::logic_error("support atom outside the contact set");
  if (!relative) {
    DominationReport self = verify_domination(sol.V, sol.V, sol.measure);
    if (!self.dominated)
      throw std::logic_error("solution fails its own domination check");
  }
  return sol;
}

void validate_problem(const Problem& prob) {
  if (prob.n < 1) throw std::domain_error("dimension must be >= 1");
  for (const auto& iv : prob.K.intervals()) {
    double probe_r = iv.hi > 0.0 ? iv.hi : iv.lo;
    double q = prob.Q.value_at_radius(probe_r);
    if (!std::isfinite(q)) throw std::domain_error("weight is not finite on K");
  }
}

}  // namespace

bool ContactReport::contains(double r, double tol) const {
  for (double a : isolated_radii)
    if (std::fabs(a - r) <= tol) return true;
  for (const auto& iv : intervals)
    if (r >= iv.lo - tol && r <= iv.hi + tol) return true;
  return false;
}

Solution solve_global(const Problem& prob, const GridSpec& grid) {
  validate_problem(prob);
  BuiltGrid bg = build_grid(prob, grid);
  Diagnostics diag;
  diag.grid_points = static_cast<int>(bg.pts.size());
  diag.required_points = bg.required_points;
  diag.resolution_ok = bg.resolution_ok;

  std::vector<int> hull = lower_hull(bg.pts);

  // flatten the nonincreasing prefix (largest nondecreasing minorant)
  std::size_t start = 0;
  while (start + 1 < hull.size() &&
         edge_slope(bg.pts[hull[start]], bg.pts[hull[start + 1]]) < -1e-13)
    ++start;
  hull.erase(hull.begin(), hull.begin() + start);

  // terminal slope cap at 1/2: truncate at the first edge steeper than 1/2
  std::size_t keep = hull.size();
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    if (edge_slope(bg.pts[hull[i]], bg.pts[hull[i + 1]]) > 0.5 + 1e-13) {
      keep = i + 1;
      break;
    }
  }
  hull.resize(keep);

  return finish_solution(prob, bg, bg.pts, std::move(hull), false, diag);
}

Solution solve_relative(const Problem& prob, const GridSpec& grid) {
  validate_problem(prob);
  if (!(prob.omega_radius > prob.K.max_radius()))
    throw std::domain_error("relative mode needs omega_radius strictly beyond K");

  BuiltGrid bg = build_grid(prob, grid);
  // Q <= 0 on K: check constraint values and per-piece analytic maxima
  for (std::size_t i = 0; i < bg.pieces.size(); ++i) {
    for (const auto& w : bg.pieces[i]) {
      double hi = std::max(w.value(w.s_lo), w.value(w.s_hi));
      if (w.c2 != 0.0 && w.c3 != 0.0 && w.c1 != 0.0) {
        double arg = -w.c1 / (w.c2 * w.c3);
        if (arg > 0.0) {
          double s_star = std::log(arg) / w.c3;
          if (s_star > w.s_lo && s_star < w.s_hi) hi = std::max(hi, w.value(s_star));
        }
      }
      if (hi > 1e-12)
        throw std::domain_error("relative mode requires Q <= 0 on K");
    }
  }

  std::vector<ConstraintPoint> pts = bg.pts;
  pts.push_back({log_coord(prob.omega_radius), 0.0, -1});

  Diagnostics diag;
  diag.grid_points = static_cast<int>(pts.size());
  diag.required_points = bg.required_points;
  diag.resolution_ok = bg.resolution_ok;

  std::vector<int> hull = lower_hull(pts);
  std::size_t start = 0;
  while (start + 1 < hull.size() &&
         edge_slope(pts[hull[start]], pts[hull[start + 1]]) < -1e-13)
    ++start;
  hull.erase(hull.begin(), hull.begin() + start);

  return finish_solution(prob, bg, pts, std::move(hull), true, diag);
}

Solution solve(const Problem& prob, const GridSpec& grid) {
  return prob.mode == Mode::kRelative ? solve_relative(prob, grid)
                                      : solve_global(prob, grid);
}

ContactReport contact_set(const Solution& sol, const Problem& prob, double tol) {
  BuiltGrid bg = build_grid(prob, GridSpec{});
  ContactReport rep;
  int group_start = -1;
  int prev = -1;
  auto flush = [&](int last) {
    if (group_start < 0) return;
    if (group_start == last) {
      rep.isolated_radii.push_back(radius_of(bg.pts[group_start].s));
    } else {
      rep.intervals.push_back(
          {radius_of(bg.pts[group_start].s), radius_of(bg.pts[last].s)});
    }
    group_start = -1;
  };
  for (int i = 0; i < static_cast<int>(bg.pts.size()); ++i) {
    const auto& p = bg.pts[i];
    bool touching = sol.V.value(p.s) >= p.q - tol;
    bool adjacent = prev >= 0 && bg.pts[prev].interval == p.interval && group_start >= 0;
    if (touching) {
      if (!adjacent) flush(prev);
      if (group_start < 0) group_start = i;
    } else {
      flush(prev);
    }
    prev = i;
  }
  flush(prev);
  return rep;
}

DominationReport verify_domination(const RadialProfile& candidate,
                                   const RadialProfile& v, const RadialMeasure& m,
                                   double tol, int grid_points) {
  DominationReport rep;
  ClassFlags cu = check_class(candidate);
  ClassFlags cv = check_class(v);
  if (!cu.in_L || !cv.in_L_plus)
    throw std::domain_error("verify_domination needs candidate in L and reference in L+");
  rep.class_ok = true;

  double worst_supp = -std::numeric_limits<double>::infinity();
  auto probe = [&](double r) {
    if (r <= 0.0) return;
    double d = candidate.value_at_radius(r) - v.value_at_radius(r);
    worst_supp = std::max(worst_supp, d);
  };
  for (const auto& a : m.atoms()) probe(a.r);
  SupportReport sup = support(m);
  for (const auto& iv : sup.density_intervals) {
    for (int j = 0; j <= 64; ++j) probe(iv.lo + (iv.hi - iv.lo) * j / 64.0);
  }
  rep.hypothesis_ok = worst_supp <= tol;
  if (!rep.hypothesis_ok) {
    rep.note = "candidate exceeds reference on the support";
    rep.max_violation = worst_supp;
    return rep;
  }

  double s_lo = std::min(candidate.s_first(), v.s_first()) - 10.0;
  double s_hi = std::max(candidate.s_last(), v.s_last()) + 10.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= grid_points; ++j) {
    double s = s_lo + (s_hi - s_lo) * j / grid_points;
    worst = std::max(worst, candidate.value(s) - v.value(s));
  }
  // beyond the grid both functions are affine; slopes settle the far field
  if (candidate.right_slope() > v.right_slope() + kSlopeTol)
    worst = std::numeric_limits<double>::infinity();
  rep.max_violation = std::max(worst, 0.0);
  rep.dominated = worst <= tol;
  return rep;
}

AbsContinuity compare_abs_continuity(const RadialMeasure& m1, const RadialMeasure& m2,
                                     double tol) {
  auto dominated_by = [&](const RadialMeasure& a, const RadialMeasure& b) {
    // atoms of a must match atoms of b
    for (const auto& at : a.atoms()) {
      if (at.mass <= tol) continue;
      bool matched = false;
      for (const auto& bt : b.atoms()) {
        if (bt.mass > 0.0 && std::fabs(at.r - bt.r) <= 1e-9 * std::max(1.0, at.r)) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    // a's density mass must live inside b's density intervals
    SupportReport sb = support(b, 0.0);
    std::vector<double> cuts;
    for (const auto& iv : sb.density_intervals) {
      cuts.push_back(iv.lo);
      cuts.push_back(iv.hi);
    }
    SupportReport sa = support(a, 0.0);
    for (const auto& iv : sa.density_intervals) {
      std::vector<double> edges{iv.lo, iv.hi};
      for (double c : cuts)
        if (c > iv.lo && c < iv.hi) edges.push_back(c);
      std::sort(edges.begin(), edges.end());
      for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        double x = edges[j], y = edges[j + 1];
        double mid = 0.5 * (x + y);
        bool covered = false;
        for (const auto& biv : sb.density_intervals)
          if (mid >= biv.lo - 1e-12 && mid <= biv.hi + 1e-12) {
            covered = true;
            break;
          }
        if (covered) continue;
        double mass = a.cdf(y) - a.cdf(x);
        for (const auto& at : a.atoms())
          if (at.r > x && at.r <= y) mass -= at.mass;
        if (mass > tol) return false;
      }
    }
    return true;
  };
  return {dominated_by(m1, m2), dominated_by(m2, m1)};
}

BoundaryReport boundary_support_check(const Problem& prob, const GridSpec& grid) {
  BoundaryReport rep;
  bool has_interior = false;
  for (const auto& iv : prob.K.intervals())
    if (iv.lo < iv.hi) has_interior = true;
  if (!has_interior)
    throw std::domain_error("boundary_support_check needs a set with interior");

  for (const auto& iv : prob.K.intervals()) {
    if (iv.lo > 0.0) rep.boundary_radii.push_back(iv.lo);
    if (iv.hi > 0.0 && (iv.hi != iv.lo || iv.lo == 0.0)) rep.boundary_radii.push_back(iv.hi);
    if (iv.lo == iv.hi && iv.lo > 0.0) rep.boundary_radii.push_back(iv.lo);
  }
  std::sort(rep.boundary_radii.begin(), rep.boundary_radii.end());
  rep.boundary_radii.erase(std::unique(rep.boundary_radii.begin(), rep.boundary_radii.end()),
                           rep.boundary_radii.end());

  if (!prob.Q.smooth_closed_form()) {
    rep.shape = WeightShape::kUnsupported;
    rep.note = "tabulated or profile weights have no smooth classification";
    return rep;
  }

  // Maximal radial PSH weights are affine in s with nonnegative slope.
  bool maximal = false;
  if (const auto* c = std::get_if<ConstantWeight>(&prob.Q.kind())) {
    (void)c;
    maximal = true;
  } else if (const auto* l = std::get_if<ScaledLogWeight>(&prob.Q.kind())) {
    maximal = l->alpha >= 0.0;
  } else if (const auto* p = std::get_if<PowerWeight>(&prob.Q.kind())) {
    maximal = p->A == 0.0 || p->beta == 0.0;
  }

  // sign of (r^{2n-1} Q')' = r^{2n-2} (r Q'' + (2n-1) Q') on the interior
  double pos = 0.0, neg = 0.0;
  for (const auto& iv : prob.K.intervals()) {
    if (!(iv.lo < iv.hi)) continue;
    double lo = iv.lo > 0.0 ? iv.lo : iv.hi * 1e-6;
    for (int j = 1; j < 64; ++j) {
      double r = lo + (iv.hi - lo) * j / 64.0;
      double lap = r * prob.Q.d2r(r) + (2.0 * prob.n - 1.0) * prob.Q.dr(r);
      pos = std::max(pos, lap);
      neg = std::min(neg, lap);
    }
  }
  const double tol = 1e-12;
  if (maximal) {
    rep.shape = WeightShape::kMaximalPsh;
  } else if (pos <= tol && neg >= -tol) {
    rep.shape = WeightShape::kHarmonic;
  } else if (pos <= tol) {
    rep.shape = WeightShape::kSuperharmonic;
  } else if (neg >= -tol) {
    rep.shape = WeightShape::kSubharmonic;
  } else {
    rep.shape = WeightShape::kIndefinite;
  }
  rep.proposition_applies = rep.shape == WeightShape::kSuperharmonic ||
                            rep.shape == WeightShape::kHarmonic ||
                            rep.shape == WeightShape::kMaximalPsh;

  Solution sol = solve_global(prob, grid);
  double cell = 1e-6 * std::max(1.0, prob.K.max_radius());
  bool inside = true;
  for (double r : sol.support.atoms) {
    bool near = false;
    for (double b : rep.boundary_radii)
      if (std::fabs(r - b) <= std::max(cell, 1e-9 * b)) near = true;
    if (!near) inside = false;
  }
  if (!sol.support.density_intervals.empty()) inside = false;
  rep.support_in_boundary = inside;
  if (rep.proposition_applies && !inside)
    rep.note = "support escapes the boundary despite a superharmonic/maximal weight";
  return rep;
}

}  // namespace radial
