#include "radial/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radial {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

RadialProfile RadialProfile::from_breakpoints(
    std::vector<std::pair<double, double>> bps, double left_slope,
    double right_slope) {
  require(!bps.empty(), "profile needs at least one breakpoint");
  require(left_slope >= 0.0, "left_slope must be >= 0");
  for (std::size_t i = 0; i + 1 < bps.size(); ++i)
    require(bps[i].first < bps[i + 1].first, "breakpoints must be strictly increasing in s");
  for (auto& [s, v] : bps)
    require(std::isfinite(s) && std::isfinite(v), "breakpoints must be finite");

  RadialProfile p;
  p.anchor_s_ = bps.front().first;
  p.anchor_v_ = bps.front().second;
  p.left_slope_ = left_slope;
  p.right_slope_ = right_slope;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    ProfileSegment seg;
    seg.s_lo = bps[i].first;
    seg.s_hi = bps[i + 1].first;
    seg.c1 = (bps[i + 1].second - bps[i].second) / (seg.s_hi - seg.s_lo);
    seg.c0 = bps[i].second - seg.c1 * seg.s_lo;
    p.segs_.push_back(seg);
  }
  return p;
}

RadialProfile RadialProfile::from_segments(std::vector<ProfileSegment> segs,
                                           double left_slope,
                                           double right_slope) {
  require(!segs.empty(), "from_segments needs at least one segment");
  require(left_slope >= 0.0, "left_slope must be >= 0");
  double scale = 1.0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    require(s.s_lo < s.s_hi, "segment must have positive s-extent");
    scale = std::max({scale, std::fabs(s.value(s.s_lo)), std::fabs(s.value(s.s_hi))});
    if (i + 1 < segs.size()) {
      require(std::fabs(segs[i + 1].s_lo - s.s_hi) <= 1e-12 * std::max(1.0, std::fabs(s.s_hi)),
              "segments must be contiguous in s");
    }
  }
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    double gap = std::fabs(segs[i + 1].value(segs[i + 1].s_lo) - segs[i].value(segs[i].s_hi));
    require(gap <= 1e-8 * scale, "segments must be continuous in value");
    segs[i + 1].s_lo = segs[i].s_hi;
  }
  RadialProfile p;
  p.anchor_s_ = segs.front().s_lo;
  p.anchor_v_ = segs.front().value(segs.front().s_lo);
  p.left_slope_ = left_slope;
  p.right_slope_ = right_slope;
  p.segs_ = std::move(segs);
  return p;
}

double RadialProfile::s_last() const {
  return segs_.empty() ? anchor_s_ : segs_.back().s_hi;
}

double RadialProfile::value(double s) const {
  if (s <= anchor_s_) return anchor_v_ + left_slope_ * (s - anchor_s_);
  if (segs_.empty() || s >= s_last()) {
    double sl = s_last();
    double vl = segs_.empty() ? anchor_v_ : segs_.back().value(sl);
    return vl + right_slope_ * (s - sl);
  }
  // first segment with s_hi >= s
  std::size_t lo = 0, hi = segs_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (segs_[mid].s_hi < s)
      lo = mid + 1;
    else
      hi = mid;
  }
  return segs_[lo].value(s);
}

double RadialProfile::value_at_radius(double r) const {
  if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
  if (r == 0.0) {
    if (left_slope_ > kSlopeTol) return -std::numeric_limits<double>::infinity();
    return anchor_v_;
  }
  return value(log_coord(r));
}

double RadialProfile::slope_left(double s) const {
  if (s <= anchor_s_) return left_slope_;
  if (s > s_last()) return right_slope_;
  for (std::size_t i = segs_.size(); i-- > 0;) {
    if (segs_[i].s_lo < s) return segs_[i].slope(std::min(s, segs_[i].s_hi));
  }
  return left_slope_;
}

double RadialProfile::slope_right(double s) const {
  if (s < anchor_s_) return left_slope_;
  if (s >= s_last()) return right_slope_;
  for (const auto& seg : segs_) {
    if (seg.s_hi > s) return seg.slope(std::max(s, seg.s_lo));
  }
  return right_slope_;
}

std::vector<std::pair<double, double>> RadialProfile::breakpoints() const {
  std::vector<std::pair<double, double>> bps;
  bps.emplace_back(anchor_s_, anchor_v_);
  for (const auto& seg : segs_) bps.emplace_back(seg.s_hi, seg.value(seg.s_hi));
  return bps;
}

RadialProfile RadialProfile::scaled(double lambda) const {
  RadialProfile p = *this;
  p.anchor_v_ *= lambda;
  p.left_slope_ *= lambda;
  p.right_slope_ *= lambda;
  for (auto& seg : p.segs_) {
    seg.c0 *= lambda;
    seg.c1 *= lambda;
    seg.c2 *= lambda;
  }
  return p;
}

RadialProfile RadialProfile::shifted(double dc) const {
  RadialProfile p = *this;
  p.anchor_v_ += dc;
  for (auto& seg : p.segs_) seg.c0 += dc;
  return p;
}

ClassFlags check_class(const RadialProfile& p) {
  ClassFlags f;
  bool monotone = p.left_slope() >= -kSlopeTol;
  bool convex = true;
  double prev = p.left_slope();
  for (const auto& seg : p.segments()) {
    if (seg.c2 != 0.0 && seg.curvature(seg.s_lo) < 0.0) convex = false;
    double a = seg.slope(seg.s_lo);
    double b = seg.slope(seg.s_hi);
    if (a < prev - kSlopeTol) convex = false;
    if (a < -kSlopeTol || b < -kSlopeTol) monotone = false;
    prev = b;
  }
  if (p.right_slope() < prev - kSlopeTol) convex = false;
  if (p.right_slope() < -kSlopeTol) monotone = false;

  f.is_psh_radial = monotone && convex;
  f.in_L = f.is_psh_radial && p.right_slope() <= 0.5 + kSlopeTol;
  f.in_L_plus = f.is_psh_radial && std::fabs(p.right_slope() - 0.5) <= kSlopeTol;
  f.bounded_below = p.left_slope() <= kSlopeTol;
  return f;
}

double eval_profile(const RadialProfile& p, double r) {
  return p.value_at_radius(r);
}

RadialProfile scale_profile(const RadialProfile& p, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("scale factor must be positive");
  return p.scaled(lambda);
}

RadialSet::RadialSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  require(!intervals_.empty(), "radial set must be nonempty");
  bool positive_sphere = false;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    require(iv.lo >= 0.0 && iv.lo <= iv.hi && std::isfinite(iv.hi),
            "radial set intervals must satisfy 0 <= lo <= hi < inf");
    if (i > 0)
      require(intervals_[i - 1].hi < iv.lo, "radial set intervals must be disjoint and sorted");
    if (iv.hi > 0.0) positive_sphere = true;
  }
  require(!(intervals_.front().lo == 0.0 && intervals_.front().hi == 0.0),
          "the degenerate sphere at the origin is not a valid component");
  // A radial set is non-pluripolar iff it contains a sphere of positive radius.
  require(positive_sphere, "radial set is pluripolar (no sphere of positive radius)");
}

bool RadialSet::contains(double r, double tol) const {
  for (const auto& iv : intervals_)
    if (r >= iv.lo - tol && r <= iv.hi + tol) return true;
  return false;
}

RadialWeight::RadialWeight(Kind kind, RadialSet domain)
    : kind_(std::move(kind)), domain_(std::move(domain)) {
  if (const auto* t = std::get_if<TableWeight>(&kind_)) {
    require(t->samples.size() >= 1, "table weight needs samples");
    for (std::size_t i = 0; i + 1 < t->samples.size(); ++i)
      require(t->samples[i].first < t->samples[i + 1].first,
              "table samples must be strictly increasing in s");
    for (const auto& [s, q] : t->samples)
      require(std::isfinite(s) && std::isfinite(q), "table values must be finite");
  }
  if (domain_.includes_origin()) {
    if (std::holds_alternative<ScaledLogWeight>(kind_) &&
        std::get<ScaledLogWeight>(kind_).alpha != 0.0)
      throw std::domain_error("scaled_log weight is unbounded at the origin");
    if (const auto* pw = std::get_if<PowerWeight>(&kind_)) {
      if (pw->beta < 0.0 && pw->A != 0.0)
        throw std::domain_error("negative-power weight is unbounded at the origin");
    }
    if (const auto* sp = std::get_if<ScaledProfileWeight>(&kind_)) {
      if (sp->profile.left_slope() > kSlopeTol)
        throw std::domain_error("profile weight is unbounded below at the origin");
    }
  }
}

double RadialWeight::value_s(double s) const {
  if (const auto* c = std::get_if<ConstantWeight>(&kind_)) return c->c;
  if (const auto* l = std::get_if<ScaledLogWeight>(&kind_)) return l->alpha * 0.5 * s + l->c;
  if (const auto* p = std::get_if<PowerWeight>(&kind_))
    return p->A * std::exp(p->beta * 0.5 * s) + p->c;
  if (const auto* t = std::get_if<TableWeight>(&kind_)) {
    const auto& sm = t->samples;
    if (s <= sm.front().first) return sm.front().second;
    if (s >= sm.back().first) return sm.back().second;
    auto it = std::upper_bound(sm.begin(), sm.end(), s,
                               [](double x, const auto& pr) { return x < pr.first; });
    const auto& [s1, q1] = *it;
    const auto& [s0, q0] = *(it - 1);
    double w = (s - s0) / (s1 - s0);
    return q0 + w * (q1 - q0);
  }
  const auto& sp = std::get<ScaledProfileWeight>(kind_);
  return sp.lambda * sp.profile.value(s);
}

double RadialWeight::value_at_radius(double r) const {
  if (r == 0.0) {
    if (const auto* p = std::get_if<PowerWeight>(&kind_))
      return p->beta > 0.0 ? p->c : p->A + p->c;
    if (const auto* t = std::get_if<TableWeight>(&kind_)) return t->samples.front().second;
    if (const auto* c = std::get_if<ConstantWeight>(&kind_)) return c->c;
    if (const auto* sp = std::get_if<ScaledProfileWeight>(&kind_))
      return sp->lambda * sp->profile.value_at_radius(0.0);
    throw std::domain_error("weight not evaluable at the origin");
  }
  return value_s(log_coord(r));
}

std::vector<WeightPiece> RadialWeight::pieces_on(double s_lo, double s_hi) const {
  std::vector<WeightPiece> out;
  auto clip_push = [&](WeightPiece w) {
    w.s_lo = std::max(w.s_lo, s_lo);
    w.s_hi = std::min(w.s_hi, s_hi);
    if (w.s_lo < w.s_hi) out.push_back(w);
  };
  const double inf = std::numeric_limits<double>::infinity();
  int next_id = 0;
  if (const auto* c = std::get_if<ConstantWeight>(&kind_)) {
    clip_push({-inf, inf, c->c, 0.0, 0.0, 0.0, false, next_id});
  } else if (const auto* l = std::get_if<ScaledLogWeight>(&kind_)) {
    clip_push({-inf, inf, l->c, 0.5 * l->alpha, 0.0, 0.0, false, next_id});
  } else if (const auto* p = std::get_if<PowerWeight>(&kind_)) {
    if (p->A == 0.0 || p->beta == 0.0)
      clip_push({-inf, inf, p->A + p->c, 0.0, 0.0, 0.0, false, next_id});
    else
      clip_push({-inf, inf, p->c, 0.0, p->A, 0.5 * p->beta, false, next_id});
  } else if (const auto* t = std::get_if<TableWeight>(&kind_)) {
    const auto& sm = t->samples;
    // flat extensions beyond the sampled range
    clip_push({-inf, sm.front().first, sm.front().second, 0.0, 0.0, 0.0, true, next_id++});
    for (std::size_t i = 0; i + 1 < sm.size(); ++i) {
      double k = (sm[i + 1].second - sm[i].second) / (sm[i + 1].first - sm[i].first);
      clip_push({sm[i].first, sm[i + 1].first, sm[i].second - k * sm[i].first, k, 0.0, 0.0,
                 true, next_id++});
    }
    clip_push({sm.back().first, inf, sm.back().second, 0.0, 0.0, 0.0, true, next_id++});
  } else {
    const auto& sp = std::get<ScaledProfileWeight>(kind_);
    const auto& pr = sp.profile;
    double a_s = pr.s_first();
    double a_v = pr.value(a_s);
    clip_push({-inf, a_s, sp.lambda * (a_v - pr.left_slope() * a_s),
               sp.lambda * pr.left_slope(), 0.0, 0.0, false, next_id++});
    for (const auto& seg : pr.segments()) {
      clip_push({seg.s_lo, seg.s_hi, sp.lambda * seg.c0, sp.lambda * seg.c1,
                 sp.lambda * seg.c2, seg.c3, seg.run >= 0, next_id++});
    }
    double b_s = pr.s_last();
    double b_v = pr.value(b_s);
    clip_push({b_s, inf, sp.lambda * (b_v - pr.right_slope() * b_s),
               sp.lambda * pr.right_slope(), 0.0, 0.0, false, next_id++});
  }
  return out;
}

bool RadialWeight::smooth_closed_form() const {
  return std::holds_alternative<ConstantWeight>(kind_) ||
         std::holds_alternative<ScaledLogWeight>(kind_) ||
         std::holds_alternative<PowerWeight>(kind_);
}

double RadialWeight::dr(double r) const {
  if (std::get_if<ConstantWeight>(&kind_)) return 0.0;
  if (const auto* l = std::get_if<ScaledLogWeight>(&kind_)) return l->alpha / r;
  if (const auto* p = std::get_if<PowerWeight>(&kind_))
    return p->A * p->beta * std::pow(r, p->beta - 1.0);
  throw std::domain_error("radial derivative unsupported for this weight kind");
}

double RadialWeight::d2r(double r) const {
  if (std::get_if<ConstantWeight>(&kind_)) return 0.0;
  if (const auto* l = std::get_if<ScaledLogWeight>(&kind_)) return -l->alpha / (r * r);
  if (const auto* p = std::get_if<PowerWeight>(&kind_))
    return p->A * p->beta * (p->beta - 1.0) * std::pow(r, p->beta - 2.0);
  throw std::domain_error("radial derivative unsupported for this weight kind");
}

RadialWeight RadialWeight::shifted(double dc) const {
  Kind k = kind_;
  if (auto* c = std::get_if<ConstantWeight>(&k)) {
    c->c += dc;
  } else if (auto* l = std::get_if<ScaledLogWeight>(&k)) {
    l->c += dc;
  } else if (auto* p = std::get_if<PowerWeight>(&k)) {
    p->c += dc;
  } else if (auto* t = std::get_if<TableWeight>(&k)) {
    for (auto& [s, q] : t->samples) q += dc;
  } else {
    auto& sp = std::get<ScaledProfileWeight>(k);
    sp.profile = sp.profile.shifted(dc / sp.lambda);
  }
  return RadialWeight(std::move(k), domain_);
}

double RadialWeight::flat_left_cutoff(double tol) const {
  if (std::get_if<ConstantWeight>(&kind_)) return 0.0;
  if (const auto* p = std::get_if<PowerWeight>(&kind_)) {
    if (p->A == 0.0 || p->beta <= 0.0) return 0.0;
    // |A| e^{beta s / 2} <= tol
    return 2.0 / p->beta * std::log(tol / std::fabs(p->A));
  }
  if (const auto* t = std::get_if<TableWeight>(&kind_)) return t->samples.front().first;
  if (const auto* sp = std::get_if<ScaledProfileWeight>(&kind_)) return sp->profile.s_first();
  return 0.0;  // scaled_log never valid on origin components
}

}  // namespace radial
