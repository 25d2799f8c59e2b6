#include "radial/glue.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "radial/rng.hpp"

namespace radial {

namespace {

constexpr int kCircleNodes = 512;
constexpr double kSubmeanTol = 1e-9;

double norm_of(std::span<const std::complex<double>> z) {
  double acc = 0.0;
  for (const auto& c : z) acc += std::norm(c);
  return std::sqrt(acc);
}

}  // namespace

C1Radial curve_from_weight(const RadialWeight& w) {
  return {[w](double r) { return w.value_at_radius(r); },
          [w](double r) { return w.dr(r); }};
}

C1Radial curve_from_profile_left(const RadialProfile& p) {
  return {[p](double r) { return p.value_at_radius(r); },
          [p](double r) { return 2.0 * p.slope_left(log_coord(r)) / r; }};
}

C1Radial curve_from_profile_right(const RadialProfile& p) {
  return {[p](double r) { return p.value_at_radius(r); },
          [p](double r) { return 2.0 * p.slope_right(log_coord(r)) / r; }};
}

GlueCheck radial_glue_check(const C1Radial& inner, const C1Radial& outer, double R) {
  if (!(R > 0.0)) throw std::domain_error("interface radius must be positive");
  GlueCheck chk;
  double vi = inner.value(R);
  double vo = outer.value(R);
  chk.mismatch = std::fabs(vi - vo);
  chk.continuous = chk.mismatch <= 1e-10 * std::max(1.0, std::max(std::fabs(vi), std::fabs(vo)));
  if (!chk.continuous) return chk;  // no derivative verdict across a jump
  double di = inner.deriv(R);
  double dout = outer.deriv(R);
  chk.margin = dout - di;
  chk.derivative_ok = di <= dout + 1e-12;
  return chk;
}

double GluedFunction::eval(std::span<const std::complex<double>> z) const {
  return norm_of(z) <= R ? inner(z) : outer(z);
}

GluedFunction glue_radial(int n, double R, const C1Radial& inner, const C1Radial& outer) {
  GluedFunction g;
  g.n = n;
  g.R = R;
  g.inner = [inner](std::span<const std::complex<double>> z) {
    return inner.value(norm_of(z));
  };
  g.outer = [outer](std::span<const std::complex<double>> z) {
    return outer.value(norm_of(z));
  };
  return g;
}

double HarmonicExpansion::eval(double rho, double theta) const {
  double acc = a0;
  double rk = 1.0;
  for (std::size_t k = 0; k < ak.size() || k < bk.size(); ++k) {
    rk *= rho;
    double a = k < ak.size() ? ak[k] : 0.0;
    double b = k < bk.size() ? bk[k] : 0.0;
    double ang = (k + 1) * theta;
    acc += rk * (a * std::cos(ang) + b * std::sin(ang));
  }
  return acc;
}

double HarmonicExpansion::boundary_normal_derivative(double theta) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < ak.size() || k < bk.size(); ++k) {
    double a = k < ak.size() ? ak[k] : 0.0;
    double b = k < bk.size() ? bk[k] : 0.0;
    double ang = (k + 1) * theta;
    acc += (k + 1) * (a * std::cos(ang) + b * std::sin(ang));
  }
  return acc;
}

DiscGlueResult disc_reflection_glue(const HarmonicExpansion& h) {
  DiscGlueResult res;
  const int probes = 10000;
  for (int i = 0; i < probes; ++i) {
    double theta = 2.0 * M_PI * i / probes;
    double d = std::fabs(h.boundary_normal_derivative(theta));
    if (d > res.worst_abs) {
      res.worst_abs = d;
      res.worst_theta = theta;
    }
  }
  res.accepted = res.worst_abs <= 0.5 + 1e-12;
  if (!res.accepted) return res;

  res.g.n = 1;
  res.g.R = 1.0;
  res.g.inner = [h](std::span<const std::complex<double>> z) {
    return h.eval(std::abs(z[0]), std::arg(z[0]));
  };
  // 1/conj(z) has modulus 1/|z| and the argument of z
  res.g.outer = [h](std::span<const std::complex<double>> z) {
    double rho = std::abs(z[0]);
    return h.eval(1.0 / rho, std::arg(z[0])) + std::log(rho);
  };
  return res;
}

namespace {

SubmeanReport submean_batch(const GluedFunction& g, long samples, double rho_min,
                            double rho_max, SplitMix64 rng) {
  SubmeanReport rep;
  rep.samples = samples;
  const int n = g.n;
  std::vector<std::complex<double>> center(n), dir(n), pt(n);
  for (long it = 0; it < samples; ++it) {
    // centers concentrate in the shell R*(1 +/- 0.05) where glue defects
    // show up; 10% uniform background
    double radius;
    if (rng.uniform() < 0.9) {
      radius = g.R * rng.uniform(0.95, 1.05);
    } else {
      radius = rng.uniform(0.0, 2.0 * g.R);
    }
    double cn = 0.0;
    for (int i = 0; i < n; ++i) {
      center[i] = {rng.normal(), rng.normal()};
      cn += std::norm(center[i]);
    }
    cn = std::sqrt(cn);
    for (int i = 0; i < n; ++i) center[i] *= radius / (cn > 0.0 ? cn : 1.0);

    double dn = 0.0;
    for (int i = 0; i < n; ++i) {
      dir[i] = {rng.normal(), rng.normal()};
      dn += std::norm(dir[i]);
    }
    dn = std::sqrt(dn);
    for (int i = 0; i < n; ++i) dir[i] /= (dn > 0.0 ? dn : 1.0);

    double rho = rng.uniform(rho_min, rho_max);

    double avg = 0.0;
    for (int k = 0; k < kCircleNodes; ++k) {
      double th = 2.0 * M_PI * k / kCircleNodes;
      std::complex<double> e = std::polar(rho, th);
      for (int i = 0; i < n; ++i) pt[i] = center[i] + e * dir[i];
      avg += g.eval(pt);
    }
    avg /= kCircleNodes;
    double margin = g.eval(center) - avg;
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst = {center, dir, rho, margin};
    }
    if (margin > kSubmeanTol) ++rep.violations;
  }
  return rep;
}

}  // namespace

SubmeanReport submean_check(const GluedFunction& g, long samples, double rho_min,
                            double rho_max, std::uint64_t seed) {
  if (samples < 1) throw std::domain_error("submean_check needs at least one sample");
  const int batches = 16;
  SplitMix64 root(seed);
  std::vector<SplitMix64> rngs;
  std::vector<long> counts;
  long done = 0;
  for (int b = 0; b < batches; ++b) {
    rngs.push_back(root.split());
    long take = (samples * (b + 1)) / batches - done;
    counts.push_back(take);
    done += take;
  }
  std::vector<std::future<SubmeanReport>> futs;
  for (int b = 0; b < batches; ++b) {
    futs.push_back(std::async(std::launch::async, [&, b] {
      return submean_batch(g, counts[b], rho_min, rho_max, rngs[b]);
    }));
  }
  SubmeanReport total;
  for (auto& f : futs) {
    SubmeanReport r = f.get();
    total.samples += r.samples;
    total.violations += r.violations;
    if (r.worst_margin > total.worst_margin) {
      total.worst_margin = r.worst_margin;
      total.worst = r.worst;
    }
  }
  return total;
}

}  // namespace radial
