#include "radial/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radial::io {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw SpecError(where + ": unknown key '" + key + "'");
  }
}

double num(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw SpecError(where + ": missing numeric '" + std::string(key) + "'");
  return j[key].get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j[key].get<double>() : fallback;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_tag(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

json profile_to_json(const RadialProfile& p) {
  json j;
  j["left_slope"] = p.left_slope();
  j["right_slope"] = p.right_slope();
  json segs = json::array();
  for (const auto& seg : p.segments()) {
    json s;
    s["s_lo"] = seg.s_lo;
    s["s_hi"] = seg.s_hi;
    s["c0"] = seg.c0;
    s["c1"] = seg.c1;
    s["c2"] = seg.c2;
    s["c3"] = seg.c3;
    if (seg.run >= 0) s["run"] = seg.run;
    segs.push_back(std::move(s));
  }
  j["segments"] = std::move(segs);
  if (p.segments().empty()) j["anchor"] = {p.s_first(), p.value(p.s_first())};
  return j;
}

RadialProfile profile_from_json(const json& j) {
  check_keys(j, {"left_slope", "right_slope", "segments", "breakpoints", "anchor"},
             "profile");
  double left = num(j, "left_slope", "profile");
  double right = num(j, "right_slope", "profile");
  try {
    if (j.contains("breakpoints")) {
      std::vector<std::pair<double, double>> bps;
      for (const auto& b : j["breakpoints"])
        bps.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
      return RadialProfile::from_breakpoints(std::move(bps), left, right);
    }
    if (j.contains("anchor")) {
      double s = j["anchor"].at(0).get<double>();
      double v = j["anchor"].at(1).get<double>();
      return RadialProfile::from_breakpoints({{s, v}}, left, right);
    }
    std::vector<ProfileSegment> segs;
    for (const auto& s : j.at("segments")) {
      check_keys(s, {"s_lo", "s_hi", "c0", "c1", "c2", "c3", "run"}, "profile segment");
      ProfileSegment seg;
      seg.s_lo = num(s, "s_lo", "segment");
      seg.s_hi = num(s, "s_hi", "segment");
      seg.c0 = num(s, "c0", "segment");
      seg.c1 = num(s, "c1", "segment");
      seg.c2 = num_or(s, "c2", 0.0);
      seg.c3 = num_or(s, "c3", 0.0);
      seg.run = s.contains("run") ? s["run"].get<int>() : -1;
      segs.push_back(seg);
    }
    return RadialProfile::from_segments(std::move(segs), left, right);
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("profile: ") + e.what());
  }
}

json measure_to_json(const RadialMeasure& m) {
  json j;
  j["n"] = m.dimension();
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({a.r, a.mass});
  j["atoms"] = std::move(atoms);
  json pieces = json::array();
  for (const auto& p : m.pieces()) {
    json pj;
    if (const auto* pp = std::get_if<PowerPiece>(&p)) {
      pj["type"] = "power";
      pj["t_lo"] = pp->t_lo;
      pj["t_hi"] = pp->t_hi;
      pj["a"] = pp->a;
      pj["b"] = pp->b;
      pj["g"] = pp->g;
      pj["scale"] = pp->scale;
    } else {
      const auto& tp = std::get<TablePiece>(p);
      pj["type"] = "table";
      pj["t"] = tp.t;
      pj["cum"] = tp.cum;
    }
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  j["total_mass"] = m.total_mass();
  return j;
}

RadialMeasure measure_from_json(const json& j) {
  check_keys(j, {"n", "atoms", "pieces", "total_mass"}, "measure");
  int n = j.contains("n") ? j["n"].get<int>() : 0;
  if (n < 1) throw SpecError("measure: dimension n must be a positive integer");
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"]) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
  std::vector<MeasurePiece> pieces;
  if (j.contains("pieces")) {
    for (const auto& pj : j["pieces"]) {
      check_keys(pj, {"type", "t_lo", "t_hi", "a", "b", "g", "scale", "t", "cum"},
                 "measure piece");
      std::string type = pj.contains("type") ? pj["type"].get<std::string>() : "power";
      if (type == "power") {
        PowerPiece pp;
        pp.t_lo = num(pj, "t_lo", "piece");
        pp.t_hi = num(pj, "t_hi", "piece");
        pp.a = num(pj, "a", "piece");
        pp.b = num(pj, "b", "piece");
        pp.g = num(pj, "g", "piece");
        pp.scale = num_or(pj, "scale", 1.0);
        pieces.push_back(pp);
      } else if (type == "table") {
        TablePiece tp;
        tp.t = pj.at("t").get<std::vector<double>>();
        tp.cum = pj.at("cum").get<std::vector<double>>();
        pieces.push_back(tp);
      } else {
        throw SpecError("measure piece: unknown type '" + type + "'");
      }
    }
  }
  try {
    return RadialMeasure(n, std::move(atoms), std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("measure: ") + e.what());
  }
}

json weight_to_json(const RadialWeight& w) {
  json j;
  if (const auto* c = std::get_if<ConstantWeight>(&w.kind())) {
    j["kind"] = "constant";
    j["c"] = c->c;
  } else if (const auto* l = std::get_if<ScaledLogWeight>(&w.kind())) {
    j["kind"] = "scaled_log";
    j["alpha"] = l->alpha;
    j["c"] = l->c;
  } else if (const auto* p = std::get_if<PowerWeight>(&w.kind())) {
    j["kind"] = "power";
    j["A"] = p->A;
    j["beta"] = p->beta;
    j["c"] = p->c;
  } else if (const auto* t = std::get_if<TableWeight>(&w.kind())) {
    j["kind"] = "table";
    json samples = json::array();
    for (const auto& [s, q] : t->samples) samples.push_back({s, q});
    j["samples"] = std::move(samples);
  } else {
    const auto& sp = std::get<ScaledProfileWeight>(w.kind());
    j["kind"] = "scaled_profile";
    j["lambda"] = sp.lambda;
    j["profile"] = profile_to_json(sp.profile);
  }
  return j;
}

json set_to_json(const RadialSet& k) {
  json j = json::array();
  for (const auto& iv : k.intervals()) j.push_back({iv.lo, iv.hi});
  return j;
}

namespace {

RadialSet set_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("set: expected a nonempty array of [lo, hi]");
  std::vector<RadialSet::Interval> ivs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw SpecError("set: each entry must be [lo, hi]");
    ivs.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  }
  try {
    return RadialSet(std::move(ivs));
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("set: ") + e.what());
  }
}

RadialWeight weight_from_json(const json& j, const RadialSet& domain) {
  check_keys(j, {"kind", "c", "alpha", "A", "beta", "samples", "lambda", "profile"},
             "weight");
  if (!j.contains("kind")) throw SpecError("weight: missing 'kind'");
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "constant") return {ConstantWeight{num(j, "c", "weight")}, domain};
    if (kind == "scaled_log")
      return {ScaledLogWeight{num(j, "alpha", "weight"), num(j, "c", "weight")}, domain};
    if (kind == "power")
      return {PowerWeight{num(j, "A", "weight"), num(j, "beta", "weight"),
                          num_or(j, "c", 0.0)},
              domain};
    if (kind == "table") {
      TableWeight t;
      for (const auto& s : j.at("samples"))
        t.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
      return {std::move(t), domain};
    }
    if (kind == "scaled_profile") {
      ScaledProfileWeight sp{num_or(j, "lambda", 1.0), profile_from_json(j.at("profile"))};
      if (!(sp.lambda > 0.0)) throw SpecError("weight: lambda must be positive");
      return {std::move(sp), domain};
    }
  } catch (const std::domain_error& e) {
    throw SpecError(std::string("weight: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("weight: ") + e.what());
  }
  throw SpecError("weight: unknown kind '" + kind + "'");
}

}  // namespace

ProblemSpec problem_from_spec(const json& j) {
  check_keys(j, {"schema", "n", "set", "weight", "mode", "grid", "output"}, "spec");
  if (!j.contains("schema") || j["schema"] != "equilib/problem-v1")
    throw SpecError("spec: schema must be 'equilib/problem-v1'");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw SpecError("spec: n must be a positive integer");
  if (!j.contains("set")) throw SpecError("spec: missing 'set'");
  if (!j.contains("weight")) throw SpecError("spec: missing 'weight'");

  RadialSet K = set_from_json(j["set"]);
  RadialWeight Q = weight_from_json(j["weight"], K);

  Mode mode = Mode::kGlobal;
  double omega = 0.0;
  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m.is_string() && m == "global") {
      mode = Mode::kGlobal;
    } else if (m.is_object() && m.contains("relative")) {
      check_keys(m, {"relative"}, "mode");
      mode = Mode::kRelative;
      omega = m["relative"].get<double>();
      if (!(omega > 0.0)) throw SpecError("mode: relative radius must be positive");
    } else {
      throw SpecError("mode: expected \"global\" or {\"relative\": R}");
    }
  }

  GridSpec grid;
  if (j.contains("grid")) {
    check_keys(j["grid"], {"points", "s_min", "s_max"}, "grid");
    if (j["grid"].contains("points")) {
      grid.points = j["grid"]["points"].get<int>();
      if (grid.points < 4) throw SpecError("grid: points must be >= 4");
    }
    grid.s_min = num_or(j["grid"], "s_min", grid.s_min);
    grid.s_max = num_or(j["grid"], "s_max", grid.s_max);
  }

  OutputPaths out;
  if (j.contains("output")) {
    check_keys(j["output"], {"report", "profile_csv", "cdf_csv", "csv_points"}, "output");
    if (j["output"].contains("report")) out.report = j["output"]["report"].get<std::string>();
    if (j["output"].contains("profile_csv"))
      out.profile_csv = j["output"]["profile_csv"].get<std::string>();
    if (j["output"].contains("cdf_csv")) out.cdf_csv = j["output"]["cdf_csv"].get<std::string>();
    out.csv_points = j["output"].contains("csv_points")
                         ? j["output"]["csv_points"].get<int>()
                         : out.csv_points;
  }

  return {Problem{j["n"].get<int>(), std::move(K), std::move(Q), mode, omega}, grid, out};
}

json problem_spec_to_json(const Problem& prob, const GridSpec& grid) {
  json j;
  j["schema"] = "equilib/problem-v1";
  j["n"] = prob.n;
  j["set"] = set_to_json(prob.K);
  j["weight"] = weight_to_json(prob.Q);
  if (prob.mode == Mode::kRelative) {
    j["mode"] = json{{"relative", prob.omega_radius}};
  } else {
    j["mode"] = "global";
  }
  json g;
  g["points"] = grid.points;
  if (std::isfinite(grid.s_min)) g["s_min"] = grid.s_min;
  if (std::isfinite(grid.s_max)) g["s_max"] = grid.s_max;
  j["grid"] = std::move(g);
  return j;
}

MeasureSpec measure_from_spec(const json& j, int truncation) {
  check_keys(j, {"schema", "n", "u0", "atoms", "pieces", "series"}, "measure-spec");
  if (!j.contains("schema") || j["schema"] != "equilib/measure-v1")
    throw SpecError("measure-spec: schema must be 'equilib/measure-v1'");
  MeasureSpec spec;
  spec.u0 = num_or(j, "u0", 0.0);
  if (j.contains("series")) {
    if (!j["series"].is_array() || j["series"].empty())
      throw SpecError("measure-spec: series must be a nonempty array of measures");
    std::vector<RadialMeasure> comps;
    for (const auto& c : j["series"]) comps.push_back(measure_from_json(c));
    int depth = std::min<int>(truncation, static_cast<int>(comps.size()));
    if (depth < 1) throw SpecError("measure-spec: truncation must keep at least one term");
    comps.resize(depth);
    std::vector<double> weights;
    double wsum = 0.0;
    for (int i = 1; i <= depth; ++i) {
      weights.push_back(std::pow(0.5, i));
      wsum += weights.back();
    }
    try {
      spec.measure = mixture(comps, weights);
    } catch (const std::domain_error& e) {
      throw SpecError(std::string("measure-spec: ") + e.what());
    }
    spec.series_depth = depth;
    spec.weight_sum = wsum;
  } else {
    json plain = j;
    plain.erase("schema");
    plain.erase("u0");
    spec.measure = measure_from_json(plain);
  }
  return spec;
}

ProfileSpec profile_from_spec(const json& j) {
  check_keys(j, {"schema", "n", "profile"}, "profile-spec");
  if (!j.contains("schema") || j["schema"] != "equilib/profile-v1")
    throw SpecError("profile-spec: schema must be 'equilib/profile-v1'");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw SpecError("profile-spec: n must be a positive integer");
  if (!j.contains("profile")) throw SpecError("profile-spec: missing 'profile'");
  return {j["n"].get<int>(), profile_from_json(j["profile"])};
}

GlueSpec glue_from_spec(const json& j) {
  check_keys(j,
             {"schema", "kind", "n", "interface_radius", "inner", "outer", "a0", "ak",
              "bk", "samples", "rho_min", "rho_max"},
             "glue-spec");
  if (!j.contains("schema") || j["schema"] != "equilib/glue-v1")
    throw SpecError("glue-spec: schema must be 'equilib/glue-v1'");
  GlueSpec spec;
  std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "radial";
  spec.samples = j.contains("samples") ? j["samples"].get<long>() : spec.samples;
  if (spec.samples < 1) throw SpecError("glue-spec: samples must be >= 1");
  spec.rho_min = num_or(j, "rho_min", spec.rho_min);
  spec.rho_max = num_or(j, "rho_max", spec.rho_max);
  if (!(spec.rho_min > 0.0 && spec.rho_min <= spec.rho_max))
    throw SpecError("glue-spec: need 0 < rho_min <= rho_max");
  if (kind == "disc") {
    spec.disc = true;
    spec.n = 1;
    spec.h.a0 = num_or(j, "a0", 0.0);
    if (j.contains("ak")) spec.h.ak = j["ak"].get<std::vector<double>>();
    if (j.contains("bk")) spec.h.bk = j["bk"].get<std::vector<double>>();
    return spec;
  }
  if (kind != "radial") throw SpecError("glue-spec: kind must be 'radial' or 'disc'");
  spec.n = j.contains("n") ? j["n"].get<int>() : 1;
  if (spec.n < 1) throw SpecError("glue-spec: n must be a positive integer");
  spec.interface_radius = num(j, "interface_radius", "glue-spec");
  if (!(spec.interface_radius > 0.0))
    throw SpecError("glue-spec: interface_radius must be positive");
  if (!j.contains("inner") || !j.contains("outer"))
    throw SpecError("glue-spec: radial kind needs 'inner' and 'outer' weights");
  RadialSet domain = RadialSet::shell(spec.interface_radius * 0.5,
                                      spec.interface_radius * 2.0);
  spec.inner = weight_from_json(j["inner"], domain);
  spec.outer = weight_from_json(j["outer"], domain);
  return spec;
}

json solution_report(const Problem& prob, const GridSpec& grid, const Solution& sol,
                     const std::string& spec_hash, std::uint64_t seed) {
  json j;
  j["schema"] = "equilib/solution-v1";
  j["tool_version"] = kToolVersion;
  json prov;
  prov["spec_hash"] = spec_hash;
  prov["seed"] = seed;
  j["provenance"] = std::move(prov);
  j["problem"] = problem_spec_to_json(prob, grid);
  j["profile"] = profile_to_json(sol.V);
  ClassFlags flags = check_class(sol.V);
  json cls;
  cls["is_psh_radial"] = flags.is_psh_radial;
  cls["in_L"] = flags.in_L;
  cls["in_L_plus"] = flags.in_L_plus;
  cls["bounded_below"] = flags.bounded_below;
  j["class"] = std::move(cls);
  j["measure"] = measure_to_json(sol.measure);
  json sup;
  sup["atoms"] = sol.support.atoms;
  json ivs = json::array();
  for (const auto& iv : sol.support.density_intervals) ivs.push_back({iv.lo, iv.hi});
  sup["density_intervals"] = std::move(ivs);
  sup["origin_mass"] = sol.support.origin_mass;
  j["support"] = std::move(sup);
  json con;
  con["isolated_radii"] = sol.contact.isolated_radii;
  json civs = json::array();
  for (const auto& iv : sol.contact.intervals) civs.push_back({iv.lo, iv.hi});
  con["intervals"] = std::move(civs);
  j["contact"] = std::move(con);
  json diag;
  diag["grid_points"] = sol.diagnostics.grid_points;
  diag["hull_vertices"] = sol.diagnostics.hull_vertices;
  diag["repair_iterations"] = sol.diagnostics.repair_iterations;
  diag["max_constraint_violation"] = sol.diagnostics.max_constraint_violation;
  diag["resolution_ok"] = sol.diagnostics.resolution_ok;
  diag["required_points"] = sol.diagnostics.required_points;
  j["diagnostics"] = std::move(diag);
  return j;
}

namespace {

std::string render_row(double a, double b) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.15e,%.15e\n", a, b);
  return buf;
}

}  // namespace

std::string profile_csv(const RadialProfile& p, double r_max, int points) {
  std::string out = "r,V\n";
  for (int i = 0; i <= points; ++i) {
    double r = r_max * i / points;
    out += render_row(r, p.value_at_radius(r));
  }
  return out;
}

std::string cdf_csv(const RadialMeasure& m, double r_max, int points) {
  std::string out = "r,f\n";
  for (int i = 0; i <= points; ++i) {
    double r = r_max * i / points;
    out += render_row(r, m.cdf(r));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SpecError("cannot write file: " + path);
  out << content;
}

}  // namespace radial::io
