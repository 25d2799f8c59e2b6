#include "radial/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "radial/gallery.hpp"
#include "radial/io.hpp"

namespace radial::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitFixtureFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

json parse_file(const std::string& path) {
  std::string text = io::read_file(path);
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw io::SpecError(path + ": " + e.what());
  }
}

std::string resolve_out(const std::string& out_dir, const std::string& spec_path,
                        const std::string& requested, const std::string& fallback_suffix) {
  fs::path base = out_dir.empty() ? fs::path(spec_path).parent_path() : fs::path(out_dir);
  fs::path p = requested.empty()
                   ? fs::path(fs::path(spec_path).stem().string() + fallback_suffix)
                   : fs::path(requested);
  if (p.is_absolute()) return p.string();
  return (base / p).string();
}

double report_radius(const Solution& sol, const Problem& prob) {
  double r = prob.K.max_radius();
  if (prob.mode == Mode::kRelative) r = std::max(r, prob.omega_radius);
  for (const auto& a : sol.measure.atoms()) r = std::max(r, a.r);
  return 1.2 * r;
}

int cmd_solve(const std::string& spec_path, int grid_points_override,
              const std::string& out_dir, std::uint64_t seed) {
  std::string text = io::read_file(spec_path);
  io::ProblemSpec spec = io::problem_from_spec(json::parse(text, nullptr, true));
  if (grid_points_override > 0) spec.grid.points = grid_points_override;

  Solution sol = solve(spec.problem, spec.grid);

  json report = io::solution_report(spec.problem, spec.grid, sol, io::hash_tag(text), seed);
  std::string report_path =
      resolve_out(out_dir, spec_path, spec.output.report.value_or(""), ".report.json");
  io::write_file(report_path, report.dump(2) + "\n");

  double r_max = report_radius(sol, spec.problem);
  if (spec.output.profile_csv) {
    io::write_file(resolve_out(out_dir, spec_path, *spec.output.profile_csv, ".v.csv"),
                   io::profile_csv(sol.V, r_max, spec.output.csv_points));
  }
  if (spec.output.cdf_csv) {
    io::write_file(resolve_out(out_dir, spec_path, *spec.output.cdf_csv, ".f.csv"),
                   io::cdf_csv(sol.measure, r_max, spec.output.csv_points));
  }

  std::cout << "solved: mass=" << sol.measure.total_mass()
            << " atoms=" << sol.support.atoms.size()
            << " density_intervals=" << sol.support.density_intervals.size()
            << " report=" << report_path << "\n";
  return kExitOk;
}

int cmd_measure(const std::string& spec_path, const std::string& out_file) {
  io::ProfileSpec spec = io::profile_from_spec(parse_file(spec_path));
  RadialMeasure m = ma_cdf(spec.profile, spec.n);
  SupportReport sup = support(m);
  json j;
  j["schema"] = "equilib/measure-report-v1";
  j["tool_version"] = io::kToolVersion;
  j["measure"] = io::measure_to_json(m);
  j["support"]["atoms"] = sup.atoms;
  json ivs = json::array();
  for (const auto& iv : sup.density_intervals) ivs.push_back({iv.lo, iv.hi});
  j["support"]["density_intervals"] = std::move(ivs);
  j["support"]["origin_mass"] = sup.origin_mass;
  std::string text = j.dump(2) + "\n";
  if (out_file.empty())
    std::cout << text;
  else
    io::write_file(out_file, text);
  return kExitOk;
}

int cmd_reconstruct(const std::string& spec_path, int truncation,
                    const std::string& out_file) {
  io::MeasureSpec spec = io::measure_from_spec(parse_file(spec_path), truncation);
  AdmissibilityReport adm = admissible(spec.measure);
  if (!adm.admissible) {
    std::cerr << "inadmissible measure: " << adm.diagnostic << "\n";
    return kExitSolver;
  }
  RadialProfile u = reconstruct(spec.measure, spec.u0);
  ClassFlags flags = check_class(u);
  int n = spec.measure.dimension();
  json j;
  j["schema"] = "equilib/profile-report-v1";
  j["tool_version"] = io::kToolVersion;
  j["profile"] = io::profile_to_json(u);
  j["class"]["is_psh_radial"] = flags.is_psh_radial;
  j["class"]["in_L"] = flags.in_L;
  j["class"]["in_L_plus"] = flags.in_L_plus;
  j["class"]["bounded_below"] = flags.bounded_below;
  j["total_mass"] = spec.measure.total_mass();
  j["l_plus_mass_deficit"] = full_mass(n) - spec.measure.total_mass();
  if (spec.series_depth > 0) {
    j["series_depth"] = spec.series_depth;
    j["series_weight_sum"] = spec.weight_sum;
  }
  std::string text = j.dump(2) + "\n";
  if (out_file.empty())
    std::cout << text;
  else
    io::write_file(out_file, text);
  return kExitOk;
}

int cmd_glue_check(const std::string& spec_path, std::uint64_t seed, long samples_override) {
  io::GlueSpec spec = io::glue_from_spec(parse_file(spec_path));
  long samples = samples_override > 0 ? samples_override : spec.samples;
  json j;
  j["schema"] = "equilib/glue-report-v1";
  j["tool_version"] = io::kToolVersion;
  j["seed"] = seed;
  if (spec.disc) {
    DiscGlueResult res = disc_reflection_glue(spec.h);
    j["kind"] = "disc";
    j["accepted"] = res.accepted;
    j["worst_theta"] = res.worst_theta;
    j["worst_normal_derivative"] = res.worst_abs;
    if (res.accepted) {
      SubmeanReport rep = submean_check(res.g, samples, spec.rho_min, spec.rho_max, seed);
      j["submean"]["samples"] = rep.samples;
      j["submean"]["violations"] = rep.violations;
      j["submean"]["worst_margin"] = rep.worst_margin;
    }
  } else {
    C1Radial inner = curve_from_weight(*spec.inner);
    C1Radial outer = curve_from_weight(*spec.outer);
    GlueCheck chk = radial_glue_check(inner, outer, spec.interface_radius);
    j["kind"] = "radial";
    j["continuous"] = chk.continuous;
    j["derivative_ok"] = chk.derivative_ok;
    j["margin"] = chk.margin;
    j["value_mismatch"] = chk.mismatch;
    if (chk.continuous) {
      GluedFunction g = glue_radial(spec.n, spec.interface_radius, inner, outer);
      SubmeanReport rep = submean_check(g, samples, spec.rho_min, spec.rho_max, seed);
      j["submean"]["samples"] = rep.samples;
      j["submean"]["violations"] = rep.violations;
      j["submean"]["worst_margin"] = rep.worst_margin;
    }
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& path1, const std::string& path2, bool as_json) {
  auto load_measure = [](const std::string& path) {
    json j = parse_file(path);
    if (j.contains("measure")) return io::measure_from_json(j["measure"]);
    return io::measure_from_json(j);
  };
  RadialMeasure m1 = load_measure(path1);
  RadialMeasure m2 = load_measure(path2);
  if (m1.dimension() != m2.dimension())
    throw std::domain_error("compare: measures have different dimensions");
  AbsContinuity ac = compare_abs_continuity(m1, m2, default_atom_tol(m1.dimension()));
  if (as_json) {
    json j;
    j["m1_ll_m2"] = ac.m1_ll_m2;
    j["m2_ll_m1"] = ac.m2_ll_m1;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "m1 << m2: " << (ac.m1_ll_m2 ? "true" : "false") << "\n"
              << "m2 << m1: " << (ac.m2_ll_m1 ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_gallery(bool as_json, int grid_points, const std::string& out_dir,
                std::uint64_t seed) {
  GridSpec grid;
  if (grid_points > 0) grid.points = grid_points;
  gallery::GalleryResult res = gallery::run_all(grid, seed);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (const auto& out : res.outcomes) {
      if (!out.solution || !out.problem) continue;
      json rep = io::solution_report(*out.problem, grid, *out.solution,
                                     "fixture:" + out.name, seed);
      io::write_file((fs::path(out_dir) / (out.name + ".report.json")).string(),
                     rep.dump(2) + "\n");
    }
  }

  if (as_json) {
    json j;
    j["all_pass"] = res.all_pass;
    j["wall_ms"] = res.wall_ms;
    json fixtures = json::array();
    for (const auto& out : res.outcomes) {
      json f;
      f["name"] = out.name;
      f["pass"] = out.pass;
      f["profile_err"] = out.profile_err;
      f["support_err"] = out.support_err;
      f["mass_err"] = out.mass_err;
      f["resolution_ok"] = out.resolution_ok;
      f["wall_ms"] = out.wall_ms;
      if (!out.detail.empty()) f["detail"] = out.detail;
      fixtures.push_back(std::move(f));
    }
    j["fixtures"] = std::move(fixtures);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& out : res.outcomes) {
      std::printf("%-22s %s  profile_err=%.3e support_err=%.3e mass_err=%.3e  %7.1f ms%s%s\n",
                  out.name.c_str(), out.pass ? "PASS" : "FAIL", out.profile_err,
                  out.support_err, out.mass_err, out.wall_ms,
                  out.detail.empty() ? "" : "  -- ", out.detail.c_str());
    }
    std::printf("gallery: %s (%.1f ms total)\n", res.all_pass ? "all PASS" : "FAILURES",
                res.wall_ms);
  }
  return res.all_pass ? kExitOk : kExitFixtureFail;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"weighted equilibrium measures of radially symmetric sets"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, out_file, path1, path2;
  int grid_points = 0;
  int truncation = 20;
  long samples = 0;
  std::uint64_t seed = 1;
  bool as_json = false;

  auto* solve_cmd = app.add_subcommand("solve", "solve a problem spec");
  solve_cmd->add_option("spec", spec_path, "problem spec JSON")->required();
  solve_cmd->add_option("--grid-points", grid_points, "constraint point budget");
  solve_cmd->add_option("--out-dir", out_dir, "directory for outputs");
  solve_cmd->add_option("--seed", seed, "seed recorded in the report");

  auto* measure_cmd = app.add_subcommand("measure", "Monge-Ampere measure of a profile");
  measure_cmd->add_option("spec", spec_path, "profile spec JSON")->required();
  measure_cmd->add_option("--out", out_file, "output file (stdout otherwise)");

  auto* rec_cmd = app.add_subcommand("reconstruct", "profile generating a measure");
  rec_cmd->add_option("spec", spec_path, "measure spec JSON")->required();
  rec_cmd->add_option("--truncation", truncation, "series truncation depth")
      ->check(CLI::PositiveNumber);
  rec_cmd->add_option("--out", out_file, "output file (stdout otherwise)");

  auto* glue_cmd = app.add_subcommand("glue-check", "normal-derivative and submean checks");
  glue_cmd->add_option("spec", spec_path, "glue spec JSON")->required();
  glue_cmd->add_option("--seed", seed, "sampling seed");
  glue_cmd->add_option("--samples", samples, "sample count override");

  auto* cmp_cmd = app.add_subcommand("compare", "mutual absolute continuity of two measures");
  cmp_cmd->add_option("report1", path1, "first report/measure JSON")->required();
  cmp_cmd->add_option("report2", path2, "second report/measure JSON")->required();
  cmp_cmd->add_flag("--json", as_json, "machine-readable output");

  auto* gal_cmd = app.add_subcommand("gallery", "run the closed-form fixture gallery");
  gal_cmd->add_flag("--json", as_json, "machine-readable output");
  gal_cmd->add_option("--grid-points", grid_points, "constraint point budget");
  gal_cmd->add_option("--out-dir", out_dir, "directory for fixture reports");
  gal_cmd->add_option("--seed", seed, "sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(spec_path, grid_points, out_dir, seed);
    if (measure_cmd->parsed()) return cmd_measure(spec_path, out_file);
    if (rec_cmd->parsed()) return cmd_reconstruct(spec_path, truncation, out_file);
    if (glue_cmd->parsed()) return cmd_glue_check(spec_path, seed, samples);
    if (cmp_cmd->parsed()) return cmd_compare(path1, path2, as_json);
    if (gal_cmd->parsed()) return cmd_gallery(as_json, grid_points, out_dir, seed);
  } catch (const io::SpecError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitValidation;
}

}  // namespace radial::cli
