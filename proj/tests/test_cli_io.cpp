#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "radial/cli.hpp"
#include "radial/gallery.hpp"
#include "radial/io.hpp"

using namespace radial;
namespace fs = std::filesystem;
using io::json;

namespace {

const std::string kFixtures = FIXTURES_DIR;

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("equilib_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs the CLI in-process with stdout redirected into a string.
int run_captured(const std::vector<std::string>& args, std::string& out) {
  std::fflush(stdout);
  fs::path path = fs::temp_directory_path() / "equilib_capture.txt";
  int saved = dup(1);
  FILE* f = std::freopen(path.c_str(), "w", stdout);
  REQUIRE(f != nullptr);
  int code = cli::run(args);
  std::fflush(stdout);
  dup2(saved, 1);
  close(saved);
  out = io::read_file(path.string());
  return code;
}

std::string slurp(const fs::path& p) { return io::read_file(p.string()); }

}  // namespace

TEST_CASE("profile and measure JSON round trips") {
  RadialProfile p = RadialProfile::from_breakpoints({{-1.0, -1.5}, {0.0, -1.0}}, 0.0, 0.5);
  RadialProfile q = io::profile_from_json(io::profile_to_json(p));
  for (double s : {-4.0, -1.0, -0.3, 0.0, 2.0})
    CHECK(q.value(s) == doctest::Approx(p.value(s)).epsilon(1e-15));

  RadialMeasure m = RadialMeasure::shell(3, 1.0, 2.0);
  RadialMeasure back = io::measure_from_json(io::measure_to_json(m));
  CHECK(cdf_sup_distance(m, back, 500) <= 1e-12);
}

TEST_CASE("spec validation rejects unknown keys and bad schemas") {
  json good = json::parse(slurp(kFixtures + "/example1.json"));
  CHECK_NOTHROW(io::problem_from_spec(good));

  json bad = good;
  bad["extra"] = 1;
  CHECK_THROWS_AS(io::problem_from_spec(bad), io::SpecError);

  bad = good;
  bad["schema"] = "equilib/problem-v2";
  CHECK_THROWS_AS(io::problem_from_spec(bad), io::SpecError);

  bad = good;
  bad["weight"]["typo"] = true;
  CHECK_THROWS_AS(io::problem_from_spec(bad), io::SpecError);

  bad = good;
  bad["set"] = json::array();
  CHECK_THROWS_AS(io::problem_from_spec(bad), io::SpecError);
}

TEST_CASE("cmd_solve writes a report whose pieces re-measure consistently") {
  fs::path dir = temp_dir("solve");
  std::string out;
  int code = run_captured(
      {"solve", kFixtures + "/example2.json", "--out-dir", dir.string()}, out);
  CHECK(code == 0);

  json report = json::parse(slurp(dir / "example2.report.json"));
  CHECK(report["schema"] == "equilib/solution-v1");
  // support atoms at e^{-1/2} and 1
  REQUIRE(report["support"]["atoms"].size() == 2);
  CHECK(report["support"]["atoms"][0].get<double>() ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
  CHECK(report["support"]["atoms"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  // re-ingest round trip: the embedded profile re-measures to the embedded measure
  RadialProfile V = io::profile_from_json(report["profile"]);
  RadialMeasure m = io::measure_from_json(report["measure"]);
  RadialMeasure again = ma_cdf(V, m.dimension());
  CHECK(cdf_sup_distance(m, again, 2000) <= 1e-9);

  // CSV exports exist and carry 15-digit scientific radii
  std::string csv = slurp(dir / "example2.v.csv");
  CHECK(csv.substr(0, 4) == "r,V\n");
  CHECK(csv.find("e+00,") != std::string::npos);
  double r0, v0;
  REQUIRE(std::sscanf(csv.c_str() + 4, "%lf,%lf", &r0, &v0) == 2);
  CHECK(r0 == 0.0);
  CHECK(v0 == doctest::Approx(V.value_at_radius(0.0)));
}

TEST_CASE("repeated runs produce byte-identical reports") {
  fs::path a = temp_dir("det_a");
  fs::path b = temp_dir("det_b");
  std::string out;
  CHECK(run_captured({"solve", kFixtures + "/shell.json", "--out-dir", a.string()}, out) == 0);
  CHECK(run_captured({"solve", kFixtures + "/shell.json", "--out-dir", b.string()}, out) == 0);
  CHECK(slurp(a / "shell.report.json") == slurp(b / "shell.report.json"));

  json report = json::parse(slurp(a / "shell.report.json"));
  REQUIRE(report["support"]["density_intervals"].size() == 1);
  CHECK(report["support"]["density_intervals"][0][0].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report["support"]["density_intervals"][0][1].get<double>() ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-9));
}

TEST_CASE("exit codes follow the 0/2/3 contract") {
  std::string out;
  SUBCASE("missing file is a validation error") {
    CHECK(run_captured({"solve", kFixtures + "/no_such_file.json"}, out) == 2);
  }
  SUBCASE("an empty set is a validation error") {
    CHECK(run_captured({"solve", kFixtures + "/invalid_empty_set.json"}, out) == 2);
  }
  SUBCASE("a positive weight in relative mode is a solver error") {
    CHECK(run_captured({"solve", kFixtures + "/invalid_positive_relative.json"}, out) == 3);
  }
  SUBCASE("unknown flags are validation errors") {
    CHECK(run_captured({"solve", kFixtures + "/example1.json", "--bogus"}, out) == 2);
  }
}

TEST_CASE("cmd_measure reports the zero measure of a constant profile") {
  std::string out;
  int code = run_captured({"measure", kFixtures + "/profile_constant.json"}, out);
  CHECK(code == 0);
  json j = json::parse(out);
  CHECK(j["measure"]["total_mass"].get<double>() == 0.0);
  CHECK(j["measure"]["atoms"].empty());
  CHECK(j["support"]["atoms"].empty());
}

TEST_CASE("cmd_measure puts the unit-sphere atom of log+ where it belongs") {
  std::string out;
  int code = run_captured({"measure", kFixtures + "/profile_logplus.json"}, out);
  CHECK(code == 0);
  json j = json::parse(out);
  REQUIRE(j["measure"]["atoms"].size() == 1);
  CHECK(j["measure"]["atoms"][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["measure"]["atoms"][0][1].get<double>() ==
        doctest::Approx(full_mass(3)).epsilon(1e-12));
}

TEST_CASE("cmd_reconstruct recovers max(0, log r - log r1) from the sphere measure") {
  std::string out;
  int code = run_captured({"reconstruct", kFixtures + "/sphere_measure.json"}, out);
  CHECK(code == 0);
  json j = json::parse(out);
  CHECK(j["class"]["in_L_plus"].get<bool>());
  RadialProfile u = io::profile_from_json(j["profile"]);
  for (double r : {0.5, 2.0, 4.0, 10.0})
    CHECK(u.value_at_radius(r) ==
          doctest::Approx(std::max(0.0, std::log(r) - std::log(2.0))).epsilon(1e-10));
}

TEST_CASE("cmd_reconstruct reports the truncation deficit of a series") {
  std::string out;
  int code = run_captured(
      {"reconstruct", kFixtures + "/union_series.json", "--truncation", "8"}, out);
  CHECK(code == 0);
  json j = json::parse(out);
  CHECK(j["series_depth"].get<int>() == 8);
  double expect = full_mass(2) * (1.0 - std::pow(0.5, 8));
  CHECK(j["total_mass"].get<double>() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(j["l_plus_mass_deficit"].get<double>() ==
        doctest::Approx(full_mass(2) * std::pow(0.5, 8)).epsilon(1e-9));
  CHECK(j["class"]["in_L"].get<bool>());
  CHECK_FALSE(j["class"]["in_L_plus"].get<bool>());

  // a shallower truncation keeps less mass
  CHECK(run_captured(
            {"reconstruct", kFixtures + "/union_series.json", "--truncation", "3"}, out) ==
        0);
  json j3 = json::parse(out);
  CHECK(j3["total_mass"].get<double>() ==
        doctest::Approx(full_mass(2) * (1.0 - std::pow(0.5, 3))).epsilon(1e-12));
}

TEST_CASE("cmd_reconstruct rejects inadmissible measures with exit 3") {
  fs::path dir = temp_dir("inadmissible");
  io::write_file((dir / "origin_atom.json").string(), R"({
    "schema": "equilib/measure-v1",
    "n": 2,
    "atoms": [[0.0, 1.0]],
    "pieces": []
  })");
  std::string out;
  CHECK(run_captured({"reconstruct", (dir / "origin_atom.json").string()}, out) == 3);
}

TEST_CASE("cmd_glue_check verdicts") {
  std::string out;
  SUBCASE("quadratic ball at the threshold passes with zero violations") {
    int code = run_captured(
        {"glue-check", kFixtures + "/glue_quad.json", "--seed", "20250809"}, out);
    CHECK(code == 0);
    json j = json::parse(out);
    CHECK(j["continuous"].get<bool>());
    CHECK(j["derivative_ok"].get<bool>());
    CHECK(std::fabs(j["margin"].get<double>()) <= 1e-12);
    CHECK(j["submean"]["violations"].get<long>() == 0);
  }
  SUBCASE("the disc reflection of Re(z)/2 is accepted") {
    int code = run_captured(
        {"glue-check", kFixtures + "/glue_disc.json", "--seed", "20250809"}, out);
    CHECK(code == 0);
    json j = json::parse(out);
    CHECK(j["accepted"].get<bool>());
    CHECK(j["worst_normal_derivative"].get<double>() == doctest::Approx(0.5));
    CHECK(j["submean"]["violations"].get<long>() == 0);
  }
}

TEST_CASE("cmd_compare flags the one-sided absolute continuity of Example 1") {
  fs::path dir = temp_dir("compare");
  std::string out;
  REQUIRE(run_captured({"solve", kFixtures + "/example1_relative2.json", "--out-dir",
                        dir.string()},
                       out) == 0);
  REQUIRE(run_captured({"solve", kFixtures + "/example1.json", "--out-dir", dir.string()},
                       out) == 0);
  int code = run_captured({"compare", (dir / "example1_relative2.report.json").string(),
                           (dir / "example1.report.json").string(), "--json"},
                          out);
  CHECK(code == 0);
  json j = json::parse(out);
  CHECK_FALSE(j["m1_ll_m2"].get<bool>());
  CHECK(j["m2_ll_m1"].get<bool>());
}

TEST_CASE("the gallery command fails with resolution diagnostics on a 16-point budget") {
  std::string out;
  int code = run_captured({"gallery", "--grid-points", "16", "--json"}, out);
  CHECK(code == 1);
  json j = json::parse(out);
  CHECK_FALSE(j["all_pass"].get<bool>());
  bool found = false;
  for (const auto& f : j["fixtures"]) {
    if (f["name"] == "shell") {
      CHECK_FALSE(f["pass"].get<bool>());
      CHECK_FALSE(f["resolution_ok"].get<bool>());
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("gallery reports can be written to an output directory") {
  fs::path dir = temp_dir("galleryout");
  GridSpec grid;
  gallery::Outcome out = gallery::run_fixture("example1-global", grid, 1);
  REQUIRE(out.solution != nullptr);
  json rep = io::solution_report(*out.problem, grid, *out.solution, "fixture:test", 1);
  io::write_file((dir / "x.json").string(), rep.dump(2));
  json back = json::parse(slurp(dir / "x.json"));
  CHECK(back["problem"]["n"].get<int>() == 2);
}

TEST_CASE("spec hashes are stable") {
  CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(io::hash_tag("abc") == io::hash_tag("abc"));
  CHECK(io::hash_tag("abc") != io::hash_tag("abd"));
}
