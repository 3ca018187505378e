#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sl2wave/scenario.hpp"

using namespace sl2wave;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sl2wave_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kTrajectoryHeader = "x,re_alpha,im_alpha,re_beta,im_beta,s0,s1,s2,s3";

}  // namespace

TEST_CASE("built-in presets parse into runnable scenarios") {
  const auto fig4 = preset("fig4");
  REQUIRE(fig4.size() == 2);
  CHECK(fig4[0].name == "fig4_pos");
  CHECK(fig4[0].length == doctest::Approx(100.0));
  const ThreeVector e = epsilon_vector(fig4[0].profile, 0.0);
  CHECK(e.v1 == doctest::Approx(-2.0 * pi / 400.0));
  CHECK(e.v2 == doctest::Approx(pi / 400.0));
  CHECK(e.v3 == doctest::Approx(3.0 * pi / 400.0));
  const auto* init = std::get_if<InitialReal>(&fig4[0].initial);
  REQUIRE(init != nullptr);
  CHECK(init->A == 1.0);
  CHECK(init->B == 0.0);

  const auto free_sc = preset("free");
  REQUIRE(free_sc.size() == 1);
  CHECK(epsilon_vector(free_sc[0].profile, 1.0).norm() == 0.0);

  for (const std::string& name : preset_names()) CHECK(!preset(name).empty());
  CHECK_THROWS_AS(preset("does-not-exist"), std::invalid_argument);
}

TEST_CASE("config parsing validates keys and types") {
  const Scenario sc = parse_scenario(R"({
    "name": "demo",
    "k": 2.0,
    "length": 50.0,
    "step": 0.02,
    "profile": {"eps0": 0.01, "epsc": {"type": "constant", "value": 0.02}},
    "initial": {"type": "real", "A": 1.0, "B": 0.5},
    "analyses": ["propagate", "classify"]
  })");
  CHECK(sc.name == "demo");
  // lengths are interpreted in units of 1/k
  CHECK(sc.length == doctest::Approx(25.0));
  CHECK(sc.step == doctest::Approx(0.01));
  CHECK(sc.profile.k == 2.0);
  const auto [e0, ec, es] = sc.profile.channels(0.0);
  CHECK(e0 == 0.01);
  CHECK(ec == 0.02);
  CHECK(es == 0.0);

  // misspelled key is rejected by name
  try {
    parse_scenario(R"({"name": "x", "length": 1, "profile": {"epsilson": 0.1}})");
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("epsilson") != std::string::npos);
    CHECK(msg.find("profile") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_scenario(R"({"length": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "length": -1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "length": 1,
    "analyses": ["fly"]})"), std::invalid_argument);
}

TEST_CASE("batch configs run every scenario") {
  const auto scenarios = parse_config(R"({"scenarios": [
    {"name": "a", "length": 10},
    {"name": "b", "length": 20, "analyses": ["propagate", "bloch"]}
  ]})");
  REQUIRE(scenarios.size() == 2);
  const fs::path dir = fresh_dir("batch");
  const RunResult r = run_scenarios(scenarios, dir.string());
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "a_trajectory.csv"));
  CHECK(fs::exists(dir / "b_bloch.csv"));
  CHECK(fs::exists(dir / "b_summary.json"));
}

TEST_CASE("free preset emits identity outputs") {
  const fs::path dir = fresh_dir("free");
  run_scenarios(preset("free"), dir.string());
  const std::string csv = slurp((dir / "free_trajectory.csv").string());
  std::istringstream lines(csv);
  std::string header, first, line, last;
  std::getline(lines, header);
  CHECK(header == kTrajectoryHeader);
  std::getline(lines, first);
  while (std::getline(lines, line)) last = line;
  CHECK(first == "0,1,0,0,0,0,0,-1,1");
  CHECK(last == "20,1,0,0,0,0,0,-1,1");
}

TEST_CASE("fig4 run meets the validation budget and the schema") {
  const fs::path dir = fresh_dir("fig4");
  const RunResult r = run_scenarios(preset("fig4"), dir.string());
  CHECK(r.status == 0);
  for (const char* name : {"fig4_pos", "fig4_neg"}) {
    const json summary = json::parse(slurp((dir / (std::string(name) + "_summary.json")).string()));
    CHECK(summary.at("scenario") == name);
    CHECK(summary.at("k") == 1.0);
    CHECK(summary.at("validation").at("rms").get<double>() < 0.05);
    CHECK(summary.contains("warnings"));
    const std::string csv = slurp((dir / (std::string(name) + "_trajectory.csv")).string());
    CHECK(csv.substr(0, csv.find('\n')) == kTrajectoryHeader);
  }
}

TEST_CASE("cyclic presets satisfy the phase split") {
  const fs::path dir = fresh_dir("cyclic");
  run_scenarios(preset("cyclic-demo"), dir.string());
  const json summary = json::parse(slurp((dir / "cyclic-demo_summary.json").string()));
  const auto& phases = summary.at("phases");
  CHECK(std::abs(phases.at("residual").get<double>()) < 1e-3);
  const double total = phases.at("total").get<double>();
  CHECK(total == doctest::Approx(-pi).epsilon(1e-6));
  CHECK(summary.contains("conventions"));

  run_scenarios(preset("cyclic-triangle"), dir.string());
  const json tri = json::parse(slurp((dir / "cyclic-triangle_summary.json").string()));
  CHECK(std::abs(tri.at("phases").at("residual").get<double>()) < 1e-3);
}

TEST_CASE("figure presets emit non-empty schema-conforming files") {
  const fs::path dir = fresh_dir("figs");
  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
    const RunResult r = run_scenarios(preset(name), dir.string());
    CHECK(r.status == 0);
    for (const std::string& f : r.files) {
      CHECK(fs::file_size(f) > 0);
      if (f.ends_with("_trajectory.csv") || f.ends_with("_bloch.csv")) {
        const std::string head = slurp(f).substr(0, std::string(kTrajectoryHeader).size());
        CHECK(head == kTrajectoryHeader);
      }
      if (f.ends_with("_summary.json")) {
        const json j = json::parse(slurp(f));
        CHECK(j.contains("scenario"));
        CHECK(j.contains("k"));
        CHECK(j.contains("warnings"));
      }
    }
  }
  CHECK(fs::exists(dir / "fig3_conemap.csv"));
  CHECK(fs::exists(dir / "fig2_pos_wave.csv"));
  CHECK(fs::exists(dir / "fig4_neg_wave.csv"));
}

TEST_CASE("classification and band presets") {
  const fs::path dir = fresh_dir("bands");
  run_scenarios(preset("band-elliptic"), dir.string());
  const json ell = json::parse(slurp((dir / "band-elliptic_summary.json").string()));
  CHECK(ell.at("classification") == "elliptic");

  run_scenarios(preset("band-hyperbolic"), dir.string());
  const json hyp = json::parse(slurp((dir / "band-hyperbolic_summary.json").string()));
  CHECK(hyp.at("classification") == "hyperbolic");
  // growth rate in units of k
  const double rate = hyp.at("validation").at("growth_rate").get<double>();
  CHECK(rate == doctest::Approx(0.01).epsilon(0.1));
}

TEST_CASE("gauge descriptors parse from configs") {
  const Scenario sc = parse_scenario(R"({
    "name": "g", "length": 100,
    "gauge": {"type": "step", "start": 40, "end": 60, "from": 0,
              "to": 3.141592653589793, "shape": "cosine"},
    "analyses": ["propagate", "gauge"]
  })");
  REQUIRE(sc.gauge.has_value());
  CHECK(sc.gauge->xi(80.0) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(sc.gauge->dxi(0.0) == 0.0);

  CHECK_THROWS_AS(parse_scenario(R"({"name": "g", "length": 1,
    "gauge": {"type": "step", "shape": "wiggly"}})"), std::invalid_argument);
}

TEST_CASE("gauge preset reports flux sign and commute error") {
  const fs::path dir = fresh_dir("gauge");
  run_scenarios(preset("gauge-demo"), dir.string());
  const json j = json::parse(slurp((dir / "gauge-demo_summary.json").string()));
  CHECK(j.at("gauge").at("sign") == -1);
  CHECK(j.at("gauge").at("flux_length").get<double>() ==
        doctest::Approx(2.0 * pi).epsilon(1e-9));
  CHECK(j.at("gauge").at("commute_error").get<double>() < 5e-8);
}

TEST_CASE("re-running a preset produces byte-identical outputs") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  for (const char* name : {"fig4", "cyclic-demo"}) {
    const RunResult r1 = run_scenarios(preset(name), dir1.string());
    const RunResult r2 = run_scenarios(preset(name), dir2.string());
    REQUIRE(r1.files.size() == r2.files.size());
    for (std::size_t i = 0; i < r1.files.size(); ++i)
      CHECK(slurp(r1.files[i]) == slurp(r2.files[i]));
  }
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.02) == "0.02");
  CHECK(format_double(-3.5) == "-3.5");
  // round trip
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_double(v)) == v);
}
