#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sl2wave/berry.hpp"
#include "sl2wave/gauge.hpp"
#include "sl2wave/oracle.hpp"

namespace sl2wave {

inline constexpr const char* kVersion = "0.1.0";

enum class Analysis { Propagate, Bloch, Classify, Gauge, Berry, Validate };

struct InitialReal {
  double A{1.0}, B{0.0};
};
struct InitialComplex {
  cplx alpha{1.0}, beta{0.0};
};
struct InitialRay {
  double mu{0.0}, nu{0.0}, phi{0.0};
};
// eigenvector of the full-interval transfer matrix (cyclic seed)
struct InitialEigenstate {};

using InitialSpec =
    std::variant<InitialReal, InitialComplex, InitialRay, InitialEigenstate>;

// One runnable experiment. All lengths in the configuration are given
// in units of 1/k and converted on construction.
struct Scenario {
  std::string name;
  PotentialProfile profile;
  InitialSpec initial{InitialReal{}};
  double length{0.0};  // physical
  double step{0.0};    // physical
  std::vector<Analysis> analyses;
  std::optional<GaugeMap> gauge;
  std::map<std::string, std::string> outputs;  // kind -> file name
  std::uint64_t seed{0};
};

// JSON text -> scenarios (single object or {"scenarios": [...]}).
// Unknown or missing keys are rejected with the offending path.
std::vector<Scenario> parse_config(const std::string& json_text);
Scenario parse_scenario(const std::string& json_text);

std::vector<std::string> preset_names();
std::vector<Scenario> preset(const std::string& name);

struct RunResult {
  int status{0};
  std::vector<std::string> files;  // paths written, in emission order
};

RunResult run_scenario(const Scenario& scenario, const std::string& out_dir);
RunResult run_scenarios(const std::vector<Scenario>& scenarios,
                        const std::string& out_dir);

// shortest round-trip decimal form used in every CSV cell
std::string format_double(double v);

}  // namespace sl2wave
