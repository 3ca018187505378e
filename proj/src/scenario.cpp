#include "sl2wave/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sl2wave {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("config: " + (path.empty() ? msg : path + ": " + msg));
}

void check_allowed(const json& j, const std::string& path,
                   const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) fail(path, "unknown key '" + item.key() + "'");
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& path,
                 double fallback) {
  if (!j.contains(key)) return fallback;
  return need_number(j.at(key), path + "." + key);
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> need_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) fail(path, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// positions in the configuration are in units of 1/k
ProfileChannel parse_channel(const json& j, const std::string& path, double k) {
  if (j.is_number()) return ProfileChannel::constant(j.get<double>());
  if (!j.is_object()) fail(path, "expected a number or a descriptor object");
  const std::string type = j.contains("type")
                               ? need_string(j.at("type"), path + ".type")
                               : std::string();
  if (type == "constant") {
    check_allowed(j, path, {"type", "value"});
    return ProfileChannel::constant(number_or(j, "value", path, 0.0));
  }
  if (type == "linear") {
    check_allowed(j, path, {"type", "value", "slope"});
    return ProfileChannel::linear(number_or(j, "value", path, 0.0),
                                  number_or(j, "slope", path, 0.0) * k);
  }
  if (type == "bump") {
    check_allowed(j, path, {"type", "center", "width", "amplitude", "baseline"});
    return ProfileChannel::bump(number_or(j, "center", path, 0.0) / k,
                                number_or(j, "width", path, 1.0) / k,
                                number_or(j, "amplitude", path, 0.0),
                                number_or(j, "baseline", path, 0.0));
  }
  if (type == "table" || type == "steps") {
    check_allowed(j, path, {"type", "x", "v"});
    if (!j.contains("x") || !j.contains("v")) fail(path, "table needs 'x' and 'v'");
    auto xs = need_number_array(j.at("x"), path + ".x");
    const auto vs = need_number_array(j.at("v"), path + ".v");
    for (double& x : xs) x /= k;
    return type == "table" ? ProfileChannel::table(std::move(xs), vs)
                           : ProfileChannel::steps(std::move(xs), vs);
  }
  fail(path, "unknown descriptor type '" + type + "'");
}

GaugeMap parse_gauge(const json& j, const std::string& path, double k) {
  if (!j.is_object()) fail(path, "expected a gauge descriptor object");
  const std::string type = j.contains("type")
                               ? need_string(j.at("type"), path + ".type")
                               : std::string();
  if (type == "constant") {
    check_allowed(j, path, {"type", "value"});
    return GaugeMap::constant(number_or(j, "value", path, 0.0) / k);
  }
  if (type == "linear") {
    check_allowed(j, path, {"type", "slope"});
    return GaugeMap::linear(number_or(j, "slope", path, 0.0));
  }
  if (type == "step") {
    check_allowed(j, path, {"type", "start", "end", "from", "to", "shape"});
    GaugeMap::StepShape shape = GaugeMap::StepShape::Quintic;
    if (j.contains("shape")) {
      const std::string s = need_string(j.at("shape"), path + ".shape");
      if (s == "cubic")
        shape = GaugeMap::StepShape::Cubic;
      else if (s == "quintic")
        shape = GaugeMap::StepShape::Quintic;
      else if (s == "cosine")
        shape = GaugeMap::StepShape::Cosine;
      else
        fail(path + ".shape", "unknown step shape '" + s + "'");
    }
    return GaugeMap::step(number_or(j, "start", path, 0.0) / k,
                          number_or(j, "end", path, 1.0) / k,
                          number_or(j, "from", path, 0.0) / k,
                          number_or(j, "to", path, 0.0) / k, shape);
  }
  if (type == "table") {
    check_allowed(j, path, {"type", "x", "v"});
    if (!j.contains("x") || !j.contains("v")) fail(path, "table needs 'x' and 'v'");
    auto xs = need_number_array(j.at("x"), path + ".x");
    auto vs = need_number_array(j.at("v"), path + ".v");
    for (double& x : xs) x /= k;
    for (double& v : vs) v /= k;
    return GaugeMap::table(std::move(xs), std::move(vs));
  }
  fail(path, "unknown gauge type '" + type + "'");
}

InitialSpec parse_initial(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::string type = j.contains("type")
                               ? need_string(j.at("type"), path + ".type")
                               : std::string("real");
  if (type == "real") {
    check_allowed(j, path, {"type", "A", "B"});
    return InitialReal{number_or(j, "A", path, 1.0), number_or(j, "B", path, 0.0)};
  }
  if (type == "complex") {
    check_allowed(j, path, {"type", "alpha", "beta"});
    auto get_c = [&](const char* key) -> cplx {
      if (!j.contains(key)) return {0.0, 0.0};
      const auto v = need_number_array(j.at(key), path + "." + key);
      if (v.size() != 2) fail(path + "." + key, "expected [re, im]");
      return {v[0], v[1]};
    };
    return InitialComplex{get_c("alpha"), get_c("beta")};
  }
  if (type == "ray") {
    check_allowed(j, path, {"type", "mu", "nu", "phi"});
    return InitialRay{number_or(j, "mu", path, 0.0), number_or(j, "nu", path, 0.0),
                      number_or(j, "phi", path, 0.0)};
  }
  if (type == "monodromy-eigenstate") {
    check_allowed(j, path, {"type"});
    return InitialEigenstate{};
  }
  fail(path + ".type", "unknown initial state type '" + type + "'");
}

Analysis parse_analysis(const std::string& s, const std::string& path) {
  if (s == "propagate") return Analysis::Propagate;
  if (s == "bloch") return Analysis::Bloch;
  if (s == "classify") return Analysis::Classify;
  if (s == "gauge") return Analysis::Gauge;
  if (s == "berry") return Analysis::Berry;
  if (s == "validate") return Analysis::Validate;
  fail(path, "unknown analysis '" + s + "'");
}

Scenario parse_one(const json& j, const std::string& path) {
  check_allowed(j, path,
                {"name", "k", "length", "step", "profile", "initial", "analyses",
                 "gauge", "outputs", "seed"});
  Scenario sc;
  if (!j.contains("name")) fail(path, "missing required key 'name'");
  sc.name = need_string(j.at("name"), path + ".name");
  const double k = number_or(j, "k", path, 1.0);
  if (!(k > 0.0)) fail(path + ".k", "carrier wavenumber must be positive");
  sc.profile.k = k;

  if (!j.contains("length")) fail(path, "missing required key 'length'");
  sc.length = need_number(j.at("length"), path + ".length") / k;
  if (!(sc.length > 0.0)) fail(path + ".length", "length must be positive");
  sc.step = number_or(j, "step", path, 0.01) / k;
  if (!(sc.step > 0.0)) fail(path + ".step", "step must be positive");

  if (j.contains("profile")) {
    const json& p = j.at("profile");
    check_allowed(p, path + ".profile", {"eps0", "epsc", "epss", "svea_limit"});
    if (p.contains("eps0"))
      sc.profile.eps0 = parse_channel(p.at("eps0"), path + ".profile.eps0", k);
    if (p.contains("epsc"))
      sc.profile.epsc = parse_channel(p.at("epsc"), path + ".profile.epsc", k);
    if (p.contains("epss"))
      sc.profile.epss = parse_channel(p.at("epss"), path + ".profile.epss", k);
    sc.profile.svea_limit = number_or(p, "svea_limit", path + ".profile", 0.1);
  }

  if (j.contains("initial")) sc.initial = parse_initial(j.at("initial"), path + ".initial");

  if (j.contains("analyses")) {
    const json& a = j.at("analyses");
    if (!a.is_array()) fail(path + ".analyses", "expected an array");
    for (const auto& v : a)
      sc.analyses.push_back(
          parse_analysis(need_string(v, path + ".analyses"), path + ".analyses"));
  } else {
    sc.analyses = {Analysis::Propagate};
  }

  if (j.contains("gauge")) sc.gauge = parse_gauge(j.at("gauge"), path + ".gauge", k);

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    check_allowed(o, path + ".outputs",
                  {"trajectory", "bloch", "conemap", "wave", "summary"});
    for (const auto& item : o.items())
      sc.outputs[item.key()] = need_string(item.value(), path + ".outputs." + item.key());
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned())
      fail(path + ".seed", "expected a non-negative integer");
    sc.seed = j.at("seed").get<std::uint64_t>();
  }
  return sc;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: syntax error: ") + e.what());
  }
}

}  // namespace

std::vector<Scenario> parse_config(const std::string& json_text) {
  const json j = parse_text(json_text);
  if (j.is_object() && j.contains("scenarios")) {
    check_allowed(j, "", {"scenarios"});
    if (!j.at("scenarios").is_array()) fail("scenarios", "expected an array");
    std::vector<Scenario> out;
    int idx = 0;
    for (const auto& item : j.at("scenarios")) {
      out.push_back(parse_one(item, "scenarios[" + std::to_string(idx) + "]"));
      ++idx;
    }
    if (out.empty()) fail("scenarios", "empty scenario list");
    return out;
  }
  return {parse_one(j, "")};
}

Scenario parse_scenario(const std::string& json_text) {
  return parse_one(parse_text(json_text), "");
}

namespace {

PotentialProfile fig_profile(double sign) {
  // modulation vector sign * pi * (-2, 1, 3) / 400
  PotentialProfile p;
  p.k = 1.0;
  p.eps0 = ProfileChannel::constant(sign * 3.0 * pi / 400.0);
  p.epsc = ProfileChannel::constant(sign * pi / 400.0);
  p.epss = ProfileChannel::constant(sign * 2.0 * pi / 400.0);
  return p;
}

Scenario make_scenario(std::string name, PotentialProfile profile, InitialSpec init,
                       double length, double step, std::vector<Analysis> analyses) {
  Scenario sc;
  sc.name = std::move(name);
  sc.profile = std::move(profile);
  sc.initial = init;
  sc.length = length;
  sc.step = step;
  sc.analyses = std::move(analyses);
  return sc;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"free",   "fig1", "fig2",        "fig3",
          "fig4",   "fig5", "cyclic-demo", "cyclic-triangle",
          "band-elliptic", "band-hyperbolic", "gauge-demo"};
}

std::vector<Scenario> preset(const std::string& name) {
  if (name == "free") {
    return {make_scenario("free", constant_profile(1.0, 0.0, 0.0, 0.0),
                          InitialReal{1.0, 0.0}, 20.0, 0.01,
                          {Analysis::Propagate, Analysis::Bloch})};
  }
  if (name == "fig1") {
    return {make_scenario("fig1", fig_profile(1.0), InitialReal{1.0, 0.0}, 400.0,
                          0.01,
                          {Analysis::Propagate, Analysis::Bloch, Analysis::Classify})};
  }
  if (name == "fig2") {
    auto pos = make_scenario("fig2_pos", constant_profile(1.0, 0.0, 0.03, 0.0),
                             InitialReal{1.0, 0.0}, 4.0 * pi, 0.01,
                             {Analysis::Propagate});
    auto neg = make_scenario("fig2_neg", constant_profile(1.0, 0.0, 0.03, 0.0),
                             InitialReal{-1.0, 0.0}, 4.0 * pi, 0.01,
                             {Analysis::Propagate});
    pos.outputs["wave"] = "fig2_pos_wave.csv";
    neg.outputs["wave"] = "fig2_neg_wave.csv";
    return {pos, neg};
  }
  if (name == "fig3") {
    auto sc = make_scenario("fig3", fig_profile(1.0), InitialReal{1.0, 0.0}, 400.0,
                            0.01, {Analysis::Propagate, Analysis::Bloch});
    sc.outputs["conemap"] = "fig3_conemap.csv";
    return {sc};
  }
  if (name == "fig4") {
    auto pos = make_scenario("fig4_pos", fig_profile(1.0), InitialReal{1.0, 0.0},
                             100.0, 0.01,
                             {Analysis::Propagate, Analysis::Bloch, Analysis::Validate});
    auto neg = make_scenario("fig4_neg", fig_profile(-1.0), InitialReal{1.0, 0.0},
                             100.0, 0.01,
                             {Analysis::Propagate, Analysis::Bloch, Analysis::Validate});
    pos.outputs["wave"] = "fig4_pos_wave.csv";
    neg.outputs["wave"] = "fig4_neg_wave.csv";
    return {pos, neg};
  }
  if (name == "fig5") {
    return {make_scenario("fig5", fig_profile(1.0), InitialRay{0.0, 0.0, 0.0}, 400.0,
                          0.01, {Analysis::Propagate, Analysis::Bloch})};
  }
  if (name == "cyclic-demo") {
    return {make_scenario("cyclic-demo", constant_profile(1.0, pi / 100.0, 0.0, 0.0),
                          InitialRay{0.0, 1.0, 0.0}, 200.0, 0.01,
                          {Analysis::Propagate, Analysis::Bloch, Analysis::Berry})};
  }
  if (name == "cyclic-triangle") {
    PotentialProfile p;
    p.k = 1.0;
    p.eps0 = ProfileChannel::steps({0.0, 60.0, 130.0}, {0.03, 0.02, 0.025});
    p.epsc = ProfileChannel::steps({0.0, 60.0, 130.0}, {0.0, 0.012, 0.02});
    p.epss = ProfileChannel::steps({0.0, 60.0, 130.0}, {0.0, -0.015, 0.01});
    return {make_scenario("cyclic-triangle", std::move(p), InitialEigenstate{}, 200.0,
                          0.01,
                          {Analysis::Propagate, Analysis::Bloch, Analysis::Berry})};
  }
  if (name == "band-elliptic") {
    return {make_scenario("band-elliptic", constant_profile(1.0, 0.03, 0.0, 0.0),
                          InitialReal{1.0, 0.0}, 2100.0, 0.02,
                          {Analysis::Propagate, Analysis::Bloch, Analysis::Classify})};
  }
  if (name == "band-hyperbolic") {
    return {make_scenario("band-hyperbolic", constant_profile(1.0, 0.0, 0.02, 0.0),
                          InitialReal{1.0, 0.0}, 400.0, 0.01,
                          {Analysis::Propagate, Analysis::Bloch, Analysis::Classify,
                           Analysis::Validate})};
  }
  if (name == "gauge-demo") {
    auto sc = make_scenario("gauge-demo", fig_profile(1.0), InitialReal{1.0, 0.0},
                            100.0, 0.01, {Analysis::Propagate, Analysis::Gauge});
    sc.gauge = GaugeMap::step(40.0, 60.0, 0.0, pi, GaugeMap::StepShape::Quintic);
    return {sc};
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

EnvelopeState resolve_initial(const Scenario& sc) {
  if (const auto* r = std::get_if<InitialReal>(&sc.initial))
    return {cplx{r->A, 0.0}, cplx{r->B, 0.0}, 0.0};
  if (const auto* c = std::get_if<InitialComplex>(&sc.initial))
    return {c->alpha, c->beta, 0.0};
  if (const auto* ray = std::get_if<InitialRay>(&sc.initial)) {
    const EnvelopeState base = base_ray_state();
    const auto v =
        group_element(ray->mu, ray->nu, ray->phi).apply(base.alpha, base.beta);
    return {v[0], v[1], 0.0};
  }
  // monodromy eigenstate
  const Matrix2 m = monodromy(sc.profile, 0.0, sc.length, sc.step);
  return elliptic_eigenstate(m);
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::initializer_list<const char*> header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open output file " + path.string());
    bool first = true;
    for (const char* col : header) {
      if (!first) out_ << ',';
      out_ << col;
      first = false;
    }
    out_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << format_double(v);
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

std::string output_name(const Scenario& sc, const std::string& kind,
                        const std::string& ext) {
  const auto it = sc.outputs.find(kind);
  if (it != sc.outputs.end()) return it->second;
  return sc.name + "_" + kind + "." + ext;
}

}  // namespace

RunResult run_scenario(const Scenario& sc, const std::string& out_dir) {
  fs::create_directories(out_dir);
  RunResult result;
  json summary;
  summary["scenario"] = sc.name;
  summary["k"] = sc.profile.k;
  summary["version"] = kVersion;
  std::vector<std::string> warnings;

  const EnvelopeState init = resolve_initial(sc);
  std::optional<Trajectory> traj;
  auto ensure_traj = [&]() -> const Trajectory& {
    if (!traj) {
      traj = propagate(init, sc.profile, sc.length, sc.step);
      if (traj->svea_warning)
        warnings.push_back("envelope validity limit exceeded along the trajectory");
    }
    return *traj;
  };

  auto emit = [&](const fs::path& p) { result.files.push_back(p.string()); };

  for (const Analysis a : sc.analyses) {
    switch (a) {
      case Analysis::Propagate: {
        const Trajectory& t = ensure_traj();
        const fs::path path = fs::path(out_dir) / output_name(sc, "trajectory", "csv");
        CsvWriter csv(path, {"x", "re_alpha", "im_alpha", "re_beta", "im_beta", "s0",
                             "s1", "s2", "s3"});
        for (const EnvelopeState& st : t.samples) {
          const BlochState s = bloch_from_complex(st.alpha, st.beta);
          csv.row({st.x * sc.profile.k, st.alpha.real(), st.alpha.imag(),
                   st.beta.real(), st.beta.imag(), s.s0, s.s1, s.s2, s.s3});
        }
        emit(path);
        if (sc.outputs.count("wave")) {
          const fs::path wpath = fs::path(out_dir) / output_name(sc, "wave", "csv");
          CsvWriter csv_w(wpath, {"x", "psi", "dpsi", "epsilon"});
          for (const WaveSample& w : synthesize(t, sc.profile, 0))
            csv_w.row({w.x * sc.profile.k, w.psi, w.dpsi,
                       full_epsilon(sc.profile, w.x)});
          emit(wpath);
        }
        break;
      }
      case Analysis::Bloch: {
        const Trajectory& t = ensure_traj();
        const BlochState s0 = bloch_from_complex(init.alpha, init.beta);
        const BlochTrajectory bt =
            propagate_bloch(s0, sc.profile, 0.0, sc.length, sc.step);
        if (bt.samples.size() != t.samples.size())
          throw std::runtime_error("internal: envelope and Bloch grids disagree");
        const fs::path path = fs::path(out_dir) / output_name(sc, "bloch", "csv");
        CsvWriter csv(path, {"x", "re_alpha", "im_alpha", "re_beta", "im_beta", "s0",
                             "s1", "s2", "s3"});
        for (std::size_t i = 0; i < bt.samples.size(); ++i) {
          const EnvelopeState& st = t.samples[i];
          const BlochState& s = bt.samples[i].s;
          csv.row({st.x * sc.profile.k, st.alpha.real(), st.alpha.imag(),
                   st.beta.real(), st.beta.imag(), s.s0, s.s1, s.s2, s.s3});
        }
        emit(path);
        if (sc.outputs.count("conemap")) {
          const fs::path cpath = fs::path(out_dir) / output_name(sc, "conemap", "csv");
          CsvWriter csv_c(cpath, {"x", "sbar1", "sbar2", "sbar3"});
          for (const EnvelopeState& st : t.samples) {
            const ThreeVector sb =
                cone_map(bloch_from_complex(st.alpha, st.beta));
            csv_c.row({st.x * sc.profile.k, sb.v1, sb.v2, sb.v3});
          }
          emit(cpath);
        }
        break;
      }
      case Analysis::Classify: {
        const ConicClass c = classify(epsilon_vector(sc.profile, 0.0));
        summary["classification"] = to_string(c.kind);
        if (c.degenerate) warnings.push_back("classification is degenerate (zero modulation)");
        break;
      }
      case Analysis::Gauge: {
        if (!sc.gauge)
          throw std::invalid_argument("gauge analysis requested without a gauge map");
        const GaugeFlux flux = gauge_flux(*sc.gauge, 0.0, sc.length, sc.profile.k);
        const double guard = gauge_guard(sc.profile, *sc.gauge, 0.0, sc.length);
        const double err =
            gauge_commute_error(sc.profile, *sc.gauge, init, sc.length, sc.step);
        summary["gauge"] = {{"flux_length", flux.length * sc.profile.k},
                            {"sign", flux.sign},
                            {"commute_error", err},
                            {"guard", guard}};
        if (guard > 0.1)
          warnings.push_back("gauge deviation is not small against the profile variation");
        break;
      }
      case Analysis::Berry: {
        const PhaseBreakdown pb = analyze_cycle(sc.profile, init, sc.length, sc.step);
        summary["phases"] = {{"total", pb.total},
                             {"dynamical", pb.dynamical},
                             {"geometric", pb.geometric},
                             {"residual", pb.residual}};
        summary["cycle"] = {{"closure_error", pb.closure_error},
                            {"winding", pb.winding}};
        summary["conventions"] = {{"geometric_phase", pb.convention}};
        break;
      }
      case Analysis::Validate: {
        const Trajectory& t = ensure_traj();
        const OracleReport rep = compare_with_helmholtz(t, sc.profile);
        summary["validation"] = {{"rms", rep.rms},
                                 {"max", rep.max},
                                 {"growth_rate", rep.growth_rate / sc.profile.k}};
        break;
      }
    }
  }

  summary["warnings"] = warnings;
  const fs::path spath = fs::path(out_dir) / output_name(sc, "summary", "json");
  std::ofstream out(spath, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + spath.string());
  out << summary.dump(2) << '\n';
  emit(spath);
  return result;
}

RunResult run_scenarios(const std::vector<Scenario>& scenarios,
                        const std::string& out_dir) {
  RunResult all;
  for (const Scenario& sc : scenarios) {
    const RunResult r = run_scenario(sc, out_dir);
    all.status = std::max(all.status, r.status);
    all.files.insert(all.files.end(), r.files.begin(), r.files.end());
  }
  return all;
}

}  // namespace sl2wave
