// Python bindings for the core operations: generator algebra, envelope
// and Bloch propagation, gauge transformations, cyclic-phase analysis,
// carrier-resolved validation, and the scenario runner.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "sl2wave/scenario.hpp"

namespace py = pybind11;
using namespace sl2wave;

namespace {

using NestedMat = std::array<std::array<cplx, 2>, 2>;

NestedMat to_nested(const Matrix2& m) {
  return {{{m.a11, m.a12}, {m.a21, m.a22}}};
}

Matrix2 from_nested(const NestedMat& m) {
  return {m[0][0], m[0][1], m[1][0], m[1][1]};
}

ThreeVector to_vec(const std::array<double, 3>& v) { return {v[0], v[1], v[2]}; }

std::array<double, 3> from_vec(const ThreeVector& v) { return {v.v1, v.v2, v.v3}; }

BlochState to_bloch(const std::array<double, 4>& s) {
  return {s[0], s[1], s[2], s[3]};
}

std::array<double, 4> from_bloch(const BlochState& s) {
  return {s.s0, s.s1, s.s2, s.s3};
}

py::dict trajectory_dict(const Trajectory& t) {
  std::vector<double> x;
  std::vector<cplx> alpha, beta;
  x.reserve(t.samples.size());
  for (const EnvelopeState& s : t.samples) {
    x.push_back(s.x);
    alpha.push_back(s.alpha);
    beta.push_back(s.beta);
  }
  py::dict d;
  d["x"] = std::move(x);
  d["alpha"] = std::move(alpha);
  d["beta"] = std::move(beta);
  d["svea_warning"] = t.svea_warning;
  return d;
}

Trajectory trajectory_from(const PotentialProfile& profile, cplx alpha, cplx beta,
                           double x0, double x_end, double step) {
  return propagate({alpha, beta, x0}, profile, x_end, step);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "geometric one-dimensional wave propagation";
  m.attr("__version__") = kVersion;

  py::class_<ProfileChannel>(m, "ProfileChannel")
      .def_static("constant", &ProfileChannel::constant, py::arg("value"))
      .def_static("linear", &ProfileChannel::linear, py::arg("value_at_zero"),
                  py::arg("slope"))
      .def_static("bump", &ProfileChannel::bump, py::arg("center"), py::arg("width"),
                  py::arg("amplitude"), py::arg("baseline") = 0.0)
      .def_static("table", &ProfileChannel::table, py::arg("x"), py::arg("v"))
      .def_static("steps", &ProfileChannel::steps, py::arg("x"), py::arg("v"))
      .def("__call__", &ProfileChannel::eval, py::arg("x"));

  py::class_<GaugeMap> gauge_map(m, "GaugeMap");
  gauge_map
      .def_static("constant", &GaugeMap::constant, py::arg("value"))
      .def_static(
          "step",
          [](double start, double end, double from, double to, const std::string& shape) {
            GaugeMap::StepShape s = GaugeMap::StepShape::Quintic;
            if (shape == "cubic") s = GaugeMap::StepShape::Cubic;
            else if (shape == "cosine") s = GaugeMap::StepShape::Cosine;
            else if (shape != "quintic")
              throw std::invalid_argument("unknown step shape '" + shape + "'");
            return GaugeMap::step(start, end, from, to, s);
          },
          py::arg("start"), py::arg("end"), py::arg("from_value"), py::arg("to_value"),
          py::arg("shape") = "quintic")
      .def_static("linear", &GaugeMap::linear, py::arg("slope"))
      .def_static("table", &GaugeMap::table, py::arg("x"), py::arg("v"))
      .def("xi", &GaugeMap::xi, py::arg("x"))
      .def("dxi", &GaugeMap::dxi, py::arg("x"));

  py::class_<PotentialProfile>(m, "PotentialProfile")
      .def(py::init([](double k, const ProfileChannel& e0, const ProfileChannel& ec,
                       const ProfileChannel& es, double svea_limit) {
             PotentialProfile p;
             p.k = k;
             p.eps0 = e0;
             p.epsc = ec;
             p.epss = es;
             p.svea_limit = svea_limit;
             return p;
           }),
           py::arg("k"), py::arg("eps0"), py::arg("epsc"), py::arg("epss"),
           py::arg("svea_limit") = 0.1)
      .def_static("constant", &constant_profile, py::arg("k"), py::arg("eps0"),
                  py::arg("epsc"), py::arg("epss"))
      .def_readonly("k", &PotentialProfile::k)
      .def("channels", &PotentialProfile::channels, py::arg("x"))
      .def("epsilon_vector",
           [](const PotentialProfile& p, double x) { return from_vec(epsilon_vector(p, x)); },
           py::arg("x"))
      .def("full_epsilon",
           [](const PotentialProfile& p, double x) { return full_epsilon(p, x); },
           py::arg("x"));

  // generator algebra
  m.def("generators_sl2r", [] {
    const auto g = generators_sl2r();
    return std::array<NestedMat, 3>{to_nested(g[0]), to_nested(g[1]), to_nested(g[2])};
  });
  m.def("generators_su11", [] {
    const auto g = generators_su11();
    return std::array<NestedMat, 3>{to_nested(g[0]), to_nested(g[1]), to_nested(g[2])};
  });
  m.def("commutator", [](const NestedMat& x, const NestedMat& y) {
    return to_nested(commutator(from_nested(x), from_nested(y)));
  });
  m.def("minkowski_dot",
        [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
          return minkowski_dot(to_vec(a), to_vec(b));
        });
  m.def("minkowski_cross",
        [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
          return from_vec(minkowski_cross(to_vec(a), to_vec(b)));
        });
  m.def("exp_generator", [](const std::array<double, 3>& c, double scale) {
    return to_nested(exp_generator(to_vec(c), scale));
  });
  m.def("group_element", [](double mu, double nu, double phi) {
    return to_nested(group_element(mu, nu, phi));
  });

  // envelope propagation
  m.def("propagate",
        [](const PotentialProfile& p, cplx alpha, cplx beta, double x_end, double step,
           double x0) { return trajectory_dict(trajectory_from(p, alpha, beta, x0, x_end, step)); },
        py::arg("profile"), py::arg("alpha"), py::arg("beta"), py::arg("x_end"),
        py::arg("step"), py::arg("x0") = 0.0);
  m.def("monodromy",
        [](const PotentialProfile& p, double x0, double x1, double step) {
          return to_nested(monodromy(p, x0, x1, step));
        },
        py::arg("profile"), py::arg("x0"), py::arg("x1"), py::arg("step"));

  // Bloch picture
  m.def("bloch_from_real",
        [](double A, double B) { return from_bloch(bloch_from_real(A, B)); });
  m.def("bloch_from_complex",
        [](cplx a, cplx b) { return from_bloch(bloch_from_complex(a, b)); });
  m.def("propagate_bloch",
        [](const std::array<double, 4>& s, const PotentialProfile& p, double x_end,
           double step, double x0) {
          const BlochTrajectory bt = propagate_bloch(to_bloch(s), p, x0, x_end, step);
          std::vector<double> x;
          std::vector<std::array<double, 4>> states;
          for (const BlochSample& smp : bt.samples) {
            x.push_back(smp.x);
            states.push_back(from_bloch(smp.s));
          }
          py::dict d;
          d["x"] = std::move(x);
          d["s"] = std::move(states);
          return d;
        },
        py::arg("s"), py::arg("profile"), py::arg("x_end"), py::arg("step"),
        py::arg("x0") = 0.0);
  m.def("classify", [](const std::array<double, 3>& eps) {
    const ConicClass c = classify(to_vec(eps));
    py::dict d;
    d["kind"] = std::string(to_string(c.kind));
    d["discriminant"] = c.discriminant;
    d["degenerate"] = c.degenerate;
    return d;
  });
  m.def("cone_map", [](const std::array<double, 4>& s) {
    return from_vec(cone_map(to_bloch(s)));
  });
  m.def("winding_number", [](const std::vector<std::array<double, 4>>& samples) {
    std::vector<BlochState> states;
    states.reserve(samples.size());
    for (const auto& s : samples) states.push_back(to_bloch(s));
    return winding_number(states);
  });

  // gauge sector
  m.def("transform_state", &transform_state, py::arg("amp"), py::arg("xi"),
        py::arg("k"));
  m.def("transform_potential", &transform_potential, py::arg("profile"),
        py::arg("map"));
  m.def("gauge_flux",
        [](const GaugeMap& g, double x1, double x2, double k) {
          const GaugeFlux f = gauge_flux(g, x1, x2, k);
          py::dict d;
          d["length"] = f.length;
          d["sign"] = f.sign;
          return d;
        },
        py::arg("map"), py::arg("x1"), py::arg("x2"), py::arg("k"));
  m.def("gauge_commute_error",
        [](const PotentialProfile& p, const GaugeMap& g, cplx alpha, cplx beta,
           double x_end, double step) {
          return gauge_commute_error(p, g, {alpha, beta, 0.0}, x_end, step);
        },
        py::arg("profile"), py::arg("map"), py::arg("alpha"), py::arg("beta"),
        py::arg("x_end"), py::arg("step"));

  // cyclic phases
  m.def("ray_representative", [](const std::array<double, 4>& s) {
    const EnvelopeState st = ray_representative(to_bloch(s));
    return std::pair{st.alpha, st.beta};
  });
  m.def("ray_phase_state", [](double phi) {
    const EnvelopeState st = ray_phase_state(phi);
    return std::pair{st.alpha, st.beta};
  });
  m.def("total_phase", [](const NestedMat& m_, cplx alpha, cplx beta) {
    return total_phase(from_nested(m_), {alpha, beta, 0.0});
  });
  m.def("geometric_phase", [](const std::vector<std::array<double, 4>>& pts) {
    LoopPath loop;
    for (const auto& s : pts) loop.points.push_back(to_bloch(s));
    return geometric_phase(loop);
  });
  m.def("holonomy_phase", [](const std::vector<std::array<double, 4>>& pts) {
    LoopPath loop;
    for (const auto& s : pts) loop.points.push_back(to_bloch(s));
    return holonomy_phase(loop);
  });
  m.def("analyze_cycle",
        [](const PotentialProfile& p, cplx alpha, cplx beta, double length,
           double step) {
          const PhaseBreakdown pb = analyze_cycle(p, {alpha, beta, 0.0}, length, step);
          py::dict d;
          d["total"] = pb.total;
          d["dynamical"] = pb.dynamical;
          d["geometric"] = pb.geometric;
          d["residual"] = pb.residual;
          d["closure_error"] = pb.closure_error;
          d["winding"] = pb.winding;
          d["convention"] = pb.convention;
          return d;
        },
        py::arg("profile"), py::arg("alpha"), py::arg("beta"), py::arg("length"),
        py::arg("step"));

  // carrier-resolved oracle
  m.def("helmholtz_solve",
        [](const PotentialProfile& p, double psi0, double dpsi0, double x0,
           double x_end, double step) {
          const auto wave = helmholtz_solve(p, psi0, dpsi0, x0, x_end, step);
          std::vector<double> x, psi, dpsi;
          for (const WaveSample& w : wave) {
            x.push_back(w.x);
            psi.push_back(w.psi);
            dpsi.push_back(w.dpsi);
          }
          py::dict d;
          d["x"] = std::move(x);
          d["psi"] = std::move(psi);
          d["dpsi"] = std::move(dpsi);
          return d;
        },
        py::arg("profile"), py::arg("psi0"), py::arg("dpsi0"), py::arg("x0"),
        py::arg("x_end"), py::arg("step"));
  m.def("compare_with_helmholtz",
        [](const PotentialProfile& p, cplx alpha, cplx beta, double x_end,
           double step, double oracle_step) {
          const Trajectory t = trajectory_from(p, alpha, beta, 0.0, x_end, step);
          const OracleReport r = compare_with_helmholtz(t, p, oracle_step);
          py::dict d;
          d["rms"] = r.rms;
          d["max"] = r.max;
          d["bloch_rms"] = r.bloch_rms;
          d["growth_rate"] = r.growth_rate;
          d["samples"] = r.samples;
          return d;
        },
        py::arg("profile"), py::arg("alpha"), py::arg("beta"), py::arg("x_end"),
        py::arg("step"), py::arg("oracle_step") = 0.0);

  // scenario runner
  m.def("preset_names", &preset_names);
  m.def("run_preset",
        [](const std::string& name, const std::string& out_dir) {
          const RunResult r = run_scenarios(preset(name), out_dir);
          py::dict d;
          d["status"] = r.status;
          d["files"] = r.files;
          return d;
        },
        py::arg("name"), py::arg("out_dir"));
  m.def("run_config",
        [](const std::string& json_text, const std::string& out_dir) {
          const RunResult r = run_scenarios(parse_config(json_text), out_dir);
          py::dict d;
          d["status"] = r.status;
          d["files"] = r.files;
          return d;
        },
        py::arg("json_text"), py::arg("out_dir"));
}
