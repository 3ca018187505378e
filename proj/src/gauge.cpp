#include "sl2wave/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sl2wave {

namespace {

// composite Simpson over [a, b]
double simpson(const GaugeMap& map, double a, double b, int panels) {
  if (b <= a) return 0.0;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double acc = map.dxi(a) + map.dxi(b);
  for (int i = 1; i < panels; ++i)
    acc += map.dxi(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  return acc * h / 3.0;
}

}  // namespace

cplx transform_state(cplx amp, double xi_val, double k) {
  return amp * std::polar(1.0, -k * xi_val);
}

EnvelopeState transform_envelope(const EnvelopeState& state, double xi_val,
                                 double k) {
  // (A + iB) -> (A + iB) exp(-i k xi), i.e. a real rotation of the pair
  const double c = std::cos(k * xi_val);
  const double s = std::sin(k * xi_val);
  return {c * state.alpha + s * state.beta, -s * state.alpha + c * state.beta,
          state.x};
}

PotentialProfile transform_potential(const PotentialProfile& profile,
                                     const GaugeMap& map) {
  if (profile.gauge)
    throw std::invalid_argument("transform_potential: profile already carries a gauge map");
  PotentialProfile out = profile;
  out.gauge = map;
  return out;
}

GaugeFlux gauge_flux(const GaugeMap& map, double x1, double x2, double k) {
  if (!(x2 > x1)) throw std::invalid_argument("gauge_flux: x2 must exceed x1");
  if (std::abs(map.dxi(x1)) > 1e-12 || std::abs(map.dxi(x2)) > 1e-12)
    throw std::domain_error("gauge_flux: endpoints must sit on plateaus (dxi = 0)");

  // split at descriptor breakpoints so every Simpson piece is smooth
  std::vector<double> cuts{x1, x2};
  for (double b : map.breakpoints())
    if (b > x1 && b < x2) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  const int total_panels = 10000;
  double l = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const int panels =
        std::max(64, static_cast<int>(total_panels * (b - a) / (x2 - x1)));
    l += 2.0 * simpson(map, a, b, panels);
  }

  GaugeFlux f;
  f.length = l;
  f.sign = std::cos(0.5 * k * l) >= 0.0 ? 1 : -1;
  return f;
}

double gauge_guard(const PotentialProfile& profile, const GaugeMap& map,
                   double x0, double x1) {
  const int n = 512;
  const double h = (x1 - x0) / n;
  double max_xi = 0.0, max_deps = 0.0, max_eps = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = x0 + i * h;
    max_xi = std::max(max_xi, std::abs(map.xi(x)));
    const ThreeVector e = epsilon_vector(profile, x);
    max_eps = std::max(max_eps, e.norm());
    if (i > 0) {
      const ThreeVector ep = epsilon_vector(profile, x - h);
      max_deps = std::max(max_deps, (e - ep).norm() / h);
    }
  }
  if (max_eps == 0.0) return 0.0;
  return profile.k * max_xi * max_deps / max_eps;
}

double gauge_commute_error(const PotentialProfile& profile, const GaugeMap& map,
                           const EnvelopeState& state0, double x_end, double step) {
  const Trajectory direct = propagate(state0, profile, x_end, step);

  const PotentialProfile primed = transform_potential(profile, map);
  const EnvelopeState start_primed =
      transform_envelope(state0, map.xi(state0.x), profile.k);
  const Trajectory primed_traj = propagate(start_primed, primed, x_end, step);
  const EnvelopeState undone =
      transform_envelope(primed_traj.back(), -map.xi(x_end), profile.k);

  const EnvelopeState& ref = direct.back();
  return std::max(std::abs(undone.alpha - ref.alpha),
                  std::abs(undone.beta - ref.beta));
}

}  // namespace sl2wave
