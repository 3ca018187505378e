#include "sl2wave/envelope.hpp"

#include <cmath>
#include <stdexcept>

namespace sl2wave {

namespace {

struct Pair {
  cplx a, b;
};

// RHS with real coefficients so real inputs stay exactly real
inline Pair rhs_at(double x, const Pair& y, const PotentialProfile& p) {
  const auto [e0, ec, es] = p.channels(x);
  const double h = 0.5 * p.k;
  return {h * (es * y.a + (e0 - ec) * y.b), h * (-(ec + e0) * y.a - es * y.b)};
}

inline Pair rk4_step(double x, const Pair& y, double h, const PotentialProfile& p) {
  const Pair k1 = rhs_at(x, y, p);
  const Pair k2 = rhs_at(x + 0.5 * h, {y.a + 0.5 * h * k1.a, y.b + 0.5 * h * k1.b}, p);
  const Pair k3 = rhs_at(x + 0.5 * h, {y.a + 0.5 * h * k2.a, y.b + 0.5 * h * k2.b}, p);
  const Pair k4 = rhs_at(x + h, {y.a + h * k3.a, y.b + h * k3.b}, p);
  return {y.a + h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
          y.b + h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
}

}  // namespace

std::pair<cplx, cplx> envelope_rhs(const EnvelopeState& state,
                                   const PotentialProfile& profile) {
  const Pair d = rhs_at(state.x, {state.alpha, state.beta}, profile);
  return {d.a, d.b};
}

cplx scalar_rhs(cplx amp, const PotentialProfile& profile, double x) {
  const auto [e0, ec, es] = profile.channels(x);
  const cplx coupling{ec, es};
  return (profile.k / cplx{0.0, 2.0}) * (coupling * std::conj(amp) + e0 * amp);
}

Trajectory propagate(const EnvelopeState& state0, const PotentialProfile& profile,
                     double x_end, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("propagate: step must be positive");
  if (!(x_end > state0.x))
    throw std::invalid_argument("propagate: x_end must exceed the initial position");

  const double span = x_end - state0.x;
  const auto n_full = static_cast<long long>(std::floor(span / step * (1.0 + 1e-12)));
  const double rem = span - static_cast<double>(n_full) * step;
  const bool has_tail = rem > 1e-12 * step;

  Trajectory traj;
  traj.step = step;
  traj.samples.reserve(static_cast<std::size_t>(n_full) + 2);

  Pair y{state0.alpha, state0.beta};
  traj.samples.push_back(state0);
  if (!profile.within_svea(state0.x)) traj.svea_warning = true;

  for (long long i = 0; i < n_full; ++i) {
    const double x = state0.x + static_cast<double>(i) * step;
    y = rk4_step(x, y, step, profile);
    const double xn = (i + 1 == n_full && !has_tail)
                          ? x_end
                          : state0.x + static_cast<double>(i + 1) * step;
    traj.samples.push_back({y.a, y.b, xn});
    if (!profile.within_svea(xn)) traj.svea_warning = true;
  }
  if (has_tail) {
    const double x = state0.x + static_cast<double>(n_full) * step;
    y = rk4_step(x, y, rem, profile);
    traj.samples.push_back({y.a, y.b, x_end});
    if (!profile.within_svea(x_end)) traj.svea_warning = true;
  }
  return traj;
}

Matrix2 monodromy(const PotentialProfile& profile, double x0, double x1,
                  double step) {
  if (!(x1 > x0)) throw std::invalid_argument("monodromy: x1 must exceed x0");
  const Trajectory ta = propagate({1.0, 0.0, x0}, profile, x1, step);
  const Trajectory tb = propagate({0.0, 1.0, x0}, profile, x1, step);
  const EnvelopeState& ea = ta.back();
  const EnvelopeState& eb = tb.back();
  return {ea.alpha, eb.alpha, ea.beta, eb.beta};
}

std::pair<cplx, cplx> adjoint_state(cplx alpha, cplx beta) {
  return {-beta, alpha};
}

cplx conserved_pairing(cplx alpha, cplx beta) {
  return std::conj(alpha) * beta - alpha * std::conj(beta);
}

}  // namespace sl2wave
