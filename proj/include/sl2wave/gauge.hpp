#pragma once

#include "sl2wave/envelope.hpp"

namespace sl2wave {

// Amplitude in the deformed frame: amp * exp(-i k xi).
cplx transform_state(cplx amp, double xi_val, double k);

// Same transformation on a quadrature pair: rotation by k xi in the
// (A, B) plane, applied to real and imaginary parts alike.
EnvelopeState transform_envelope(const EnvelopeState& state, double xi_val,
                                 double k);

// Profile seen from the deformed coordinate: coupling rotated by
// -2 k xi(x), dc channel shifted by 2 dxi/dx. All transformed
// quantities are evaluated at the undeformed coordinate, which is the
// stated small-deviation approximation; with that convention the
// transformation is an exact change of dependent variable, so a primed
// propagation commutes with the direct one.
PotentialProfile transform_potential(const PotentialProfile& profile,
                                     const GaugeMap& map);

struct GaugeFlux {
  double length{0.0};  // integral of 2 dxi/dx, i.e. twice the plateau jump
  int sign{1};         // exp(-i k length / 2) for lattice-translation plateaus
};

// Requires dxi = 0 at both endpoints; the length depends only on the
// plateau values, not on the interior shape of xi.
GaugeFlux gauge_flux(const GaugeMap& map, double x1, double x2, double k);

// Dimensionless validity measure k * max|xi| * max|d eps/dx| / max|eps|
// sampled over [x0, x1]; interpretation of the frame change degrades
// when this is not small.
double gauge_guard(const PotentialProfile& profile, const GaugeMap& map,
                   double x0, double x1);

// Max-abs endpoint difference between direct propagation and the
// transform / propagate-primed / untransform route.
double gauge_commute_error(const PotentialProfile& profile, const GaugeMap& map,
                           const EnvelopeState& state0, double x_end, double step);

}  // namespace sl2wave
