#pragma once

#include <utility>
#include <vector>

#include "sl2wave/profile.hpp"

namespace sl2wave {

// Quadrature amplitude pair at a position. Real parts describe the
// physical wave A cos kx + B sin kx; a complex pair carries two
// independent real solutions at once.
struct EnvelopeState {
  cplx alpha{0.0}, beta{0.0};
  double x{0.0};
};

struct Trajectory {
  std::vector<EnvelopeState> samples;
  double step{0.0};
  std::string method{"rk4"};
  bool svea_warning{false};

  const EnvelopeState& front() const { return samples.front(); }
  const EnvelopeState& back() const { return samples.back(); }
};

// d(alpha,beta)/dx of the first-order envelope system at state.x.
std::pair<cplx, cplx> envelope_rhs(const EnvelopeState& state,
                                   const PotentialProfile& profile);

// Scalar form for the amplitude (A + iB)/2 of a real envelope pair:
// dA/dx = (k/2i) (E conj(A) + eps0 A) with E = epsc + i epss.
cplx scalar_rhs(cplx amp, const PotentialProfile& profile, double x);

// Fixed-step classical fourth-order integration; samples every `step`,
// final sample exactly at x_end (last step shortened when needed).
Trajectory propagate(const EnvelopeState& state0, const PotentialProfile& profile,
                     double x_end, double step);

// Real transfer matrix M with psi(x1) = M psi(x0); det M = 1.
Matrix2 monodromy(const PotentialProfile& profile, double x0, double x1,
                  double step);

// Adjoint partner (-beta, alpha); paired with the state it gives the
// conserved bilinear below.
std::pair<cplx, cplx> adjoint_state(cplx alpha, cplx beta);

// conj(adjoint) . state = conj(alpha) beta - alpha conj(beta); constant
// along trajectories and equal to i times the s0 Bloch component.
cplx conserved_pairing(cplx alpha, cplx beta);

}  // namespace sl2wave
