#pragma once

#include <string>
#include <vector>

#include "sl2wave/bloch.hpp"

namespace sl2wave {

// Equivalence class of states sharing one density matrix, labelled by a
// unit-pairing Bloch vector (s0 = 1) and squeeze/azimuth parameters.
struct Ray {
  BlochState s;
  double mu{0.0};
  double nu{0.0};
};

// Closed sampled path on the s0 = 1 hyperboloid sheet.
struct LoopPath {
  std::vector<BlochState> points;
  double closure_tol{1e-6};
};

struct PhaseBreakdown {
  double total{0.0};          // continuously lifted cyclic phase
  double dynamical{0.0};      // adjoint-paired generator expectation integral
  double geometric{0.0};      // holonomy of the ray-space connection
  double closure_error{0.0};  // Bloch endpoint mismatch (normalized)
  double residual{0.0};       // total - dynamical - geometric, wrapped to (-pi, pi]
  int winding{0};             // net azimuth turns of the loop
  std::string convention;
};

// Base state (1, i)/sqrt(2); its ray is s = (0, 0, 1) with s0 = 1.
EnvelopeState base_ray_state();

Ray make_ray(const BlochState& s);

// Squeeze-then-rotate representative g(mu, nu, 0) applied to the base
// state; its Bloch vector reproduces s. Requires s0 = 1, s3 >= 1.
EnvelopeState ray_representative(const BlochState& s);

// exp(-i phi J3) applied to the base state: the phase-phi member of the
// base ray, equal to exp(-i phi / 2) times the base state. phi and
// phi + 2 pi label opposite signs of the same pair.
EnvelopeState ray_phase_state(double phi);

// Principal cyclic phase arg(lambda) with M psi0 = lambda psi0.
// Fails with the eigen-residual when psi0 is not cyclic under M.
double total_phase(const Matrix2& monodromy, const EnvelopeState& psi0);

// - k * integral of <adjoint| N |state> / <adjoint|state> along the
// trajectory (trapezoid over the samples); real up to a small residue.
double dynamical_phase(const Trajectory& traj, const PotentialProfile& profile);

// Integral of the invariant two-form s3^-1 ds1 ^ ds2 over the cap
// enclosed by the loop, via the exact primitive: the line integral of
// (s3 - 1) d(azimuth). Counterclockwise in (s1, s2) is positive.
double geometric_phase(const LoopPath& loop);

// Holonomy of the ray-space connection for one cycle: half the cap
// integral above plus 2 pi per azimuth turn. This is the quantity that
// makes total = dynamical + geometric exact for every cyclic evolution;
// it equals half the invariant-two-form cap value modulo 2 pi.
double holonomy_phase(const LoopPath& loop);

struct ContrastForms {
  double phase_form{0.0};      // s3^-1 ds1 ^ ds2
  double curvature_form{0.0};  // (2 s3^2 - 1)^-2 ds1 ^ ds2
  double area_form{0.0};       // (2 - s3^-3)^1/2 ds1 ^ ds2
};

// The three two-forms integrated over the same cap; unlike the
// rotation-group case they all differ.
ContrastForms contrast_forms(const LoopPath& loop);

// Eigenvector (s0 = 1 normalized) of an elliptic real transfer matrix;
// seeds exactly cyclic evolutions.
EnvelopeState elliptic_eigenstate(const Matrix2& m);

// Propagates psi0 over one period, checks cyclicity through the Bloch
// endpoints, and splits the lifted total phase into dynamical and
// geometric parts. The split is exact (up to integration error) for
// any cyclic evolution and is invariant under an initial phase shift of
// psi0 within its ray.
PhaseBreakdown analyze_cycle(const PotentialProfile& profile,
                             const EnvelopeState& psi0, double length,
                             double step, double closure_tol = 1e-3);

// Loop of unit-pairing Bloch states along a trajectory (s0 rescaled to 1).
LoopPath loop_from_trajectory(const Trajectory& traj);

}  // namespace sl2wave
