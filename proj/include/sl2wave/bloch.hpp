#pragma once

#include <span>
#include <vector>

#include "sl2wave/envelope.hpp"

namespace sl2wave {

// Quadratic image of an amplitude pair. Real pairs land on the cone
// s1^2 + s2^2 - s3^2 = 0 (s0 = 0); complex pairs on the hyperboloid
// s1^2 + s2^2 - s3^2 = -s0^2 with s0 conserved, upper sheet s3 >= 0.
struct BlochState {
  double s0{0.0}, s1{0.0}, s2{0.0}, s3{0.0};
};

BlochState bloch_from_real(double A, double B);
BlochState bloch_from_complex(cplx alpha, cplx beta);

ThreeVector bloch_vector(const BlochState& s);

// 2 i |psi><psi| J3 for a real pair; equals i s . K entrywise.
Matrix2 density_matrix_real(double A, double B);

// |psi><psi| R with R = 2 i J3; entries
// [[-alpha conj(beta), |alpha|^2], [-|beta|^2, conj(alpha) beta]];
// trace is i s0.
Matrix2 density_matrix_complex(cplx alpha, cplx beta);

// ds/dx = k * (s x~ eps), where x~ is the signature-adapted cross
// product; this is the sign consistent with the quadrature envelope
// system (the s0 component is constant).
ThreeVector bloch_rhs(const BlochState& s, const ThreeVector& eps, double k);

struct BlochSample {
  double x{0.0};
  BlochState s;
};

struct BlochTrajectory {
  std::vector<BlochSample> samples;
  double step{0.0};
  bool svea_warning{false};
};

BlochTrajectory propagate_bloch(const BlochState& s0, const PotentialProfile& profile,
                                double x0, double x_end, double step);

enum class ConicKind { Elliptic, Parabolic, Hyperbolic };

struct ConicClass {
  ConicKind kind{ConicKind::Parabolic};
  double discriminant{0.0};  // eps3^2 - eps1^2 - eps2^2
  bool degenerate{false};    // zero modulation vector
};

// Constant-modulation trajectory type: bounded precession (elliptic,
// propagating bands), marginal (parabolic), or exponential growth
// (hyperbolic, forbidden bands).
ConicClass classify(const ThreeVector& eps);

const char* to_string(ConicKind kind);

// Wrap of the on-cone vector onto the 60-degree-apex cone:
// (s1, s2, sqrt(3) s3) / (2 sqrt(s3)). Requires s0 = 0, s3 > 0.
ThreeVector cone_map(const BlochState& s);

// Signed number of turns of the (s1, s2) projection of a closed on-cone
// loop around the apex. Positive sense is the one induced by a positive
// dc modulation (clockwise in the (s1, s2) plane); the amplitude-pair
// holonomy across the loop is (-1)^n.
int winding_number(std::span<const BlochState> samples, double closure_tol = 1e-6);

}  // namespace sl2wave
