#pragma once

#include <span>
#include <vector>

#include "sl2wave/envelope.hpp"

namespace sl2wave {

struct WaveSample {
  double x{0.0};
  double psi{0.0};
  double dpsi{0.0};
};

// epsilon(x) seen by the carrier-resolved wave equation:
// eps0 + 2 epsc cos 2kx + 2 epss sin 2kx.
double full_epsilon(const PotentialProfile& profile, double x);

// Integrates psi'' + k^2 (1 + epsilon(x)) psi = 0 as a first-order pair
// with the same fixed-step fourth-order method. The step is shrunk to
// divide the span exactly; at most the requested step and at least 40
// samples per carrier wavelength are required.
std::vector<WaveSample> helmholtz_solve(const PotentialProfile& profile,
                                        double psi0, double dpsi0, double x0,
                                        double x_end, double step);

// Carrier-resolved wave A cos kx + B sin kx from one real component of a
// trajectory (part 0: real, part 1: imaginary), sampled on a uniform
// grid of the given step; derivatives include the envelope slopes.
std::vector<WaveSample> synthesize(const Trajectory& traj,
                                   const PotentialProfile& profile, int part = 0,
                                   double step = 0.0);

struct DemodSamples {
  std::vector<double> x, A, B;
};

// Quadrature demodulation: A = 2 <psi cos kx>, B = 2 <psi sin kx> with a
// moving average over exactly one carrier period (the integer-period
// window cancels the counter-rotating sidebands); half a window is
// trimmed from each end. Requires uniform sampling that divides the
// carrier period, at least 40 samples per wavelength, two periods total.
DemodSamples demodulate(std::span<const WaveSample> wave, double k);

struct OracleReport {
  double rms{0.0};          // envelope discrepancy, rms over samples / amplitude
  double max{0.0};          // worst-case discrepancy / amplitude
  double bloch_rms{0.0};    // Bloch-vector discrepancy, rms / max s3
  double growth_rate{0.0};  // least-squares slope of log amplitude
  int samples{0};
};

// Seeds the carrier-resolved solver from the trajectory initial data
// (slope including the envelope derivative), demodulates, and reports
// the envelope-level discrepancy. Complex trajectories are checked one
// real component at a time and recombined.
OracleReport compare_with_helmholtz(const Trajectory& traj,
                                    const PotentialProfile& profile,
                                    double oracle_step = 0.0);

// Default carrier-resolving step (1/400 of the carrier period).
double default_oracle_step(double k);

}  // namespace sl2wave
