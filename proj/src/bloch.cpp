#include "sl2wave/bloch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sl2wave {

BlochState bloch_from_real(double A, double B) {
  return {0.0, 2.0 * A * B, -A * A + B * B, A * A + B * B};
}

BlochState bloch_from_complex(cplx alpha, cplx beta) {
  const cplx ab = std::conj(alpha) * beta;
  return {2.0 * ab.imag(), 2.0 * ab.real(), std::norm(beta) - std::norm(alpha),
          std::norm(alpha) + std::norm(beta)};
}

ThreeVector bloch_vector(const BlochState& s) { return {s.s1, s.s2, s.s3}; }

Matrix2 density_matrix_real(double A, double B) {
  // 2 i |psi><psi| J3 with |psi> = (A, B)
  const Matrix2 j3 = generators_sl2r()[2];
  const Matrix2 outer{A * A, A * B, A * B, B * B};
  return cplx{0.0, 2.0} * (outer * j3);
}

Matrix2 density_matrix_complex(cplx alpha, cplx beta) {
  return {-alpha * std::conj(beta), std::norm(alpha), -std::norm(beta),
          std::conj(alpha) * beta};
}

ThreeVector bloch_rhs(const BlochState& s, const ThreeVector& eps, double k) {
  return minkowski_cross({s.s1, s.s2, s.s3}, eps) * k;
}

BlochTrajectory propagate_bloch(const BlochState& s0, const PotentialProfile& profile,
                                double x0, double x_end, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("propagate_bloch: step must be positive");
  if (!(x_end > x0))
    throw std::invalid_argument("propagate_bloch: x_end must exceed x0");

  const double k = profile.k;
  auto rhs = [&](double x, const ThreeVector& v) {
    return minkowski_cross(v, epsilon_vector(profile, x)) * k;
  };
  auto rk4 = [&](double x, const ThreeVector& v, double h) {
    const ThreeVector k1 = rhs(x, v);
    const ThreeVector k2 = rhs(x + 0.5 * h, v + k1 * (0.5 * h));
    const ThreeVector k3 = rhs(x + 0.5 * h, v + k2 * (0.5 * h));
    const ThreeVector k4 = rhs(x + h, v + k3 * h);
    return v + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  };

  const double span = x_end - x0;
  const auto n_full = static_cast<long long>(std::floor(span / step * (1.0 + 1e-12)));
  const double rem = span - static_cast<double>(n_full) * step;
  const bool has_tail = rem > 1e-12 * step;

  BlochTrajectory traj;
  traj.step = step;
  traj.samples.reserve(static_cast<std::size_t>(n_full) + 2);

  ThreeVector v{s0.s1, s0.s2, s0.s3};
  traj.samples.push_back({x0, s0});
  if (!profile.within_svea(x0)) traj.svea_warning = true;

  for (long long i = 0; i < n_full; ++i) {
    const double x = x0 + static_cast<double>(i) * step;
    v = rk4(x, v, step);
    const double xn = (i + 1 == n_full && !has_tail)
                          ? x_end
                          : x0 + static_cast<double>(i + 1) * step;
    traj.samples.push_back({xn, {s0.s0, v.v1, v.v2, v.v3}});
    if (!profile.within_svea(xn)) traj.svea_warning = true;
  }
  if (has_tail) {
    const double x = x0 + static_cast<double>(n_full) * step;
    v = rk4(x, v, rem);
    traj.samples.push_back({x_end, {s0.s0, v.v1, v.v2, v.v3}});
    if (!profile.within_svea(x_end)) traj.svea_warning = true;
  }
  return traj;
}

ConicClass classify(const ThreeVector& eps) {
  const double n2 = eps.v1 * eps.v1 + eps.v2 * eps.v2 + eps.v3 * eps.v3;
  const double disc = eps.v3 * eps.v3 - eps.v1 * eps.v1 - eps.v2 * eps.v2;
  ConicClass c;
  c.discriminant = disc;
  if (n2 == 0.0) {
    c.kind = ConicKind::Parabolic;
    c.degenerate = true;
    return c;
  }
  const double tol = 1e-12 * n2;
  if (disc > tol)
    c.kind = ConicKind::Elliptic;
  else if (disc < -tol)
    c.kind = ConicKind::Hyperbolic;
  else
    c.kind = ConicKind::Parabolic;
  return c;
}

const char* to_string(ConicKind kind) {
  switch (kind) {
    case ConicKind::Elliptic:
      return "elliptic";
    case ConicKind::Parabolic:
      return "parabolic";
    case ConicKind::Hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

ThreeVector cone_map(const BlochState& s) {
  if (!(s.s3 > 0.0)) throw std::domain_error("cone_map: apex point has no image");
  const double scale = std::max(1.0, s.s3 * s.s3);
  if (std::abs(s.s0) > 1e-6 * std::max(1.0, s.s3) ||
      std::abs(s.s1 * s.s1 + s.s2 * s.s2 - s.s3 * s.s3) > 1e-6 * scale)
    throw std::domain_error("cone_map: input does not lie on the cone");
  const double r = 2.0 * std::sqrt(s.s3);
  return {s.s1 / r, s.s2 / r, std::numbers::sqrt3 * s.s3 / r};
}

int winding_number(std::span<const BlochState> samples, double closure_tol) {
  if (samples.size() < 3)
    throw std::domain_error("winding_number: need at least three samples");

  const BlochState& a = samples.front();
  const BlochState& b = samples.back();
  const double scale = std::max(1.0, std::abs(a.s3));
  const double gap = std::max({std::abs(a.s1 - b.s1), std::abs(a.s2 - b.s2),
                               std::abs(a.s3 - b.s3)});
  if (gap > closure_tol * scale)
    throw std::domain_error("winding_number: path is not closed");

  double total = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  for (const BlochState& s : samples) {
    const double r = std::hypot(s.s1, s.s2);
    if (!(s.s3 > 0.0) || r < 1e-12 * std::max(1.0, s.s3))
      throw std::domain_error("winding_number: path touches the cone apex");
    // positive sense: the rotation generated by a positive dc channel
    const double ang = std::atan2(s.s1, s.s2);
    if (have_prev) {
      double d = ang - prev;
      d = std::remainder(d, 2.0 * std::numbers::pi);
      if (std::abs(d) >= 0.5 * std::numbers::pi)
        throw std::domain_error("winding_number: samples too sparse (angular step >= pi/2)");
      total += d;
    }
    prev = ang;
    have_prev = true;
  }

  const double turns = total / (2.0 * std::numbers::pi);
  const auto n = static_cast<int>(std::lround(turns));
  if (std::abs(turns - n) > 1e-3) {
    std::ostringstream msg;
    msg << "winding_number: accumulated angle is not an integer number of turns ("
        << turns << ")";
    throw std::domain_error(msg.str());
  }
  return n;
}

}  // namespace sl2wave
