#include "sl2wave/berry.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sl2wave {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_pi(double a) { return std::remainder(a, two_pi); }

void check_hyperboloid_point(const BlochState& s) {
  if (s.s3 < 1.0 - 1e-9)
    throw std::domain_error("loop leaves the unit hyperboloid sheet (s3 < 1)");
}

void check_closed(const LoopPath& loop) {
  if (loop.points.size() < 3)
    throw std::domain_error("loop needs at least three points");
  const BlochState& a = loop.points.front();
  const BlochState& b = loop.points.back();
  const double scale = std::max(1.0, std::abs(a.s3));
  const double gap = std::max({std::abs(a.s1 - b.s1), std::abs(a.s2 - b.s2),
                               std::abs(a.s3 - b.s3)});
  if (gap > loop.closure_tol * scale)
    throw std::domain_error("loop is not closed within tolerance");
}

// Accumulated azimuth of (s1, s2) along the loop (counterclockwise
// positive) plus the cap integral of F(s3) d(azimuth) by trapezoid.
struct LineIntegral {
  double cap{0.0};     // integral of F(s3) d chi
  double turns{0.0};   // total azimuth change / 2 pi
};

LineIntegral loop_line_integral(const LoopPath& loop,
                                const std::function<double(double)>& primitive) {
  check_closed(loop);
  double cap = 0.0;
  double total = 0.0;
  double prev_chi = 0.0;
  double prev_f = 0.0;
  bool have_prev = false;
  for (const BlochState& s : loop.points) {
    check_hyperboloid_point(s);
    const double r = std::hypot(s.s1, s.s2);
    double chi = have_prev ? prev_chi : 0.0;
    if (r >= 1e-12 * std::max(1.0, s.s3)) chi = std::atan2(s.s2, s.s1);
    const double f = primitive(s.s3);
    if (have_prev) {
      double d = wrap_pi(chi - prev_chi);
      if (std::abs(d) >= 0.5 * pi)
        throw std::domain_error("loop samples too sparse (azimuth step >= pi/2)");
      // near the axis the azimuth is undefined; the primitive vanishes there
      if (r < 1e-12 * std::max(1.0, s.s3)) d = 0.0;
      cap += 0.5 * (f + prev_f) * d;
      total += d;
    }
    prev_chi = chi;
    prev_f = f;
    have_prev = true;
  }
  return {cap, total / two_pi};
}

int loop_winding(double turns) {
  const auto w = static_cast<int>(std::lround(turns));
  if (std::abs(turns - w) > 1e-3)
    throw std::domain_error("loop azimuth does not close to an integer number of turns");
  return w;
}

// primitive of u f(u) du from 1 to s3 for the three contrast integrands
double phase_primitive(double s3) { return s3 - 1.0; }

double curvature_primitive(double s3) {
  return 0.25 * (1.0 - 1.0 / (2.0 * s3 * s3 - 1.0));
}

double area_primitive(double s3) {
  // integral of u sqrt(2 - u^-3) du over [1, s3], 32-point Gauss-Legendre
  static const double gl_x[16] = {
      0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
      0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
      0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
      0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
      0.9349060759377396891, 0.9647622555875064308, 0.9856115115452683354,
      0.9972638618494815635};
  static const double gl_w[16] = {
      0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
      0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
      0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
      0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
      0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
      0.0070186100094700966};
  const double a = 1.0, b = s3;
  const double c = 0.5 * (b - a), m = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double u1 = m + c * gl_x[i];
    const double u2 = m - c * gl_x[i];
    acc += gl_w[i] * (u1 * std::sqrt(2.0 - 1.0 / (u1 * u1 * u1)) +
                      u2 * std::sqrt(2.0 - 1.0 / (u2 * u2 * u2)));
  }
  return acc * c;
}

}  // namespace

EnvelopeState base_ray_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {cplx{r, 0.0}, cplx{0.0, r}, 0.0};
}

Ray make_ray(const BlochState& s) {
  if (std::abs(s.s0 - 1.0) > 1e-6)
    throw std::domain_error("make_ray: pairing must be normalized to s0 = 1");
  const double s3 = std::max(1.0, s.s3);
  const double nu = std::acosh(s3);
  const double r = std::hypot(s.s1, s.s2);
  const double mu = r < 1e-12 ? 0.0 : std::atan2(s.s1, -s.s2);
  return {s, mu, nu};
}

EnvelopeState ray_representative(const BlochState& s) {
  if (std::abs(s.s0 - 1.0) > 1e-6)
    throw std::domain_error("ray_representative: pairing must be normalized to s0 = 1");
  const double residual = s.s1 * s.s1 + s.s2 * s.s2 - s.s3 * s.s3 + 1.0;
  if (std::abs(residual) > 1e-6 * std::max(1.0, s.s3 * s.s3))
    throw std::domain_error("ray_representative: point is off the unit hyperboloid");
  const Ray ray = make_ray(s);
  const EnvelopeState psi0 = base_ray_state();
  const auto v = group_element(ray.mu, ray.nu, 0.0).apply(psi0.alpha, psi0.beta);
  return {v[0], v[1], 0.0};
}

EnvelopeState ray_phase_state(double phi) {
  const EnvelopeState psi0 = base_ray_state();
  const auto v = exp_generator({0.0, 0.0, 1.0}, -phi).apply(psi0.alpha, psi0.beta);
  return {v[0], v[1], 0.0};
}

double total_phase(const Matrix2& monodromy, const EnvelopeState& psi0) {
  const double n2 = std::norm(psi0.alpha) + std::norm(psi0.beta);
  if (n2 < 1e-300) throw std::domain_error("total_phase: zero state");
  const auto mv = monodromy.apply(psi0.alpha, psi0.beta);
  const cplx lambda =
      (std::conj(psi0.alpha) * mv[0] + std::conj(psi0.beta) * mv[1]) / n2;
  const double res = std::sqrt((std::norm(mv[0] - lambda * psi0.alpha) +
                                std::norm(mv[1] - lambda * psi0.beta)) /
                               n2);
  if (res > 1e-6) {
    std::ostringstream msg;
    msg << "total_phase: state is not cyclic (eigen residual " << res << ")";
    throw std::domain_error(msg.str());
  }
  if (std::abs(std::abs(lambda) - 1.0) > 1e-6)
    throw std::domain_error("total_phase: monodromy is not elliptic on this state");
  return std::arg(lambda);
}

double dynamical_phase(const Trajectory& traj, const PotentialProfile& profile) {
  if (traj.samples.size() < 2)
    throw std::invalid_argument("dynamical_phase: trajectory too short");
  const EnvelopeState& s0 = traj.samples.front();
  const cplx pairing = conserved_pairing(s0.alpha, s0.beta);
  if (std::abs(pairing) < 1e-12)
    throw std::domain_error("dynamical_phase: degenerate (real-like) pairing");

  // <adjoint| N |state> = (i/k) <adjoint| d(state)/dx
  cplx acc = 0.0;
  cplx prev = 0.0;
  double prev_x = 0.0;
  bool have_prev = false;
  for (const EnvelopeState& st : traj.samples) {
    const auto [da, db] = envelope_rhs(st, profile);
    const cplx f = -std::conj(st.beta) * da + std::conj(st.alpha) * db;
    if (have_prev) acc += 0.5 * (f + prev) * (st.x - prev_x);
    prev = f;
    prev_x = st.x;
    have_prev = true;
  }
  const cplx val = -cplx{0.0, 1.0} * acc / pairing;
  if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real())))
    throw std::runtime_error("dynamical_phase: imaginary residue exceeds tolerance");
  return val.real();
}

double geometric_phase(const LoopPath& loop) {
  return loop_line_integral(loop, phase_primitive).cap;
}

double holonomy_phase(const LoopPath& loop) {
  const LineIntegral li = loop_line_integral(loop, phase_primitive);
  return 0.5 * li.cap + two_pi * loop_winding(li.turns);
}

ContrastForms contrast_forms(const LoopPath& loop) {
  ContrastForms out;
  out.phase_form = loop_line_integral(loop, phase_primitive).cap;
  out.curvature_form = loop_line_integral(loop, curvature_primitive).cap;
  out.area_form = loop_line_integral(loop, area_primitive).cap;
  return out;
}

EnvelopeState elliptic_eigenstate(const Matrix2& m) {
  const double m11 = m.a11.real(), m12 = m.a12.real();
  const double m21 = m.a21.real(), m22 = m.a22.real();
  const double tr = m11 + m22;
  if (!(std::abs(tr) < 2.0 * (1.0 - 1e-12)))
    throw std::domain_error("elliptic_eigenstate: transfer matrix is not elliptic");
  const double im = std::sqrt(1.0 - 0.25 * tr * tr);
  const cplx lambda{0.5 * tr, im};

  cplx a, b;
  if (std::abs(m12) >= std::abs(m21)) {
    a = m12;
    b = lambda - m11;
  } else {
    a = lambda - m22;
    b = m21;
  }
  double s0 = 2.0 * (std::conj(a) * b).imag();
  if (s0 < 0.0) {
    a = std::conj(a);
    b = std::conj(b);
    s0 = -s0;
  }
  if (s0 < 1e-300)
    throw std::domain_error("elliptic_eigenstate: degenerate eigenvector");
  const double scale = 1.0 / std::sqrt(s0);
  return {a * scale, b * scale, 0.0};
}

LoopPath loop_from_trajectory(const Trajectory& traj) {
  LoopPath loop;
  loop.points.reserve(traj.samples.size());
  const EnvelopeState& first = traj.samples.front();
  const double s0 = bloch_from_complex(first.alpha, first.beta).s0;
  if (s0 < 1e-9)
    throw std::domain_error("loop_from_trajectory: state pairing must be positive");
  const double inv = 1.0 / s0;
  for (const EnvelopeState& st : traj.samples) {
    const BlochState s = bloch_from_complex(st.alpha, st.beta);
    loop.points.push_back({s.s0 * inv, s.s1 * inv, s.s2 * inv, s.s3 * inv});
  }
  return loop;
}

PhaseBreakdown analyze_cycle(const PotentialProfile& profile,
                             const EnvelopeState& psi0, double length,
                             double step, double closure_tol) {
  const Trajectory traj = propagate(psi0, profile, psi0.x + length, step);
  const LoopPath loop = loop_from_trajectory(traj);

  const BlochState& sa = loop.points.front();
  const BlochState& sb = loop.points.back();
  const double closure =
      std::max({std::abs(sa.s1 - sb.s1), std::abs(sa.s2 - sb.s2),
                std::abs(sa.s3 - sb.s3)}) /
      std::max(1.0, sa.s3);
  if (closure > closure_tol) {
    std::ostringstream msg;
    msg << "analyze_cycle: evolution is not cyclic (Bloch endpoint distance "
        << closure << ")";
    throw std::domain_error(msg.str());
  }

  // normalize the pairing so states factor as exp(-i phi / 2) times the
  // ray representative
  const double s0_raw = bloch_from_complex(psi0.alpha, psi0.beta).s0;
  const double amp_scale = 1.0 / std::sqrt(s0_raw);

  // continuous azimuth and in-ray phase along the trajectory
  const EnvelopeState base = base_ray_state();
  double dtheta = 0.0;
  double chi_first = 0.0, chi_last = 0.0;
  double prev_chi = 0.0;
  cplx prev_c = 0.0;
  bool have_prev = false;
  for (std::size_t i = 0; i < loop.points.size(); ++i) {
    const BlochState& s = loop.points[i];
    const double r = std::hypot(s.s1, s.s2);
    double chi_here = have_prev ? prev_chi : 0.0;
    if (r >= 1e-12 * std::max(1.0, s.s3)) {
      const double raw = std::atan2(s.s2, s.s1);
      chi_here = have_prev ? prev_chi + wrap_pi(raw - prev_chi) : raw;
    }
    // representative with continuously unwrapped azimuth
    const double nu = std::acosh(std::max(1.0, s.s3));
    const double mu = chi_here + 0.5 * pi;
    const auto rv = group_element(mu, nu, 0.0).apply(base.alpha, base.beta);
    const EnvelopeState& st = traj.samples[i];
    const cplx proj = std::conj(rv[0]) * (st.alpha * amp_scale) +
                      std::conj(rv[1]) * (st.beta * amp_scale);
    const cplx c = proj / (std::norm(rv[0]) + std::norm(rv[1]));
    if (have_prev) {
      dtheta += std::arg(c / prev_c);
    } else {
      chi_first = chi_here;
    }
    chi_last = chi_here;
    prev_chi = chi_here;
    prev_c = c;
    have_prev = true;
  }
  const double turns = (chi_last - chi_first) / two_pi;
  const int w = loop_winding(turns);

  PhaseBreakdown out;
  out.total = dtheta + pi * w;
  out.dynamical = dynamical_phase(traj, profile);
  out.geometric = holonomy_phase(loop);
  out.closure_error = closure;
  out.winding = w;
  out.residual = wrap_pi(out.total - out.dynamical - out.geometric);
  out.convention =
      "geometric = half the invariant-two-form cap integral plus 2 pi per "
      "azimuth turn; counterclockwise in (s1, s2) positive";
  return out;
}

}  // namespace sl2wave
