#include "sl2wave/oracle.hpp"

#include "sl2wave/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sl2wave {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Wv {
  double psi, dpsi;
};

inline Wv wave_rhs(double x, const Wv& y, const PotentialProfile& p) {
  const double k2 = p.k * p.k;
  return {y.dpsi, -k2 * (1.0 + full_epsilon(p, x)) * y.psi};
}

inline Wv wave_rk4(double x, const Wv& y, double h, const PotentialProfile& p) {
  const Wv k1 = wave_rhs(x, y, p);
  const Wv k2 = wave_rhs(x + 0.5 * h, {y.psi + 0.5 * h * k1.psi, y.dpsi + 0.5 * h * k1.dpsi}, p);
  const Wv k3 = wave_rhs(x + 0.5 * h, {y.psi + 0.5 * h * k2.psi, y.dpsi + 0.5 * h * k2.dpsi}, p);
  const Wv k4 = wave_rhs(x + h, {y.psi + h * k3.psi, y.dpsi + h * k3.dpsi}, p);
  return {y.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
          y.dpsi + h / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi)};
}

// linear interpolation of a trajectory sampled with (mostly) uniform step
struct TrajInterp {
  const Trajectory& traj;

  EnvelopeState at(double x) const {
    const auto& s = traj.samples;
    if (x <= s.front().x) return s.front();
    if (x >= s.back().x) return s.back();
    std::size_t i =
        std::min(static_cast<std::size_t>((x - s.front().x) / traj.step),
                 s.size() - 2);
    while (i + 1 < s.size() && s[i + 1].x < x) ++i;
    while (i > 0 && s[i].x > x) --i;
    const double t = (x - s[i].x) / (s[i + 1].x - s[i].x);
    return {s[i].alpha + t * (s[i + 1].alpha - s[i].alpha),
            s[i].beta + t * (s[i + 1].beta - s[i].beta), x};
  }
};

double part_of(cplx z, int part) { return part == 0 ? z.real() : z.imag(); }

}  // namespace

double full_epsilon(const PotentialProfile& profile, double x) {
  const auto [e0, ec, es] = profile.channels(x);
  return e0 + 2.0 * ec * std::cos(2.0 * profile.k * x) +
         2.0 * es * std::sin(2.0 * profile.k * x);
}

double default_oracle_step(double k) { return two_pi / (400.0 * k); }

std::vector<WaveSample> helmholtz_solve(const PotentialProfile& profile,
                                        double psi0, double dpsi0, double x0,
                                        double x_end, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("helmholtz_solve: step must be positive");
  if (!(x_end > x0)) throw std::invalid_argument("helmholtz_solve: x_end must exceed x0");
  if (step > two_pi / (40.0 * profile.k))
    throw std::invalid_argument(
        "helmholtz_solve: step too coarse (need 40 samples per carrier wavelength)");

  const double span = x_end - x0;
  const auto n = static_cast<long long>(std::ceil(span / step - 1e-9));
  const double h = span / static_cast<double>(n);

  std::vector<WaveSample> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  Wv y{psi0, dpsi0};
  out.push_back({x0, y.psi, y.dpsi});
  for (long long i = 0; i < n; ++i) {
    const double x = x0 + static_cast<double>(i) * h;
    y = wave_rk4(x, y, h, profile);
    out.push_back({x0 + static_cast<double>(i + 1) * h, y.psi, y.dpsi});
  }
  out.back().x = x_end;
  return out;
}

std::vector<WaveSample> synthesize(const Trajectory& traj,
                                   const PotentialProfile& profile, int part,
                                   double step) {
  if (traj.samples.size() < 2)
    throw std::invalid_argument("synthesize: trajectory too short");
  if (step <= 0.0) step = default_oracle_step(profile.k);

  const double k = profile.k;
  const double x0 = traj.front().x;
  const double span = traj.back().x - x0;
  const auto n = static_cast<long long>(std::floor(span / step + 1e-9));
  const TrajInterp interp{traj};

  std::vector<WaveSample> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i) {
    const double x = x0 + static_cast<double>(i) * step;
    const EnvelopeState st = interp.at(x);
    const auto [da, db] = envelope_rhs(st, profile);
    const double A = part_of(st.alpha, part), B = part_of(st.beta, part);
    const double dA = part_of(da, part), dB = part_of(db, part);
    const double c = std::cos(k * x), s = std::sin(k * x);
    out.push_back({x, A * c + B * s, dA * c + dB * s + k * (-A * s + B * c)});
  }
  return out;
}

DemodSamples demodulate(std::span<const WaveSample> wave, double k) {
  if (wave.size() < 3) throw std::domain_error("demodulate: record too short");
  const double h = wave[1].x - wave[0].x;
  for (std::size_t i = 1; i < wave.size(); ++i) {
    if (std::abs((wave[i].x - wave[i - 1].x) - h) > 1e-9 * std::max(h, 1.0))
      throw std::domain_error("demodulate: sampling is not uniform");
  }

  const double period = two_pi / k;
  const auto window = static_cast<long long>(std::llround(period / h));
  if (std::abs(window * h - period) > 1e-6 * period)
    throw std::domain_error("demodulate: sample spacing does not divide the carrier period");
  if (window < 40)
    throw std::domain_error("demodulate: need at least 40 samples per wavelength");
  if (window % 2 != 0)
    throw std::domain_error("demodulate: need an even number of samples per wavelength");
  const long long m = window / 2;
  const auto n = static_cast<long long>(wave.size());
  if (n - 1 < 2 * window)
    throw std::domain_error("demodulate: record shorter than two carrier periods");

  // prefix sums of the mixed-down quadratures
  std::vector<double> pc(wave.size() + 1, 0.0), ps(wave.size() + 1, 0.0);
  std::vector<double> fc(wave.size()), fs(wave.size());
  for (long long i = 0; i < n; ++i) {
    const double c = std::cos(k * wave[i].x), s = std::sin(k * wave[i].x);
    fc[i] = wave[i].psi * c;
    fs[i] = wave[i].psi * s;
    pc[i + 1] = pc[i] + fc[i];
    ps[i + 1] = ps[i] + fs[i];
  }

  DemodSamples out;
  out.x.reserve(wave.size());
  const double scale = 2.0 * h / period;
  for (long long j = m; j + m < n; ++j) {
    // trapezoid over exactly one period centered at sample j
    const double ic = (pc[j + m + 1] - pc[j - m]) - 0.5 * (fc[j - m] + fc[j + m]);
    const double is = (ps[j + m + 1] - ps[j - m]) - 0.5 * (fs[j - m] + fs[j + m]);
    out.x.push_back(wave[j].x);
    out.A.push_back(scale * ic);
    out.B.push_back(scale * is);
  }
  return out;
}

OracleReport compare_with_helmholtz(const Trajectory& traj,
                                    const PotentialProfile& profile,
                                    double oracle_step) {
  if (traj.samples.size() < 2)
    throw std::invalid_argument("compare_with_helmholtz: trajectory too short");
  const double k = profile.k;
  const double period = two_pi / k;
  if (oracle_step <= 0.0) oracle_step = default_oracle_step(k);

  // uniform grid dividing the carrier period exactly
  auto per_wavelength = static_cast<long long>(std::llround(period / oracle_step));
  per_wavelength = std::max<long long>(40, per_wavelength);
  if (per_wavelength % 2 != 0) ++per_wavelength;
  const double h = period / static_cast<double>(per_wavelength);

  const double x0 = traj.front().x;
  const double span = traj.back().x - x0;
  const auto n = static_cast<long long>(std::floor(span / h + 1e-9));
  if (n * h < 2.0 * period)
    throw std::invalid_argument("compare_with_helmholtz: trajectory shorter than two carrier periods");
  const double x_end = x0 + static_cast<double>(n) * h;

  // is the trajectory genuinely complex?
  double scale_amp = 0.0, max_imag = 0.0;
  for (const EnvelopeState& st : traj.samples) {
    scale_amp = std::max(scale_amp, std::sqrt(std::norm(st.alpha) + std::norm(st.beta)));
    max_imag = std::max({max_imag, std::abs(st.alpha.imag()), std::abs(st.beta.imag())});
  }
  const bool complex_traj = max_imag > 1e-12 * std::max(1.0, scale_amp);

  DemodSamples parts[2];
  for (int part = 0; part < (complex_traj ? 2 : 1); ++part) {
    const EnvelopeState& first = traj.front();
    const auto [da, db] = envelope_rhs(first, profile);
    const double A0 = part_of(first.alpha, part), B0 = part_of(first.beta, part);
    const double dA0 = part_of(da, part);
    const double c = std::cos(k * x0), s = std::sin(k * x0);
    // psi and its slope at x0, including the envelope derivative term
    const double psi0 = A0 * c + B0 * s;
    const double dpsi0 = dA0 * c + part_of(db, part) * s + k * (-A0 * s + B0 * c);
    const auto wave = helmholtz_solve(profile, psi0, dpsi0, x0, x_end, h);
    parts[part] = demodulate(wave, k);
  }

  const TrajInterp interp{traj};
  OracleReport rep;
  double acc2 = 0.0, mx = 0.0, acc_bloch = 0.0, max_s3 = 0.0;
  const auto& d0 = parts[0];

  // least-squares slope of log amplitude over the central half
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double fit_lo = x0 + 0.25 * span, fit_hi = x0 + 0.75 * span;

  for (std::size_t j = 0; j < d0.x.size(); ++j) {
    const double x = d0.x[j];
    const EnvelopeState ref = interp.at(x);
    const cplx a_dem{d0.A[j], complex_traj ? parts[1].A[j] : 0.0};
    const cplx b_dem{d0.B[j], complex_traj ? parts[1].B[j] : 0.0};
    const double err = std::sqrt(std::norm(a_dem - ref.alpha) + std::norm(b_dem - ref.beta));
    acc2 += err * err;
    mx = std::max(mx, err);

    const BlochState se = bloch_from_complex(ref.alpha, ref.beta);
    const BlochState sd = bloch_from_complex(a_dem, b_dem);
    const double db2 = (se.s0 - sd.s0) * (se.s0 - sd.s0) +
                       (se.s1 - sd.s1) * (se.s1 - sd.s1) +
                       (se.s2 - sd.s2) * (se.s2 - sd.s2) +
                       (se.s3 - sd.s3) * (se.s3 - sd.s3);
    acc_bloch += db2;
    max_s3 = std::max(max_s3, se.s3);

    const double amp = std::sqrt(std::norm(a_dem) + std::norm(b_dem));
    if (x >= fit_lo && x <= fit_hi && amp > 0.0) {
      const double lx = x, ly = std::log(amp);
      sw += 1.0;
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
  }

  const auto cnt = static_cast<double>(d0.x.size());
  rep.samples = static_cast<int>(d0.x.size());
  rep.rms = std::sqrt(acc2 / cnt) / scale_amp;
  rep.max = mx / scale_amp;
  rep.bloch_rms = std::sqrt(acc_bloch / cnt) / std::max(1e-300, max_s3);
  const double denom = sw * sxx - sx * sx;
  rep.growth_rate = denom > 0.0 ? (sw * sxy - sx * sy) / denom : 0.0;
  return rep;
}

}  // namespace sl2wave
