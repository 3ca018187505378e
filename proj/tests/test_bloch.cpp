#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sl2wave/bloch.hpp"
#include "test_util.hpp"

using namespace sl2wave;
using testutil::max_diff;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

PotentialProfile fig_profile() {
  return constant_profile(1.0, 3.0 * pi / 400.0, pi / 400.0, 2.0 * pi / 400.0);
}

double cone_residual(const BlochState& s) {
  return s.s1 * s.s1 + s.s2 * s.s2 - s.s3 * s.s3;
}

EnvelopeState base_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {cplx{r, 0.0}, cplx{0.0, r}, 0.0};
}

}  // namespace

TEST_CASE("quadratic image of a real pair") {
  const BlochState s = bloch_from_real(1.0, 0.0);
  CHECK(s.s0 == 0.0);
  CHECK(s.s1 == 0.0);
  CHECK(s.s2 == -1.0);
  CHECK(s.s3 == 1.0);

  const BlochState apex = bloch_from_real(0.0, 0.0);
  CHECK(apex.s3 == 0.0);

  const BlochState d = bloch_from_real(1.0, 1.0);
  CHECK(d.s1 == 2.0);
  CHECK(d.s2 == 0.0);
  CHECK(d.s3 == 2.0);
}

TEST_CASE("the real map is exactly two-to-one") {
  auto gen = testutil::rng(2);
  for (int i = 0; i < 100; ++i) {
    const double A = testutil::uniform(gen, -2, 2), B = testutil::uniform(gen, -2, 2);
    const BlochState p = bloch_from_real(A, B);
    const BlochState m = bloch_from_real(-A, -B);
    CHECK(p.s1 == m.s1);
    CHECK(p.s2 == m.s2);
    CHECK(p.s3 == m.s3);
    CHECK(cone_residual(p) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("quadratic image of a complex pair") {
  const EnvelopeState psi0 = base_state();
  const BlochState s = bloch_from_complex(psi0.alpha, psi0.beta);
  CHECK(s.s0 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.s1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.s2 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.s3 == doctest::Approx(1.0).epsilon(1e-15));

  // real input agrees with the real map
  const BlochState r = bloch_from_complex(1.0, 0.0);
  CHECK(r.s0 == 0.0);
  CHECK(r.s2 == -1.0);
  CHECK(r.s3 == 1.0);

  const BlochState t = bloch_from_complex(0.0, 1.0);
  CHECK(t.s0 == 0.0);
  CHECK(t.s1 == 0.0);
  CHECK(t.s2 == 1.0);
  CHECK(t.s3 == 1.0);
}

TEST_CASE("real density matrix equals i s . K") {
  auto gen = testutil::rng(8);
  const auto K = generators_sl2r();
  for (int i = 0; i < 1000; ++i) {
    const double A = testutil::uniform(gen, -2, 2), B = testutil::uniform(gen, -2, 2);
    const Matrix2 rho = density_matrix_real(A, B);
    const BlochState s = bloch_from_real(A, B);
    const Matrix2 isk =
        I * (K[0] * cplx{s.s1, 0.0} + K[1] * cplx{s.s2, 0.0} + K[2] * cplx{s.s3, 0.0});
    CHECK(max_diff(rho, isk) < 1e-14);
  }
  CHECK(max_diff(density_matrix_real(0, 0), Matrix2::zero()) == 0.0);

  // (1, 0): literal product 2 i |psi><psi| J3
  const auto j3 = generators_sl2r()[2];
  const Matrix2 outer{1.0, 0.0, 0.0, 0.0};
  CHECK(max_diff(density_matrix_real(1, 0), cplx{0.0, 2.0} * (outer * j3)) == 0.0);
}

TEST_CASE("complex density matrix entries and trace") {
  const EnvelopeState psi0 = base_state();
  const Matrix2 rho = density_matrix_complex(psi0.alpha, psi0.beta);
  // literal entries for (1, i)/sqrt(2)
  CHECK(std::abs(rho.a11 - cplx{0.0, 0.5}) < 1e-15);
  CHECK(std::abs(rho.a12 - cplx{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(rho.a21 - cplx{-0.5, 0.0}) < 1e-15);
  CHECK(std::abs(rho.a22 - cplx{0.0, 0.5}) < 1e-15);
  // trace = i s0
  CHECK(std::abs(rho.trace() - I) < 1e-15);

  const Matrix2 r10 = density_matrix_complex(1.0, 0.0);
  CHECK(max_diff(r10, {0.0, 1.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("generator decomposition of the complex density matrix") {
  auto gen = testutil::rng(12);
  for (int i = 0; i < 200; ++i) {
    const cplx a{testutil::uniform(gen, -1, 1), testutil::uniform(gen, -1, 1)};
    const cplx b{testutil::uniform(gen, -1, 1), testutil::uniform(gen, -1, 1)};
    const Matrix2 rho = density_matrix_complex(a, b);
    // invert rho = i (s0 I / 2 + s1 K1 + s2 K2 + s3 J3) entrywise
    const double s0 = rho.a11.imag() + rho.a22.imag();
    const double s1 = (rho.a22 - rho.a11).real();
    const double s2 = -(rho.a12 + rho.a21).real();
    const double s3 = (rho.a12 - rho.a21).real();
    const BlochState s = bloch_from_complex(a, b);
    CHECK(s0 == doctest::Approx(s.s0).epsilon(1e-12).scale(1.0));
    CHECK(s1 == doctest::Approx(s.s1).epsilon(1e-12).scale(1.0));
    CHECK(s2 == doctest::Approx(s.s2).epsilon(1e-12).scale(1.0));
    CHECK(s3 == doctest::Approx(s.s3).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("bloch derivative direction and cone tangency") {
  // dc channel only: the image of the evolving real pair rotates with
  // d s1/dx = k e0 s2, d s2/dx = -k e0 s1
  const double k = 2.0, e0 = 0.04;
  const ThreeVector d = bloch_rhs({0.0, 1.0, 0.0, 1.0}, {0.0, 0.0, e0}, k);
  CHECK(d.v1 == doctest::Approx(0.0));
  CHECK(d.v2 == doctest::Approx(-k * e0));
  CHECK(d.v3 == 0.0);

  // derivative from the envelope path agrees (finite difference)
  const PotentialProfile p = constant_profile(k, e0, 0.0, 0.0);
  const Trajectory t = propagate({1.0, 0.0, 0.0}, p, 1e-4, 1e-5);
  const BlochState s1 = bloch_from_complex(t.front().alpha, t.front().beta);
  const BlochState s2 = bloch_from_complex(t.back().alpha, t.back().beta);
  const ThreeVector rhs = bloch_rhs(s1, epsilon_vector(p, 0.0), k);
  CHECK((s2.s1 - s1.s1) / 1e-4 == doctest::Approx(rhs.v1).epsilon(1e-4));
  CHECK((s2.s2 - s1.s2) / 1e-4 == doctest::Approx(rhs.v2).epsilon(1e-4));

  // motion is tangent to the cone
  const BlochState on_cone = bloch_from_real(0.7, -0.4);
  const ThreeVector dd = bloch_rhs(on_cone, {0.01, -0.02, 0.03}, 1.0);
  const ThreeVector tw = twist({on_cone.s1, on_cone.s2, on_cone.s3});
  CHECK(std::abs(tw.v1 * dd.v1 + tw.v2 * dd.v2 + tw.v3 * dd.v3) < 1e-15);

  CHECK(bloch_rhs({0, 1, 0, 1}, {0, 0, 0}, 1.0).norm() == 0.0);
}

TEST_CASE("direct integration rotates the on-cone vector") {
  // start at the image of (1, 0); after k e0 x = pi / 2 the projection
  // has moved a quarter turn in the dc-driven sense
  const double e0 = 0.02;
  const PotentialProfile p = constant_profile(1.0, e0, 0.0, 0.0);
  const BlochTrajectory bt =
      propagate_bloch(bloch_from_real(1.0, 0.0), p, 0.0, 0.5 * pi / e0, 0.01);
  const BlochState& end = bt.samples.back().s;
  CHECK(std::abs(end.s1 - (-1.0)) < 1e-7);
  CHECK(std::abs(end.s2 - 0.0) < 1e-7);
  CHECK(std::abs(end.s3 - 1.0) < 1e-7);
}

TEST_CASE("on-cone input stays on the cone") {
  const PotentialProfile p = fig_profile();
  const BlochTrajectory bt =
      propagate_bloch(bloch_from_real(1.0, 0.0), p, 0.0, 100.0, 0.01);
  for (const BlochSample& s : bt.samples)
    CHECK(std::abs(cone_residual(s.s)) <= 1e-9 * s.s.s3 * s.s.s3);
}

TEST_CASE("hyperboloid input keeps its sheet and pairing") {
  const PotentialProfile p = fig_profile();
  const EnvelopeState psi0 = base_state();
  const BlochState s0 = bloch_from_complex(psi0.alpha, psi0.beta);
  const BlochTrajectory bt = propagate_bloch(s0, p, 0.0, 150.0, 0.01);
  for (const BlochSample& s : bt.samples) {
    CHECK(s.s.s0 == s0.s0);  // carried unchanged by construction
    const double res = cone_residual(s.s) + s0.s0 * s0.s0;
    CHECK(std::abs(res) <= 1e-9 * s.s.s3 * s.s.s3);
  }
}

TEST_CASE("direct and pushed-forward integrations commute") {
  auto gen = testutil::rng(91);
  for (int trial = 0; trial < 3; ++trial) {
    PotentialProfile p;
    p.k = 1.0;
    p.eps0 = ProfileChannel::bump(testutil::uniform(gen, 15, 35),
                                  testutil::uniform(gen, 10, 25),
                                  testutil::uniform(gen, -0.05, 0.05),
                                  testutil::uniform(gen, -0.02, 0.02));
    p.epsc = ProfileChannel::constant(testutil::uniform(gen, -0.04, 0.04));
    p.epss = ProfileChannel::bump(testutil::uniform(gen, 20, 40),
                                  testutil::uniform(gen, 8, 20),
                                  testutil::uniform(gen, -0.05, 0.05), 0.0);

    const cplx a{testutil::uniform(gen, -1, 1), testutil::uniform(gen, -1, 1)};
    const cplx b{testutil::uniform(gen, -1, 1), testutil::uniform(gen, -1, 1)};
    const Trajectory t = propagate({a, b, 0.0}, p, 60.0, 0.01);
    const BlochTrajectory bt =
        propagate_bloch(bloch_from_complex(a, b), p, 0.0, 60.0, 0.01);
    REQUIRE(t.samples.size() == bt.samples.size());

    double worst = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < t.samples.size(); i += 7) {
      const BlochState push =
          bloch_from_complex(t.samples[i].alpha, t.samples[i].beta);
      const BlochState& dir = bt.samples[i].s;
      worst = std::max({worst, std::abs(push.s1 - dir.s1),
                        std::abs(push.s2 - dir.s2), std::abs(push.s3 - dir.s3)});
      scale = std::max(scale, push.s3);
    }
    CHECK(worst <= 1e-7 * scale);
  }
}

TEST_CASE("constant-modulation motion is planar") {
  const PotentialProfile p = fig_profile();
  const ThreeVector eps = epsilon_vector(p, 0.0);
  const ThreeVector et = twist(eps);
  const BlochTrajectory bt =
      propagate_bloch(bloch_from_real(1.0, 0.0), p, 0.0, 120.0, 0.01);
  for (std::size_t i = 0; i < bt.samples.size(); i += 50) {
    const BlochState& s = bt.samples[i].s;
    const ThreeVector d = bloch_rhs(s, eps, p.k);
    const double dot = et.v1 * d.v1 + et.v2 * d.v2 + et.v3 * d.v3;
    const double bound = 1e-10 * eps.norm() * ThreeVector{s.s1, s.s2, s.s3}.norm();
    CHECK(std::abs(dot) <= std::max(bound, 1e-18));
  }
}

TEST_CASE("classification against the band boundary") {
  const ConicClass fig = classify({-2.0 * pi / 400.0, pi / 400.0, 3.0 * pi / 400.0});
  CHECK(fig.kind == ConicKind::Elliptic);
  CHECK(fig.discriminant ==
        doctest::Approx(4.0 * (pi / 400.0) * (pi / 400.0)).epsilon(1e-12));

  CHECK(classify({1, 0, 1}).kind == ConicKind::Parabolic);
  CHECK(classify({1, 0, 0}).kind == ConicKind::Hyperbolic);

  const ConicClass zero = classify({0, 0, 0});
  CHECK(zero.kind == ConicKind::Parabolic);
  CHECK(zero.degenerate);
  CHECK(zero.discriminant == 0.0);
}

TEST_CASE("bounded versus growing behavior follows the class") {
  // elliptic: the s3 range repeats over periods
  {
    const double e0 = 0.03;
    const PotentialProfile p = constant_profile(1.0, e0, 0.0, 0.0);
    const double period = 2.0 * pi / e0;
    const BlochTrajectory one =
        propagate_bloch(bloch_from_real(1.0, 0.3), p, 0.0, period, 0.02);
    const BlochTrajectory ten =
        propagate_bloch(bloch_from_real(1.0, 0.3), p, 0.0, 10.0 * period, 0.02);
    double max1 = 0.0, min1 = 1e300, max10 = 0.0, min10 = 1e300;
    for (const auto& s : one.samples) {
      max1 = std::max(max1, s.s.s3);
      min1 = std::min(min1, s.s.s3);
    }
    for (const auto& s : ten.samples) {
      max10 = std::max(max10, s.s.s3);
      min10 = std::min(min10, s.s.s3);
    }
    CHECK(max10 <= 1.05 * max1);
    CHECK(min10 >= 0.95 * min1);
  }
  // hyperbolic: s3 grows beyond any period-one bound
  {
    const PotentialProfile p = constant_profile(1.0, 0.0, 0.02, 0.0);
    const BlochTrajectory bt =
        propagate_bloch(bloch_from_real(1.0, 0.0), p, 0.0, 400.0, 0.01);
    const double start = bt.samples.front().s.s3;
    const double end = bt.samples.back().s.s3;
    CHECK(end > 50.0 * start);
    // monotone growth after the transient
    double prev = 0.0;
    bool monotone = true;
    for (const auto& s : bt.samples) {
      if (s.x > 100.0 && s.s.s3 < prev) monotone = false;
      if (s.x > 100.0) prev = s.s.s3;
    }
    CHECK(monotone);
  }
}

TEST_CASE("cone wrap map") {
  const ThreeVector sb = cone_map(bloch_from_real(1.0, 0.0));
  CHECK(sb.v1 == doctest::Approx(0.0));
  CHECK(sb.v2 == doctest::Approx(-0.5));
  CHECK(sb.v3 == doctest::Approx(0.5 * std::numbers::sqrt3));

  CHECK_THROWS_AS(cone_map(BlochState{0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(cone_map(BlochState{0, 0, 0, 1}), std::domain_error);

  auto gen = testutil::rng(17);
  for (int i = 0; i < 100; ++i) {
    const double A = testutil::uniform(gen, -2, 2);
    const double B = testutil::uniform(gen, -2, 2);
    if (A * A + B * B < 1e-3) continue;
    const BlochState s = bloch_from_real(A, B);
    const ThreeVector sb2 = cone_map(s);
    // image lies on the sixty-degree-apex cone
    CHECK(sb2.v1 * sb2.v1 + sb2.v2 * sb2.v2 ==
          doctest::Approx(sb2.v3 * sb2.v3 / 3.0).epsilon(1e-9));
    // and preserves the pair length
    CHECK(sb2.norm() == doctest::Approx(std::sqrt(A * A + B * B)).epsilon(1e-12));
  }
}

TEST_CASE("winding number counts signed turns") {
  const double e0 = pi / 100.0;
  const PotentialProfile p = constant_profile(1.0, e0, 0.0, 0.0);
  const double period = 2.0 * pi / e0;  // k e0 L = 2 pi

  auto states_of = [](const BlochTrajectory& bt) {
    std::vector<BlochState> v;
    v.reserve(bt.samples.size());
    for (const auto& s : bt.samples) v.push_back(s.s);
    return v;
  };

  const auto full = states_of(
      propagate_bloch(bloch_from_real(1.0, 0.0), p, 0.0, period, 0.01));
  CHECK(winding_number(full) == 1);

  const auto twice = states_of(
      propagate_bloch(bloch_from_real(1.0, 0.0), p, 0.0, 2.0 * period, 0.01));
  CHECK(winding_number(twice) == 2);

  // back-and-forth arc: forward then the reflected path backwards
  std::vector<BlochState> arc;
  for (int i = 0; i <= 100; ++i) {
    const double a = 0.8 * std::sin(pi * i / 100.0);
    arc.push_back(bloch_from_real(std::cos(a), std::sin(a)));
  }
  for (int i = 100; i >= 0; --i) {
    const double a = 0.8 * std::sin(pi * i / 100.0);
    arc.push_back(bloch_from_real(std::cos(a), std::sin(a)));
  }
  CHECK(winding_number(arc) == 0);
}

TEST_CASE("winding number guards its preconditions") {
  std::vector<BlochState> open_path;
  for (int i = 0; i <= 50; ++i)
    open_path.push_back(bloch_from_real(std::cos(0.01 * i), std::sin(0.01 * i)));
  CHECK_THROWS_AS(winding_number(open_path), std::domain_error);

  std::vector<BlochState> through_apex = {bloch_from_real(1, 0),
                                          bloch_from_real(0, 0),
                                          bloch_from_real(1, 0)};
  CHECK_THROWS_AS(winding_number(through_apex), std::domain_error);

  // four points a quarter-turn apart in the projection: too sparse
  std::vector<BlochState> sparse = {
      bloch_from_real(1, 0), bloch_from_real(std::cos(pi / 4), std::sin(pi / 4)),
      bloch_from_real(0, 1), bloch_from_real(std::cos(3 * pi / 4), std::sin(3 * pi / 4)),
      bloch_from_real(1, 0)};
  CHECK_THROWS_AS(winding_number(sparse), std::domain_error);
}

TEST_CASE("holonomy sign matches the winding parity") {
  const double e0 = pi / 100.0;
  const PotentialProfile p = constant_profile(1.0, e0, 0.0, 0.0);
  const double period = 2.0 * pi / e0;

  const Matrix2 m1 = monodromy(p, 0.0, period, 0.01);
  CHECK(max_diff(m1, Matrix2::identity() * cplx{-1.0, 0.0}) < 1e-6);

  const Matrix2 m2 = monodromy(p, 0.0, 2.0 * period, 0.01);
  CHECK(max_diff(m2, Matrix2::identity()) < 1e-6);
}
