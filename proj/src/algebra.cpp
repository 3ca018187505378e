#include "sl2wave/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace sl2wave {

namespace {
constexpr cplx I{0.0, 1.0};
}

Matrix2 Matrix2::identity() { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 Matrix2::zero() { return {}; }

Matrix2 Matrix2::operator+(const Matrix2& o) const {
  return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
}

Matrix2 Matrix2::operator-(const Matrix2& o) const {
  return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
          a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
}

Matrix2 Matrix2::operator*(cplx s) const {
  return {a11 * s, a12 * s, a21 * s, a22 * s};
}

cplx Matrix2::det() const { return a11 * a22 - a12 * a21; }

cplx Matrix2::trace() const { return a11 + a22; }

Matrix2 Matrix2::dagger() const {
  return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
}

std::array<cplx, 2> Matrix2::apply(cplx u, cplx v) const {
  return {a11 * u + a12 * v, a21 * u + a22 * v};
}

double Matrix2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

ThreeVector ThreeVector::operator+(const ThreeVector& o) const {
  return {v1 + o.v1, v2 + o.v2, v3 + o.v3};
}

ThreeVector ThreeVector::operator-(const ThreeVector& o) const {
  return {v1 - o.v1, v2 - o.v2, v3 - o.v3};
}

ThreeVector ThreeVector::operator*(double s) const {
  return {v1 * s, v2 * s, v3 * s};
}

double ThreeVector::norm() const { return std::sqrt(v1 * v1 + v2 * v2 + v3 * v3); }

std::array<Matrix2, 3> generators_sl2r() {
  // K1 = i sigma3 / 2, K2 = i sigma1 / 2, J3 = sigma2 / 2
  const Matrix2 k1{cplx{0.0, 0.5}, 0.0, 0.0, cplx{0.0, -0.5}};
  const Matrix2 k2{0.0, cplx{0.0, 0.5}, cplx{0.0, 0.5}, 0.0};
  const Matrix2 j3{0.0, cplx{0.0, -0.5}, cplx{0.0, 0.5}, 0.0};
  return {k1, k2, j3};
}

std::array<Matrix2, 3> generators_su11() {
  // K1' = i sigma1 / 2, K2' = i sigma2 / 2, J3' = sigma3 / 2.
  // The sign of K2' is fixed by the bracket relations; with -i sigma2 / 2
  // all three commutators involving K2' come out reversed.
  const Matrix2 k1{0.0, cplx{0.0, 0.5}, cplx{0.0, 0.5}, 0.0};
  const Matrix2 k2{0.0, 0.5, -0.5, 0.0};
  const Matrix2 j3{0.5, 0.0, 0.0, -0.5};
  return {k1, k2, j3};
}

Matrix2 commutator(const Matrix2& x, const Matrix2& y) { return x * y - y * x; }

double minkowski_dot(const ThreeVector& a, const ThreeVector& b) {
  return a.v1 * b.v1 + a.v2 * b.v2 - a.v3 * b.v3;
}

ThreeVector minkowski_cross(const ThreeVector& a, const ThreeVector& b) {
  return {a.v2 * b.v3 - a.v3 * b.v2, a.v3 * b.v1 - a.v1 * b.v3,
          -a.v1 * b.v2 + a.v2 * b.v1};
}

ThreeVector twist(const ThreeVector& a) { return {a.v1, a.v2, -a.v3}; }

Matrix2 generator_combination(const ThreeVector& c) {
  // c1 K1 + c2 K2 + c3 J3 = (i/2) [[c1, c2 - c3], [c2 + c3, -c1]]
  return {cplx{0.0, 0.5 * c.v1}, cplx{0.0, 0.5 * (c.v2 - c.v3)},
          cplx{0.0, 0.5 * (c.v2 + c.v3)}, cplx{0.0, -0.5 * c.v1}};
}

Matrix2 exp_generator(const ThreeVector& coeffs, double scale) {
  const Matrix2 m = (I * scale) * generator_combination(coeffs);
  // m is traceless, so m^2 = -det(m) I with det(m) real for real inputs.
  const double d = m.det().real();

  double c, s;  // exp(m) = c I + s m
  if (std::abs(d) < 1e-12) {
    // series in d, valid on both branches
    c = 1.0 - d / 2.0 + d * d / 24.0;
    s = 1.0 - d / 6.0 + d * d / 120.0;
  } else if (d > 0.0) {
    const double t = std::sqrt(d);
    c = std::cos(t);
    s = std::sin(t) / t;
  } else {
    const double t = std::sqrt(-d);
    c = std::cosh(t);
    s = std::sinh(t) / t;
  }
  Matrix2 out = Matrix2::identity() * cplx{c, 0.0} + m * cplx{s, 0.0};
  // large boosts lose the unit determinant to cancellation; project back
  const double dt = out.det().real();
  if (dt > 0.0 && std::abs(dt - 1.0) > 1e-15)
    out = out * cplx{1.0 / std::sqrt(dt), 0.0};
  return out;
}

Matrix2 group_element(double mu, double nu, double phi) {
  const Matrix2 rot_mu = exp_generator({0.0, 0.0, 1.0}, -mu);
  const Matrix2 squeeze = exp_generator({1.0, 0.0, 0.0}, -nu);
  const Matrix2 rot_phi = exp_generator({0.0, 0.0, 1.0}, -phi);
  return rot_mu * squeeze * rot_phi;
}

}  // namespace sl2wave
