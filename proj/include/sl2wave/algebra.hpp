#pragma once

#include <array>
#include <complex>

namespace sl2wave {

using cplx = std::complex<double>;

// 2x2 complex matrix, row-major entries (a11 a12 / a21 a22).
struct Matrix2 {
  cplx a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

  static Matrix2 identity();
  static Matrix2 zero();

  Matrix2 operator+(const Matrix2& o) const;
  Matrix2 operator-(const Matrix2& o) const;
  Matrix2 operator*(const Matrix2& o) const;
  Matrix2 operator*(cplx s) const;
  friend Matrix2 operator*(cplx s, const Matrix2& m) { return m * s; }

  cplx det() const;
  cplx trace() const;
  Matrix2 dagger() const;

  // matrix times column vector (u, v)
  std::array<cplx, 2> apply(cplx u, cplx v) const;

  double max_abs() const;
};

// Real 3-vector paired with the signature (+,+,-) products below.
struct ThreeVector {
  double v1{0.0}, v2{0.0}, v3{0.0};

  ThreeVector operator+(const ThreeVector& o) const;
  ThreeVector operator-(const ThreeVector& o) const;
  ThreeVector operator*(double s) const;
  double norm() const;  // Euclidean length
};

// Boost/rotation generator triples in the defining 2x2 representation.
// The first triple acts on real quadrature pairs, the second on
// counter-rotating complex amplitudes; both satisfy
//   [K1,K2] = -iJ3,  [K2,J3] = iK1,  [J3,K1] = iK2.
std::array<Matrix2, 3> generators_sl2r();
std::array<Matrix2, 3> generators_su11();

Matrix2 commutator(const Matrix2& x, const Matrix2& y);

// Scalar product with signature (+,+,-).
double minkowski_dot(const ThreeVector& a, const ThreeVector& b);

// Antisymmetric product adapted to the (+,+,-) signature:
// (a2 b3 - a3 b2, a3 b1 - a1 b3, -a1 b2 + a2 b1).
ThreeVector minkowski_cross(const ThreeVector& a, const ThreeVector& b);

// Index-lowering companion (v1, v2, -v3); satisfies
// twist(a) . minkowski_cross(a, b) = 0 in the Euclidean dot.
ThreeVector twist(const ThreeVector& a);

// c1 K1 + c2 K2 + c3 J3
Matrix2 generator_combination(const ThreeVector& c);

// exp(i * scale * (c1 K1 + c2 K2 + c3 J3)) through the closed form for
// traceless 2x2 matrices; unit determinant by construction.
Matrix2 exp_generator(const ThreeVector& coeffs, double scale);

// exp(-i mu J3) exp(-i nu K1) exp(-i phi J3); real for real arguments.
Matrix2 group_element(double mu, double nu, double phi);

}  // namespace sl2wave
