// Signatures of symmetric forms and the spherical / hyperbolic / cylindrical
// classification trichotomy, together with the predicted correspondence
// between the signature of the 3x3 generator form Q and the full 8x8 trace
// form q.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "biquat/hcore.hpp"
#include "biquat/scalar.hpp"

namespace biquat {

struct Signature {
  int n_plus = 0, n_minus = 0, n_zero = 0;
  bool operator==(const Signature&) const = default;
  int dim() const { return n_plus + n_minus + n_zero; }
};

enum class ClassKind { Spherical, Hyperbolic, Cylindrical, NonQuaternionic };

struct AlgebraClass {
  ClassKind kind = ClassKind::NonQuaternionic;
  Signature sig_q;             // signature of the 3x3 form Q
  Signature sig_q8_predicted;  // predicted signature of the 8x8 trace form
  bool quaternionic = false;
  bool near_degenerate = false;  // float mode only: |det Q| < tol
};

std::string to_string(ClassKind k);
std::string to_string(const Signature& s);

template <class S>
using Mat3 = std::array<std::array<S, 3>, 3>;

// The matrix of Q_{a,b,g} on <e1,e2,e3>: diagonal -1, off-diagonal a, b, g.
template <class S>
Mat3<S> form_q3(const Params<S>& p) {
  const S m1 = -ScalarTraits<S>::one();
  return Mat3<S>{{{m1, p.alpha, p.gamma},
                  {p.alpha, m1, p.beta},
                  {p.gamma, p.beta, m1}}};
}

template <class S>
Mat3<S> adjugate3(const Mat3<S>& m) {
  Mat3<S> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // adj(m)_{ji} pattern folded in by swapping indices below.
      a[j][i] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  return a;
}

// Qtilde = -adj(Q), the matrix of q on Vtilde in the basis
// (b - e2e3, g - e3e1, a - e1e2).
template <class S>
Mat3<S> form_q3_tilde(const Params<S>& p) {
  Mat3<S> adj = adjugate3(form_q3(p));
  for (auto& row : adj)
    for (auto& x : row) x = -x;
  return adj;
}

template <class S>
S det3(const Mat3<S>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Eigenvalue inertia count of a symmetric matrix; rejects asymmetric input.
Signature signature(const Eigen::MatrixXd& m, double tol = 1e-9);

// Exact inertia of a symmetric rational matrix via symmetric elimination
// with 1x1 and hyperbolic 2x2 pivots (Sylvester's law of inertia).
Signature signature_exact(std::vector<std::vector<Rational>> m);

template <class S>
Eigen::MatrixXd to_eigen3(const Mat3<S>& m) {
  Eigen::MatrixXd e(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = ScalarTraits<S>::to_double(m[i][j]);
  return e;
}

template <class S>
Eigen::MatrixXd to_eigen8(const Mat8<S>& m) {
  Eigen::MatrixXd e(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) e(i, j) = ScalarTraits<S>::to_double(m[i][j]);
  return e;
}

// Predicted 8x8 signature from the 3x3 one, per the six-case table.
std::optional<Signature> predicted_q8_signature(const Signature& sig_q);

AlgebraClass classify(const Params<double>& p, double tol = 1e-9);
AlgebraClass classify_exact(const Params<Rational>& p);

// An explicit anticommuting pair of imaginary units inside a quaternionic
// algebra, as abstract elements: (e_i, (t e_i + e_j)/sqrt(1-t^2)) when some
// |t| < 1, and (e1, unit q-negative vector of the plane
// <a - e1e2, g - e3e1>) in the hyperbolic case.
std::pair<Vec8<double>, Vec8<double>> quaternionic_pair(
    const Algebra<double>& alg, double tol = 1e-9);

}  // namespace biquat
