// Geometry of the period domain inside End(R^{4n}): the invariant
// pseudometric, twistor spheres, the quadric cut out by a triangle, the
// degeneracy test, and vertex angles via both the closed form and the
// direct trace computation.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

#include "biquat/hcore.hpp"
#include "biquat/sigforms.hpp"

namespace biquat {

// An endomorphism I with I^2 = -Id.
struct ComplexStructure {
  Eigen::MatrixXd M;

  static ComplexStructure checked(Eigen::MatrixXd m, double tol = 1e-8);
  int n() const { return static_cast<int>(M.rows()) / 4; }
};

struct TwistorSphere {
  Eigen::MatrixXd I, J, K;  // quaternionic triple, IJ = -JI = K

  Eigen::MatrixXd point(double a, double b, double c) const {
    return a * I + b * J + c * K;
  }
};

// Ordered triple of complex structures with scalar pairwise anticommutators.
struct Triangle {
  Eigen::MatrixXd J1, J2, J3;

  static Triangle checked(Eigen::MatrixXd j1, Eigen::MatrixXd j2,
                          Eigen::MatrixXd j3, double tol = 1e-8);
  int dim() const { return static_cast<int>(J1.rows()); }
  Params<double> t_params() const;
};

// (A,B) = -tr(AB)/4n.
double pseudo_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// (Tr J1J2, Tr J2J3, Tr J3J1)/4n; minus-cosines of side lengths when the
// sides are compact.
std::array<double, 3> t_invariant(const Triangle& tri);

// The unique sphere through two non-proportional compact-side structures.
TwistorSphere sphere_from_pair(const Eigen::MatrixXd& j1,
                               const Eigen::MatrixXd& j2, double tol = 1e-8);

// exp(tI) = cos(t) Id + sin(t) I; conjugation by it rotates the twistor
// sphere about the axis {+-I} by angle 2t.
Eigen::MatrixXd rotation(const Eigen::MatrixXd& i, double t);

struct DegeneracyReport {
  bool degenerate = false;
  int image_dim = 0;  // rank of span{Id, J1, J2, J3, J1J2, J2J3, J3J1, J1J2J3}
};

DegeneracyReport degeneracy_test(const Triangle& tri, double tol = 1e-8);

enum class QuadricKind { Sphere, Hyperboloid, Cylinder };

std::string to_string(QuadricKind k);

struct QuadricSamples {
  QuadricKind kind = QuadricKind::Sphere;
  std::vector<Eigen::Vector3d> coefficients;  // solutions of v^T Q v = -1
  double max_unit_residual = 0.0;             // worst |(aJ1+bJ2+cJ3)^2 + Id|
};

// Solves (a J1 + b J2 + c J3)^2 = -Id, i.e. Q_T(v) = -1, by seeded direction
// sampling; classifies the surface by the sign of det Q_T.
QuadricSamples quadric_classify_and_sample(const Triangle& tri, int count,
                                           std::uint64_t seed,
                                           double tol = 1e-8);

struct VertexAngleValue {
  double closed_form = 0.0;  // -((b+ag)cos(t-s) + (m r/4n) sin(t-s))/norm
  double direct = 0.0;       // pseudo_inner of the explicit tangent vectors
  double m = 0.0;            // -Tr rho(c_normalized) on the triangle span
  double r = 0.0;            // sqrt(-det Q)
};

// q(c_t, d_s) for the unit tangent circles at the given vertex (1-based);
// requires both sides at the vertex to be compact.
VertexAngleValue vertex_angle_form(const Triangle& tri, int vertex, double t,
                                   double s, double tol = 1e-8);

struct VertexAngle {
  bool defined = false;      // tangent 4-space positive definite
  double angle = 0.0;        // reported in [0, pi/2]
  bool complement = false;   // true when the matched branch is pi - angle
  double cosine = 0.0;       // extremal |q(c_t, d_t)|, signed
};

VertexAngle vertex_angle(const Triangle& tri, int vertex, double tol = 1e-8);

// Side cosines of the polar triangle built from the normalized Vtilde basis,
// computed from the trace form of the abstract algebra.
std::array<double, 3> polar_triangle(const Params<double>& p,
                                     double tol = 1e-9);

}  // namespace biquat
