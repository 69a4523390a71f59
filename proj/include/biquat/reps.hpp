// Construction and classification of the real representations of the
// quaternionic algebras: ideal bases of the regular representation, the
// irreducible 4- and 8-dimensional pieces, direct sums, trace/rank recovery
// of multiplicities, and an intertwiner-based equivalence test.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biquat/hcore.hpp"
#include "biquat/sigforms.hpp"

namespace biquat {

// A representation given by the images of the three generators on R^{4n}.
struct MatRep {
  int n = 0;
  Eigen::MatrixXd J1, J2, J3;
  Params<double> params;

  int dim() const { return 4 * n; }
  Eigen::MatrixXd image(const Vec8<double>& coords) const;
  Eigen::MatrixXd image_central_raw() const;
};

struct IrrepKind {
  enum Kind { Rho0, Rho1, Rho2, Rho4, Rho8 } kind = Rho1;
  Eigen::Vector3d w = Eigen::Vector3d(1, 0, 0);  // ideal sphere point, Rho0

  static IrrepKind rho0(const Eigen::Vector3d& w) { return {Rho0, w.normalized()}; }
  static IrrepKind rho1() { return {Rho1, {1, 0, 0}}; }
  static IrrepKind rho2() { return {Rho2, {1, 0, 0}}; }
  static IrrepKind rho4() { return {Rho4, {1, 0, 0}}; }
  static IrrepKind rho8() { return {Rho8, {1, 0, 0}}; }
};

// A quaternion subalgebra of the algebra, as abstract elements satisfying
// i^2 = j^2 = -1, ij = -ji = k.
struct QuaternionFrame {
  Vec8<double> i, j, k;
};

QuaternionFrame quaternion_frame(const Algebra<double>& alg, double tol = 1e-9);

Eigen::MatrixXd to_eigen(const Mat8<double>& m);
Eigen::VectorXd to_eigen(const Vec8<double>& v);

// Orthonormal basis (8 x r) of the left ideal H*g, the column space of
// right multiplication by g.
Eigen::MatrixXd left_ideal_basis(const Algebra<double>& alg,
                                 const Vec8<double>& g, double tol = 1e-9);

// Matrix of the restriction of an operator to an invariant subspace with the
// given (not necessarily orthonormal) basis columns.
Eigen::MatrixXd restrict_operator(const Eigen::MatrixXd& op,
                                  const Eigen::MatrixXd& basis,
                                  double tol = 1e-9);

MatRep irrep(const Algebra<double>& alg, const IrrepKind& kind,
             double tol = 1e-9);

// Matrix of left multiplication by the normalized central element on the
// ideal H(w + c) of a hyperbolic algebra, in the basis (v, iv, jv, kv),
// v = w + c. Equals the antisymmetric block matrix with entries +-x,+-y,+-z.
Eigen::Matrix4d hyperbolic_central_matrix(const Algebra<double>& alg,
                                          const Eigen::Vector3d& w,
                                          double tol = 1e-9);

// Matrix of left multiplication by c on a cylindrical algebra in the basis
// (c, ic, jc, kc, 1, i, j, k); equals [[0, I4], [0, 0]].
Eigen::MatrixXd cylindrical_central_matrix(const Algebra<double>& alg,
                                           double tol = 1e-9);

// Direct sum of representations per the classification:
//   spherical:    k rho1 + (n-k) rho2,   0 <= k <= n,
//   cylindrical:  (n-2k) rho4 + k rho8,  0 <= 2k <= n,
//   hyperbolic:   n rho0 (k must equal n).
MatRep build(const Algebra<double>& alg, int n, int k, double tol = 1e-9);

// Faithful direct sum, when one exists for this class and n.
MatRep build_faithful(const Algebra<double>& alg, int n, double tol = 1e-9);

struct RelationReport {
  bool ok = true;
  double max_residual = 0.0;
  std::string violated;  // first violated relation, informative only
};

RelationReport verify_relations(const MatRep& rep, double tol = 1e-9);

struct RepClass {
  ClassKind kind;
  int k = 0;
  bool faithful = false;  // the eight monomial images are independent
  int image_dim = 0;      // their span dimension: 8 when faithful, else 4
};

// Recovers the multiplicity datum k from Tr rho(c) (spherical), from
// rk rho(c) (cylindrical), or returns k = n (hyperbolic).
RepClass classify_rep(const MatRep& rep, double tol = 1e-6);

struct IntertwinerDiag {
  int nullspace_dim = 0;
  int attempts = 0;
};

// Invertible T with T A_i = B_i T for all i, found in the joint kernel of
// the stacked Sylvester operators; seeded sampling over the kernel with a
// bounded retry budget. nullopt when no invertible element is found.
std::optional<Eigen::MatrixXd> intertwiner(
    const std::vector<Eigen::MatrixXd>& a,
    const std::vector<Eigen::MatrixXd>& b, std::uint64_t seed,
    IntertwinerDiag* diag = nullptr, double tol = 1e-9);

bool equivalent(const MatRep& x, const MatRep& y, std::uint64_t seed,
                double tol = 1e-9);

}  // namespace biquat
