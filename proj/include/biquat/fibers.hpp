// Constructive witnesses for the fiber of the multiplication map
// m(g1,g2,g3) = g1 g2 g3 over the pointwise quaternion stabilizer: the tau
// map to triangles, the second degenerate vertex, the SO(3)-type triple,
// nondegenerate witnesses for mixed multiplicities, and the
// centralizer-dimension bookkeeping behind the component-dimension formula.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "biquat/periods.hpp"
#include "biquat/reps.hpp"

namespace biquat {

struct GroupTriple {
  Eigen::MatrixXd g1, g2, g3;
  Eigen::MatrixXd I1, I2, I3;  // context: g_i stabilizes I_i
};

// Pointwise stabilization of the quaternion algebra generated by I1, I2,
// realized as commutation with both; rejects singular g.
bool in_GH(const Eigen::MatrixXd& g, const Eigen::MatrixXd& i1,
           const Eigen::MatrixXd& i2, double tol = 1e-8);

// Checks the triple and maps it to the triangle (I1, I2, g2 I3 g2^{-1}).
Triangle tau(const GroupTriple& triple, double tol = 1e-8);

// For a spherical triangle with |alpha| < 1: the other solution of
// rho(e3) = (alpha Id - I1 I2)^{-1} (+- r Id - beta I1 + gamma I2),
// the one not equal to I3. The inverse is (alpha Id - I2 I1)/(1-alpha^2).
Eigen::MatrixXd second_degenerate_vertex(const Eigen::MatrixXd& i1,
                                         const Eigen::MatrixXd& i2,
                                         const Eigen::MatrixXd& i3,
                                         double tol = 1e-8);

// Rotations e^{-t1 I1}, e^{t2 I2}, e^{t3 I3} whose product is the identity
// on the sphere; the product lies in G_H while no factor does. Angles are
// solved in closed form in the orthonormal frame of S.
GroupTriple so3_triple(const TwistorSphere& s, const Eigen::MatrixXd& i1,
                       const Eigen::MatrixXd& i2, const Eigen::MatrixXd& i3,
                       double tol = 1e-8);

// Shared generator images for the n+1 representation classes with
// rho(e1) = I1, rho(e2) = I2: the k-th class takes e3 to a block mix of the
// two degenerate vertices E+ and E-.
struct SphericalFrame {
  int n = 0;
  Params<double> params;
  Eigen::MatrixXd I1, I2, I3, I3prime;  // I3 = rho_n(e3), I3' = rho_0(e3)
  Eigen::Matrix4d A1, A2, Eplus, Eminus;

  Eigen::MatrixXd rho_e3(int k) const;       // J3 of the k-th class
  Eigen::MatrixXd rho_central_norm(int k) const;  // blockdiag(+-Id)
};

SphericalFrame spherical_frame(const Algebra<double>& alg, int n,
                               double tol = 1e-9);

// (g1, g2, g3) with product exactly h (default Id), g_i commuting with I_i,
// and tau(g1,g2,g3) the nondegenerate triangle I1 I2 rho_k(e3), 0 < k < n.
GroupTriple nondegenerate_witness(const Algebra<double>& alg, int n, int k,
                                  std::uint64_t seed,
                                  const std::optional<Eigen::MatrixXd>& h =
                                      std::nullopt,
                                  double tol = 1e-9);

// Dimension of the joint commutant {X : XM = MX for all M}.
int centralizer_dim(const std::vector<Eigen::MatrixXd>& mats,
                    double tol = 1e-9);

// Basis of the joint commutant, as d^2-vectors reshaped on demand.
Eigen::MatrixXd centralizer_basis(const std::vector<Eigen::MatrixXd>& mats,
                                  double tol = 1e-9);

// A random invertible element of the joint commutant (seeded).
Eigen::MatrixXd random_commutant_element(
    const std::vector<Eigen::MatrixXd>& mats, std::uint64_t seed,
    double tol = 1e-9);

struct FiberComponentReport {
  int n = 0, k = 0;
  int stabilizer_dim = 0;       // measured: dim of the rho_k stabilizer in G_H
  int component_dim = 0;        // 4 dim G_H - stabilizer_dim, measured
  int stabilizer_dim_formula = 0;  // 4k^2 + 4(n-k)^2
  int component_dim_formula = 0;   // 12n^2 + 8nk - 8k^2
  int dim_gh = 0;               // measured commutant dimension of {I1, I2}
};

FiberComponentReport component_report(const Algebra<double>& alg, int n, int k,
                                      double tol = 1e-9);

}  // namespace biquat
