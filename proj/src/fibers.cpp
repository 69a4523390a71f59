#include "biquat/fibers.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <random>

namespace biquat {

namespace {

double commutation_residual(const Eigen::MatrixXd& g, const Eigen::MatrixXd& m) {
  const double scale =
      std::max(1.0, g.cwiseAbs().maxCoeff()) * std::max(1.0, m.cwiseAbs().maxCoeff());
  return (g * m - m * g).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

bool in_GH(const Eigen::MatrixXd& g, const Eigen::MatrixXd& i1,
           const Eigen::MatrixXd& i2, double tol) {
  if (g.rows() != g.cols() || g.rows() != i1.rows() || g.rows() != i2.rows())
    throw ValidationError("in_GH: size mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw ValidationError("in_GH: singular element");
  return commutation_residual(g, i1) <= tol && commutation_residual(g, i2) <= tol;
}

Triangle tau(const GroupTriple& triple, double tol) {
  if (commutation_residual(triple.g1, triple.I1) > tol ||
      commutation_residual(triple.g2, triple.I2) > tol ||
      commutation_residual(triple.g3, triple.I3) > tol)
    throw ValidationError("tau: g_i does not stabilize I_i");
  const Eigen::MatrixXd product = triple.g1 * triple.g2 * triple.g3;
  if (!in_GH(product, triple.I1, triple.I2, tol))
    throw ValidationError("tau: the product g1 g2 g3 is not in G_H");
  const Eigen::MatrixXd j3 =
      triple.g2 * triple.I3 * triple.g2.partialPivLu().inverse();
  return Triangle::checked(triple.I1, triple.I2, j3, std::max(tol, 1e-8));
}

Eigen::MatrixXd second_degenerate_vertex(const Eigen::MatrixXd& i1,
                                         const Eigen::MatrixXd& i2,
                                         const Eigen::MatrixXd& i3,
                                         double tol) {
  const Triangle tri = Triangle::checked(i1, i2, i3, std::max(tol, 1e-8));
  const Params<double> p = tri.t_params();
  const AlgebraClass cls = classify(p);
  if (cls.kind != ClassKind::Spherical)
    throw ValidationError("second_degenerate_vertex: triangle is not spherical");
  const int d = tri.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const double det = to_eigen3(form_q3(p)).determinant();
  const double r = std::sqrt(-det);
  // Sign of rho(c) on the span of the (degenerate) input triangle.
  const Eigen::MatrixXd c_raw =
      p.beta * i1 - p.gamma * i2 + p.alpha * i3 - i1 * i2 * i3;
  const double s = c_raw.trace() / (r * d) > 0 ? 1.0 : -1.0;
  const Eigen::MatrixXd inv = (p.alpha * id - i2 * i1) / (1.0 - p.alpha * p.alpha);
  const Eigen::MatrixXd reproduced =
      inv * (s * r * id - p.beta * i1 + p.gamma * i2);
  if ((reproduced - i3).cwiseAbs().maxCoeff() > 1e3 * tol)
    throw NumericError(
        "second_degenerate_vertex: vertex formula does not reproduce I3; "
        "the input triangle is not degenerate on its sphere");
  return inv * (-s * r * id - p.beta * i1 + p.gamma * i2);
}

namespace {

// Coordinates of a sphere point in the orthonormal frame (I, J, K).
Eigen::Vector3d frame_coords(const TwistorSphere& s, const Eigen::MatrixXd& x) {
  return {pseudo_inner(x, s.I), pseudo_inner(x, s.J), pseudo_inner(x, s.K)};
}

// Signed rotation angle about the unit axis u taking x to y (both unit,
// with equal components along u).
double rotation_angle_about(const Eigen::Vector3d& u, const Eigen::Vector3d& x,
                            const Eigen::Vector3d& y, double tol) {
  const Eigen::Vector3d xp = x - u.dot(x) * u;
  const Eigen::Vector3d yp = y - u.dot(y) * u;
  if (xp.norm() < tol || yp.norm() < tol)
    throw ValidationError("rotation axis is parallel to the rotated point");
  return std::atan2(u.dot(xp.cross(yp)), xp.dot(yp));
}

Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& u, double angle) {
  return Eigen::AngleAxisd(angle, u.normalized()).toRotationMatrix();
}

}  // namespace

GroupTriple so3_triple(const TwistorSphere& s, const Eigen::MatrixXd& i1,
                       const Eigen::MatrixXd& i2, const Eigen::MatrixXd& i3,
                       double tol) {
  const Eigen::MatrixXd i3p = second_degenerate_vertex(i1, i2, i3, tol);
  const Eigen::Vector3d u1 = frame_coords(s, i1).normalized();
  const Eigen::Vector3d u2 = frame_coords(s, i2).normalized();
  const Eigen::Vector3d u3 = frame_coords(s, i3).normalized();
  const Eigen::Vector3d x3 = frame_coords(s, i3);
  const Eigen::Vector3d x3p = frame_coords(s, i3p);

  // Conjugation by e^{tI} is the right-handed rotation by 2t about the
  // frame coordinates of I.
  const double phi1 = rotation_angle_about(u1, x3, x3p, tol);
  const double phi2 = rotation_angle_about(u2, x3, x3p, tol);
  const Eigen::Matrix3d residual = axis_rotation(u1, -phi1) * axis_rotation(u2, phi2);
  if ((residual * u3 - u3).norm() > 1e3 * tol)
    throw NumericError("so3_triple: composite rotation does not fix the I3 axis");
  // Solve the angle of the residual rotation about u3, then cancel it.
  Eigen::Vector3d p = u3.unitOrthogonal();
  const double psi = std::atan2(u3.dot(p.cross(residual * p)), p.dot(residual * p));

  GroupTriple out;
  out.I1 = i1;
  out.I2 = i2;
  out.I3 = i3;
  out.g1 = rotation(i1, -phi1 / 2.0);
  out.g2 = rotation(i2, phi2 / 2.0);
  out.g3 = rotation(i3, -psi / 2.0);
  return out;
}

Eigen::MatrixXd SphericalFrame::rho_e3(int k) const {
  const int d = 4 * n;
  Eigen::MatrixXd j3 = Eigen::MatrixXd::Zero(d, d);
  for (int b = 0; b < n; ++b)
    j3.block(4 * b, 4 * b, 4, 4) = b < k ? Eplus : Eminus;
  return j3;
}

Eigen::MatrixXd SphericalFrame::rho_central_norm(int k) const {
  const int d = 4 * n;
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(d, d);
  for (int b = k; b < n; ++b) c.block(4 * b, 4 * b, 4, 4) *= -1.0;
  return c;
}

SphericalFrame spherical_frame(const Algebra<double>& alg, int n, double tol) {
  if (classify(alg.params()).kind != ClassKind::Spherical)
    throw ValidationError("spherical_frame: algebra is not spherical");
  SphericalFrame f;
  f.n = n;
  f.params = alg.params();
  const MatRep rho1 = irrep(alg, IrrepKind::rho1(), tol);
  f.A1 = rho1.J1;
  f.A2 = rho1.J2;
  f.Eplus = rho1.J3;
  const Params<double>& p = alg.params();
  const double r = std::sqrt(-alg.det_q());
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  const Eigen::Matrix4d inv =
      (p.alpha * id - f.A2 * f.A1) / (1.0 - p.alpha * p.alpha);
  // The rho1 block must solve the +r branch of the vertex formula.
  const Eigen::Matrix4d eplus_formula =
      inv * (r * id - p.beta * f.A1 + p.gamma * f.A2);
  if ((eplus_formula - f.Eplus).cwiseAbs().maxCoeff() > 1e3 * tol)
    throw NumericError("spherical_frame: rho1(e3) disagrees with the vertex formula");
  f.Eminus = inv * (-r * id - p.beta * f.A1 + p.gamma * f.A2);
  const int d = 4 * n;
  f.I1 = Eigen::MatrixXd::Zero(d, d);
  f.I2 = Eigen::MatrixXd::Zero(d, d);
  for (int b = 0; b < n; ++b) {
    f.I1.block(4 * b, 4 * b, 4, 4) = f.A1;
    f.I2.block(4 * b, 4 * b, 4, 4) = f.A2;
  }
  f.I3 = f.rho_e3(n);
  f.I3prime = f.rho_e3(0);
  return f;
}

Eigen::MatrixXd centralizer_basis(const std::vector<Eigen::MatrixXd>& mats,
                                  double tol) {
  if (mats.empty()) throw ValidationError("centralizer_basis: empty list");
  const int d = static_cast<int>(mats[0].rows());
  const int dd = d * d;
  Eigen::MatrixXd sys(static_cast<int>(mats.size()) * dd, dd);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != d || mats[i].cols() != d)
      throw ValidationError("centralizer_basis: size mismatch");
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dd, dd);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        block.block(p * d, q * d, d, d) =
            mats[i](q, p) * Eigen::MatrixXd::Identity(d, d);
    for (int p = 0; p < d; ++p) block.block(p * d, p * d, d, d) -= mats[i];
    sys.middleRows(static_cast<int>(i) * dd, dd) = block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? std::max(tol, tol * sv(0)) : tol;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(dd - rank);
}

int centralizer_dim(const std::vector<Eigen::MatrixXd>& mats, double tol) {
  return static_cast<int>(centralizer_basis(mats, tol).cols());
}

Eigen::MatrixXd random_commutant_element(
    const std::vector<Eigen::MatrixXd>& mats, std::uint64_t seed, double tol) {
  const Eigen::MatrixXd kernel = centralizer_basis(mats, tol);
  const int d = static_cast<int>(mats[0].rows());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Eigen::VectorXd coeff(kernel.cols());
    for (int i = 0; i < coeff.size(); ++i) coeff(i) = gauss(rng);
    const Eigen::VectorXd vec = kernel * coeff;
    Eigen::MatrixXd g = Eigen::Map<const Eigen::MatrixXd>(vec.data(), d, d);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(0) > 0.0 && sv(sv.size() - 1) > 1e-8 * sv(0)) return g;
  }
  throw NumericError("random_commutant_element: no invertible element found");
}

GroupTriple nondegenerate_witness(const Algebra<double>& alg, int n, int k,
                                  std::uint64_t seed,
                                  const std::optional<Eigen::MatrixXd>& h,
                                  double tol) {
  if (n < 2 || k <= 0 || k >= n)
    throw ValidationError(
        "nondegenerate_witness needs n >= 2 and 0 < k < n (other k give the "
        "degenerate components)");
  const SphericalFrame f = spherical_frame(alg, n, tol);
  const Eigen::MatrixXd j3 = f.rho_e3(k);

  IntertwinerDiag diag;
  const auto g2 = intertwiner({f.I2, f.I3}, {f.I2, j3}, seed, &diag, tol);
  if (!g2)
    throw NumericError(
        "nondegenerate_witness: no invertible intertwiner moving I3 to J3 in "
        "the commutant of I2 (nullspace dimension " +
        std::to_string(diag.nullspace_dim) + ")");
  const auto g1 = intertwiner({f.I1, j3}, {f.I1, f.I3}, seed + 1, &diag, tol);
  if (!g1)
    throw NumericError(
        "nondegenerate_witness: no invertible intertwiner moving J3 back to "
        "I3 in the commutant of I1 (nullspace dimension " +
        std::to_string(diag.nullspace_dim) + ")");

  GroupTriple out;
  out.I1 = f.I1;
  out.I2 = f.I2;
  out.I3 = f.I3;
  out.g1 = *g1;
  out.g2 = *g2;
  const Eigen::MatrixXd prod = out.g1 * out.g2;
  out.g3 = prod.partialPivLu().inverse();
  if (h) out.g3 *= *h;
  return out;
}

FiberComponentReport component_report(const Algebra<double>& alg, int n, int k,
                                      double tol) {
  if (k < 0 || k > n) throw ValidationError("component_report: 0 <= k <= n");
  const SphericalFrame f = spherical_frame(alg, n, tol);
  FiberComponentReport rep;
  rep.n = n;
  rep.k = k;
  rep.dim_gh = centralizer_dim({f.I1, f.I2}, tol);
  rep.stabilizer_dim =
      centralizer_dim({f.I1, f.I2, f.rho_central_norm(k)}, tol);
  rep.component_dim = 4 * rep.dim_gh - rep.stabilizer_dim;
  rep.stabilizer_dim_formula = 4 * k * k + 4 * (n - k) * (n - k);
  rep.component_dim_formula = 12 * n * n + 8 * n * k - 8 * k * k;
  if (rep.stabilizer_dim != rep.stabilizer_dim_formula ||
      rep.component_dim != rep.component_dim_formula)
    throw NumericError("component_report: measured dimensions disagree with "
                       "the closed form");
  return rep;
}

}  // namespace biquat
