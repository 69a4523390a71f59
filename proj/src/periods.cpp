#include "biquat/periods.hpp"

#include <cmath>
#include <random>

namespace biquat {

ComplexStructure ComplexStructure::checked(Eigen::MatrixXd m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 4 != 0)
    throw ValidationError("complex structure must be square of size 4n");
  const int d = static_cast<int>(m.rows());
  const double resid =
      (m * m + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (resid > tol)
    throw ValidationError("matrix does not square to -Id (residual " +
                          std::to_string(resid) + ")");
  return ComplexStructure{std::move(m)};
}

double pseudo_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw ValidationError("pseudo_inner: size mismatch");
  return -(a * b).trace() / static_cast<double>(a.rows());
}

Params<double> Triangle::t_params() const {
  const double d = dim();
  return Params<double>{(J1 * J2).trace() / d, (J2 * J3).trace() / d,
                        (J3 * J1).trace() / d};
}

Triangle Triangle::checked(Eigen::MatrixXd j1, Eigen::MatrixXd j2,
                           Eigen::MatrixXd j3, double tol) {
  ComplexStructure::checked(j1, tol);
  ComplexStructure::checked(j2, tol);
  ComplexStructure::checked(j3, tol);
  Triangle tri{std::move(j1), std::move(j2), std::move(j3)};
  const int d = tri.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Params<double> p = tri.t_params();
  const double r1 =
      (tri.J1 * tri.J2 + tri.J2 * tri.J1 - 2.0 * p.alpha * id).cwiseAbs().maxCoeff();
  const double r2 =
      (tri.J2 * tri.J3 + tri.J3 * tri.J2 - 2.0 * p.beta * id).cwiseAbs().maxCoeff();
  const double r3 =
      (tri.J3 * tri.J1 + tri.J1 * tri.J3 - 2.0 * p.gamma * id).cwiseAbs().maxCoeff();
  if (std::max({r1, r2, r3}) > tol)
    throw ValidationError("pairwise anticommutators are not scalar");
  return tri;
}

std::array<double, 3> t_invariant(const Triangle& tri) {
  const Params<double> p = tri.t_params();
  return {p.alpha, p.beta, p.gamma};
}

TwistorSphere sphere_from_pair(const Eigen::MatrixXd& j1,
                               const Eigen::MatrixXd& j2, double tol) {
  const int d = static_cast<int>(j1.rows());
  const double alpha = (j1 * j2).trace() / d;
  const double prop = std::min((j1 - j2).cwiseAbs().maxCoeff(),
                               (j1 + j2).cwiseAbs().maxCoeff());
  if (prop <= tol)
    throw ValidationError("sphere_from_pair: structures are proportional");
  if (std::abs(alpha) >= 1.0 - tol)
    throw ValidationError(
        "sphere_from_pair: |alpha| >= 1, the twistor line is not compact");
  TwistorSphere s;
  s.I = j1;
  s.J = (alpha * j1 + j2) / std::sqrt(1.0 - alpha * alpha);
  s.K = s.I * s.J;
  return s;
}

Eigen::MatrixXd rotation(const Eigen::MatrixXd& i, double t) {
  const int d = static_cast<int>(i.rows());
  return std::cos(t) * Eigen::MatrixXd::Identity(d, d) + std::sin(t) * i;
}

DegeneracyReport degeneracy_test(const Triangle& tri, double tol) {
  const int d = tri.dim();
  const Eigen::MatrixXd words[8] = {
      Eigen::MatrixXd::Identity(d, d), tri.J1, tri.J2, tri.J3,
      tri.J1 * tri.J2, tri.J2 * tri.J3, tri.J3 * tri.J1,
      tri.J1 * tri.J2 * tri.J3};
  Eigen::MatrixXd stacked(8, d * d);
  for (int m = 0; m < 8; ++m)
    stacked.row(m) = Eigen::Map<const Eigen::VectorXd>(words[m].data(), d * d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, sv(0))) ++rank;
  if (rank != 4 && rank != 8)
    throw NumericError("triangle span has dimension " + std::to_string(rank) +
                       ", expected 4 or 8");
  return DegeneracyReport{rank == 4, rank};
}

std::string to_string(QuadricKind k) {
  switch (k) {
    case QuadricKind::Sphere:
      return "sphere";
    case QuadricKind::Hyperboloid:
      return "one-sheeted hyperboloid";
    default:
      return "cylinder";
  }
}

QuadricSamples quadric_classify_and_sample(const Triangle& tri, int count,
                                           std::uint64_t seed, double tol) {
  const Params<double> p = tri.t_params();
  const Eigen::MatrixXd q = to_eigen3(form_q3(p));
  const double det = q.determinant();
  QuadricSamples out;
  out.kind = det > tol    ? QuadricKind::Hyperboloid
             : det < -tol ? QuadricKind::Sphere
                          : QuadricKind::Cylinder;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = tri.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  int produced = 0, tries = 0;
  const int max_tries = 200 * std::max(count, 1);
  while (produced < count && tries < max_tries) {
    ++tries;
    Eigen::Vector3d u(gauss(rng), gauss(rng), gauss(rng));
    if (u.norm() < 1e-3) continue;
    const double quad = u.dot(q * u);
    if (quad >= -tol) continue;  // direction misses the quadric
    const Eigen::Vector3d v = u / std::sqrt(-quad);
    const Eigen::MatrixXd m = v(0) * tri.J1 + v(1) * tri.J2 + v(2) * tri.J3;
    out.max_unit_residual =
        std::max(out.max_unit_residual, (m * m + id).cwiseAbs().maxCoeff());
    out.coefficients.push_back(v);
    ++produced;
  }
  if (produced < count)
    throw NumericError("quadric sampling found no solutions; the plane form "
                       "admits no negative directions");
  return out;
}

namespace {

struct VertexFrame {
  Eigen::MatrixXd v, p, q;  // vertex structure and its two neighbors
  double a, g, b;           // t(v,p), t(v,q), t(p,q)
};

VertexFrame vertex_frame(const Triangle& tri, int vertex) {
  const Params<double> t = tri.t_params();
  switch (vertex) {
    case 1:
      return {tri.J1, tri.J2, tri.J3, t.alpha, t.gamma, t.beta};
    case 2:
      return {tri.J2, tri.J3, tri.J1, t.beta, t.alpha, t.gamma};
    case 3:
      return {tri.J3, tri.J1, tri.J2, t.gamma, t.beta, t.alpha};
    default:
      throw ValidationError("vertex must be 1, 2 or 3");
  }
}

}  // namespace

VertexAngleValue vertex_angle_form(const Triangle& tri, int vertex, double t,
                                   double s, double tol) {
  const VertexFrame f = vertex_frame(tri, vertex);
  if (std::abs(f.a) >= 1.0 - tol || std::abs(f.g) >= 1.0 - tol)
    throw ValidationError(
        "vertex angle undefined: a side at the vertex is not compact");
  const int d = tri.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const double na = std::sqrt(1.0 - f.a * f.a);
  const double ng = std::sqrt(1.0 - f.g * f.g);

  // Unit tangent circles at the vertex, one in each adjacent sphere.
  const Eigen::MatrixXd c_t =
      (std::cos(t) * (f.a * f.v + f.p) + std::sin(t) * (-f.a * id + f.v * f.p)) /
      na;
  const Eigen::MatrixXd d_s =
      (std::cos(s) * (f.g * f.v + f.q) + std::sin(s) * (-f.g * id + f.v * f.q)) /
      ng;

  VertexAngleValue out;
  out.direct = pseudo_inner(c_t, d_s);
  const double tr_vpq = (f.v * f.p * f.q).trace() / d;
  out.closed_form =
      -((f.b + f.a * f.g) * std::cos(t - s) + tr_vpq * std::sin(t - s)) /
      (na * ng);

  const Params<double> prm = tri.t_params();
  const double det = to_eigen3(form_q3(prm)).determinant();
  out.r = std::sqrt(std::max(0.0, -det));
  const Eigen::MatrixXd c_raw = prm.beta * tri.J1 - prm.gamma * tri.J2 +
                                prm.alpha * tri.J3 - tri.J1 * tri.J2 * tri.J3;
  out.m = out.r > tol ? -c_raw.trace() / out.r : 0.0;
  return out;
}

VertexAngle vertex_angle(const Triangle& tri, int vertex, double tol) {
  const VertexFrame f = vertex_frame(tri, vertex);
  if (std::abs(f.a) >= 1.0 - tol || std::abs(f.g) >= 1.0 - tol)
    throw ValidationError(
        "vertex angle undefined: a side at the vertex is not compact");
  const int d = tri.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const double na = std::sqrt(1.0 - f.a * f.a);
  const double ng = std::sqrt(1.0 - f.g * f.g);
  const Eigen::MatrixXd span[4] = {
      (f.a * f.v + f.p) / na, (-f.a * id + f.v * f.p) / na,
      (f.g * f.v + f.q) / ng, (-f.g * id + f.v * f.q) / ng};
  Eigen::Matrix4d gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram(i, j) = pseudo_inner(span[i], span[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(gram,
                                                    Eigen::EigenvaluesOnly);
  VertexAngle out;
  out.defined = es.eigenvalues()(0) > tol;
  const double extremal = -(f.b + f.a * f.g) / (na * ng);
  out.cosine = extremal;
  const double clamped = std::min(1.0, std::abs(extremal));
  out.angle = std::acos(clamped);  // in [0, pi/2]
  out.complement = extremal < 0.0;  // true angle acos(extremal) is obtuse
  return out;
}

std::array<double, 3> polar_triangle(const Params<double>& p, double tol) {
  if (std::abs(p.alpha) >= 1.0 || std::abs(p.beta) >= 1.0 ||
      std::abs(p.gamma) >= 1.0)
    throw ValidationError("polar_triangle: sides are not all compact");
  const Algebra<double> alg(p);
  if (alg.det_q() >= -tol)
    throw ValidationError("polar_triangle: det Q must be negative");
  auto f = alg.vtilde_basis();
  double norm[3];
  for (int i = 0; i < 3; ++i) {
    const double sq = alg.trace_form_value(f[i], f[i]);
    if (sq >= 0.0) throw NumericError("polar_triangle: basis vector not negative");
    norm[i] = std::sqrt(-sq);
  }
  const auto entry = [&](int i, int j) {
    return -alg.trace_form_value(f[i], f[j]) / (norm[i] * norm[j]);
  };
  return {entry(0, 1), entry(1, 2), entry(2, 0)};
}

}  // namespace biquat
