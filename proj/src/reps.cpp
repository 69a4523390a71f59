#include "biquat/reps.hpp"

#include <cmath>
#include <random>

namespace biquat {

Eigen::MatrixXd to_eigen(const Mat8<double>& m) {
  Eigen::MatrixXd e(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) e(i, j) = m[i][j];
  return e;
}

Eigen::VectorXd to_eigen(const Vec8<double>& v) {
  Eigen::VectorXd e(8);
  for (int i = 0; i < 8; ++i) e(i) = v[i];
  return e;
}

Eigen::MatrixXd MatRep::image(const Vec8<double>& coords) const {
  const int d = dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd j12 = J1 * J2, j23 = J2 * J3, j31 = J3 * J1;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  out += coords[kOne] * id;
  out += coords[kE1] * J1;
  out += coords[kE2] * J2;
  out += coords[kE3] * J3;
  out += coords[kE12] * j12;
  out += coords[kE23] * j23;
  out += coords[kE31] * j31;
  out += coords[kE123] * (j12 * J3);
  return out;
}

Eigen::MatrixXd MatRep::image_central_raw() const {
  return params.beta * J1 - params.gamma * J2 + params.alpha * J3 -
         J1 * J2 * J3;
}

QuaternionFrame quaternion_frame(const Algebra<double>& alg, double tol) {
  auto [u1, u2] = quaternionic_pair(alg, tol);
  QuaternionFrame f;
  f.i = u1;
  f.j = u2;
  f.k = alg.multiply(u1, u2);
  return f;
}

Eigen::MatrixXd left_ideal_basis(const Algebra<double>& alg,
                                 const Vec8<double>& g, double tol) {
  if (is_zero(g, tol)) throw ValidationError("left_ideal_basis: zero generator");
  const Eigen::MatrixXd rg = to_eigen(alg.right_mult(g));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rg);
  qr.setThreshold(tol);
  const int rank = static_cast<int>(qr.rank());
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(8, rank);
  return q;
}

Eigen::MatrixXd restrict_operator(const Eigen::MatrixXd& op,
                                  const Eigen::MatrixXd& basis, double tol) {
  // Solve basis * M = op * basis in the least-squares sense and check the
  // subspace was actually invariant.
  const Eigen::MatrixXd rhs = op * basis;
  const Eigen::MatrixXd m = basis.colPivHouseholderQr().solve(rhs);
  const double resid = (basis * m - rhs).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (resid > 1e3 * tol * scale)
    throw NumericError("restrict_operator: subspace is not invariant");
  return m;
}

namespace {

Vec8<double> require_normalized_central(const Algebra<double>& alg, double tol) {
  const auto ce = alg.central_element(tol);
  if (!ce.normalized)
    throw NumericError("central element has no normalization");
  return *ce.normalized;
}

MatRep restricted_rep(const Algebra<double>& alg, const Eigen::MatrixXd& basis,
                      double tol) {
  MatRep rep;
  rep.n = static_cast<int>(basis.cols()) / 4;
  rep.params = alg.params();
  rep.J1 = restrict_operator(to_eigen(alg.left_mult(basis_element<double>(kE1))),
                             basis, tol);
  rep.J2 = restrict_operator(to_eigen(alg.left_mult(basis_element<double>(kE2))),
                             basis, tol);
  rep.J3 = restrict_operator(to_eigen(alg.left_mult(basis_element<double>(kE3))),
                             basis, tol);
  return rep;
}

Vec8<double> frame_vector(const QuaternionFrame& f, const Eigen::Vector3d& w) {
  return w(0) * f.i + w(1) * f.j + w(2) * f.k;
}

}  // namespace

MatRep irrep(const Algebra<double>& alg, const IrrepKind& kind, double tol) {
  const ClassKind cls = classify(alg.params(), tol).kind;
  switch (kind.kind) {
    case IrrepKind::Rho1:
    case IrrepKind::Rho2: {
      if (cls != ClassKind::Spherical)
        throw ValidationError("rho1/rho2 require a spherical algebra");
      const Vec8<double> c = require_normalized_central(alg, tol);
      Vec8<double> g = basis_element<double>(kOne);
      g = kind.kind == IrrepKind::Rho1 ? g + c : g - c;
      return restricted_rep(alg, left_ideal_basis(alg, g, tol), tol);
    }
    case IrrepKind::Rho0: {
      if (cls != ClassKind::Hyperbolic)
        throw ValidationError("rho0 requires a hyperbolic algebra");
      const QuaternionFrame f = quaternion_frame(alg, tol);
      const Vec8<double> c = require_normalized_central(alg, tol);
      const Vec8<double> v = frame_vector(f, kind.w.normalized()) + c;
      return restricted_rep(alg, left_ideal_basis(alg, v, tol), tol);
    }
    case IrrepKind::Rho4: {
      if (cls != ClassKind::Cylindrical)
        throw ValidationError("rho4 requires a cylindrical algebra");
      return restricted_rep(alg, left_ideal_basis(alg, alg.central_raw(), tol),
                            tol);
    }
    case IrrepKind::Rho8: {
      if (cls != ClassKind::Cylindrical)
        throw ValidationError("rho8 requires a cylindrical algebra");
      MatRep rep;
      rep.n = 2;
      rep.params = alg.params();
      rep.J1 = to_eigen(alg.left_mult(basis_element<double>(kE1)));
      rep.J2 = to_eigen(alg.left_mult(basis_element<double>(kE2)));
      rep.J3 = to_eigen(alg.left_mult(basis_element<double>(kE3)));
      return rep;
    }
  }
  throw ValidationError("unknown irrep kind");
}

Eigen::Matrix4d hyperbolic_central_matrix(const Algebra<double>& alg,
                                          const Eigen::Vector3d& w,
                                          double tol) {
  if (classify(alg.params(), tol).kind != ClassKind::Hyperbolic)
    throw ValidationError("hyperbolic_central_matrix: wrong class");
  const QuaternionFrame f = quaternion_frame(alg, tol);
  const Vec8<double> c = require_normalized_central(alg, tol);
  const Vec8<double> v = frame_vector(f, w.normalized()) + c;
  Eigen::MatrixXd basis(8, 4);
  basis.col(0) = to_eigen(v);
  basis.col(1) = to_eigen(alg.multiply(f.i, v));
  basis.col(2) = to_eigen(alg.multiply(f.j, v));
  basis.col(3) = to_eigen(alg.multiply(f.k, v));
  const Eigen::MatrixXd lc = to_eigen(alg.left_mult(c));
  return restrict_operator(lc, basis, tol);
}

Eigen::MatrixXd cylindrical_central_matrix(const Algebra<double>& alg,
                                           double tol) {
  if (classify(alg.params(), tol).kind != ClassKind::Cylindrical)
    throw ValidationError("cylindrical_central_matrix: wrong class");
  const QuaternionFrame f = quaternion_frame(alg, tol);
  const Vec8<double> c = alg.central_raw();
  Eigen::MatrixXd basis(8, 8);
  const Vec8<double> one = basis_element<double>(kOne);
  const Vec8<double> cols[8] = {c,
                                alg.multiply(f.i, c),
                                alg.multiply(f.j, c),
                                alg.multiply(f.k, c),
                                one,
                                f.i,
                                f.j,
                                f.k};
  for (int idx = 0; idx < 8; ++idx) basis.col(idx) = to_eigen(cols[idx]);
  const Eigen::MatrixXd lc = to_eigen(alg.left_mult(c));
  return restrict_operator(lc, basis, tol);
}

namespace {

MatRep direct_sum(const std::vector<const MatRep*>& blocks,
                  const Params<double>& params) {
  int d = 0;
  for (const MatRep* b : blocks) d += b->dim();
  MatRep out;
  out.n = d / 4;
  out.params = params;
  out.J1 = Eigen::MatrixXd::Zero(d, d);
  out.J2 = Eigen::MatrixXd::Zero(d, d);
  out.J3 = Eigen::MatrixXd::Zero(d, d);
  int at = 0;
  for (const MatRep* b : blocks) {
    const int bd = b->dim();
    out.J1.block(at, at, bd, bd) = b->J1;
    out.J2.block(at, at, bd, bd) = b->J2;
    out.J3.block(at, at, bd, bd) = b->J3;
    at += bd;
  }
  return out;
}

}  // namespace

MatRep build(const Algebra<double>& alg, int n, int k, double tol) {
  if (n <= 0) throw ValidationError("build: n must be positive");
  const ClassKind cls = classify(alg.params(), tol).kind;
  switch (cls) {
    case ClassKind::Spherical: {
      if (k < 0 || k > n)
        throw ValidationError("build: spherical multiplicity needs 0 <= k <= n");
      const MatRep r1 = irrep(alg, IrrepKind::rho1(), tol);
      const MatRep r2 = irrep(alg, IrrepKind::rho2(), tol);
      std::vector<const MatRep*> blocks;
      for (int i = 0; i < k; ++i) blocks.push_back(&r1);
      for (int i = 0; i < n - k; ++i) blocks.push_back(&r2);
      return direct_sum(blocks, alg.params());
    }
    case ClassKind::Cylindrical: {
      if (k < 0 || 2 * k > n)
        throw ValidationError("build: cylindrical multiplicity needs 0 <= 2k <= n");
      const MatRep r4 = irrep(alg, IrrepKind::rho4(), tol);
      const MatRep r8 = irrep(alg, IrrepKind::rho8(), tol);
      std::vector<const MatRep*> blocks;
      for (int i = 0; i < n - 2 * k; ++i) blocks.push_back(&r4);
      for (int i = 0; i < k; ++i) blocks.push_back(&r8);
      return direct_sum(blocks, alg.params());
    }
    case ClassKind::Hyperbolic: {
      if (k != n)
        throw ValidationError("build: hyperbolic representations have k = n");
      const MatRep r0 = irrep(alg, IrrepKind::rho0({1, 0, 0}), tol);
      std::vector<const MatRep*> blocks(static_cast<std::size_t>(n), &r0);
      return direct_sum(blocks, alg.params());
    }
    default:
      throw ValidationError("build: algebra is not quaternionic");
  }
}

MatRep build_faithful(const Algebra<double>& alg, int n, double tol) {
  const ClassKind cls = classify(alg.params(), tol).kind;
  if (cls == ClassKind::Hyperbolic) return build(alg, n, n, tol);
  if (n == 1)
    throw ValidationError(
        "no faithful representation exists for a " + to_string(cls) +
        " algebra with n = 1; only one with quaternion image does");
  if (cls == ClassKind::Spherical) return build(alg, n, 1, tol);
  if (cls == ClassKind::Cylindrical) return build(alg, n, 1, tol);
  throw ValidationError("build_faithful: algebra is not quaternionic");
}

RelationReport verify_relations(const MatRep& rep, double tol) {
  const int d = rep.dim();
  RelationReport out;
  if (rep.J1.rows() != d || rep.J1.cols() != d || rep.J2.rows() != d ||
      rep.J2.cols() != d || rep.J3.rows() != d || rep.J3.cols() != d)
    throw ValidationError("verify_relations: size mismatch");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const auto check = [&](const Eigen::MatrixXd& resid, const std::string& name) {
    const double r = resid.cwiseAbs().maxCoeff();
    out.max_residual = std::max(out.max_residual, r);
    if (r > tol && out.ok) {
      out.ok = false;
      out.violated = name;
    }
  };
  check(rep.J1 * rep.J1 + id, "J1^2 = -Id");
  check(rep.J2 * rep.J2 + id, "J2^2 = -Id");
  check(rep.J3 * rep.J3 + id, "J3^2 = -Id");
  check(rep.J1 * rep.J2 + rep.J2 * rep.J1 - 2.0 * rep.params.alpha * id,
        "J1J2 + J2J1 = 2 alpha Id");
  check(rep.J2 * rep.J3 + rep.J3 * rep.J2 - 2.0 * rep.params.beta * id,
        "J2J3 + J3J2 = 2 beta Id");
  check(rep.J3 * rep.J1 + rep.J1 * rep.J3 - 2.0 * rep.params.gamma * id,
        "J3J1 + J1J3 = 2 gamma Id");
  return out;
}

namespace {

int matrix_rank(const Eigen::MatrixXd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = std::max(tol, tol * sv(0));
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

}  // namespace

RepClass classify_rep(const MatRep& rep, double tol) {
  const RelationReport rel = verify_relations(rep, std::max(tol, 1e-8));
  if (!rel.ok)
    throw ValidationError("classify_rep: defining relations violated at " +
                          rel.violated);
  RepClass out;
  const AlgebraClass cls = classify(rep.params);
  out.kind = cls.kind;
  const int n = rep.n;
  switch (cls.kind) {
    case ClassKind::Spherical: {
      const double r = std::sqrt(-(to_eigen3(form_q3(rep.params)).determinant()));
      const double tr = rep.image_central_raw().trace() / r;
      const double kx = (tr + 4.0 * n) / 8.0;
      const double rounded = std::round(kx);
      if (std::abs(kx - rounded) > tol || rounded < 0 || rounded > n)
        throw NumericError("classify_rep: trace of rho(c) matches no admissible k");
      out.k = static_cast<int>(rounded);
      break;
    }
    case ClassKind::Cylindrical: {
      const int rank = matrix_rank(rep.image_central_raw(), std::max(tol, 1e-8));
      if (rank % 4 != 0 || rank / 4 > n / 2)
        throw NumericError("classify_rep: rank of rho(c) matches no admissible k");
      out.k = rank / 4;
      break;
    }
    case ClassKind::Hyperbolic:
      out.k = n;
      break;
    default:
      throw ValidationError("classify_rep: algebra is not quaternionic");
  }
  // Faithful iff the images of the eight basis monomials are independent.
  const int d = rep.dim();
  Eigen::MatrixXd stacked(8, d * d);
  for (int m = 0; m < 8; ++m) {
    const Eigen::MatrixXd img = rep.image(basis_element<double>(m));
    stacked.row(m) = Eigen::Map<const Eigen::VectorXd>(img.data(), d * d);
  }
  out.image_dim = matrix_rank(stacked, std::max(tol, 1e-8));
  out.faithful = out.image_dim == 8;
  if (out.image_dim != 4 && out.image_dim != 8)
    throw NumericError("classify_rep: image dimension " +
                       std::to_string(out.image_dim) + ", expected 4 or 8");
  return out;
}

std::optional<Eigen::MatrixXd> intertwiner(
    const std::vector<Eigen::MatrixXd>& a,
    const std::vector<Eigen::MatrixXd>& b, std::uint64_t seed,
    IntertwinerDiag* diag, double tol) {
  if (a.size() != b.size() || a.empty())
    throw ValidationError("intertwiner: operator lists of unequal size");
  const int d = static_cast<int>(a[0].rows());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].rows() != d || a[i].cols() != d || b[i].rows() != d ||
        b[i].cols() != d)
      throw ValidationError("intertwiner: operator size mismatch");

  // vec(T A_i - B_i T) = (A_i^T (x) Id - Id (x) B_i) vec(T), column-major.
  const int dd = d * d;
  Eigen::MatrixXd sys(static_cast<int>(a.size()) * dd, dd);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dd, dd);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        block.block(p * d, q * d, d, d) =
            a[i](q, p) * Eigen::MatrixXd::Identity(d, d);
    for (int p = 0; p < d; ++p)
      block.block(p * d, p * d, d, d) -= b[i];
    sys.middleRows(static_cast<int>(i) * dd, dd) = block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? std::max(tol, tol * sv(0)) : tol;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  const int null_dim = dd - rank;
  if (diag) {
    diag->nullspace_dim = null_dim;
    diag->attempts = 0;
  }
  if (null_dim == 0) return std::nullopt;
  const Eigen::MatrixXd kernel = svd.matrixV().rightCols(null_dim);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kRetries = 20;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Eigen::VectorXd coeff(null_dim);
    for (int i = 0; i < null_dim; ++i) coeff(i) = gauss(rng);
    const Eigen::VectorXd vec_t = kernel * coeff;
    Eigen::MatrixXd t = Eigen::Map<const Eigen::MatrixXd>(vec_t.data(), d, d);
    Eigen::JacobiSVD<Eigen::MatrixXd> tsvd(t);
    const auto& tsv = tsvd.singularValues();
    if (diag) diag->attempts = attempt + 1;
    if (tsv(0) <= 0.0) continue;
    if (tsv(tsv.size() - 1) > 1e-8 * tsv(0)) return t;
  }
  return std::nullopt;
}

bool equivalent(const MatRep& x, const MatRep& y, std::uint64_t seed,
                double tol) {
  if (x.dim() != y.dim()) return false;
  return intertwiner({x.J1, x.J2, x.J3}, {y.J1, y.J2, y.J3}, seed, nullptr, tol)
      .has_value();
}

}  // namespace biquat
