#include "biquat/sigforms.hpp"

#include <cmath>

namespace biquat {

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::Spherical:
      return "spherical";
    case ClassKind::Hyperbolic:
      return "hyperbolic";
    case ClassKind::Cylindrical:
      return "cylindrical";
    default:
      return "non-quaternionic";
  }
}

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.n_plus) + "," + std::to_string(s.n_minus) +
         "," + std::to_string(s.n_zero) + ")";
}

Signature signature(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw ValidationError("signature: matrix not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw ValidationError("signature: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  Signature s;
  for (double ev : es.eigenvalues()) {
    if (ev > tol)
      ++s.n_plus;
    else if (ev < -tol)
      ++s.n_minus;
    else
      ++s.n_zero;
  }
  return s;
}

Signature signature_exact(std::vector<std::vector<Rational>> m) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j] != m[j][i])
        throw ValidationError("signature_exact: matrix not symmetric");
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  Signature s;
  while (!live.empty()) {
    int pi = -1;
    for (std::size_t idx = 0; idx < live.size(); ++idx)
      if (sgn(m[live[idx]][live[idx]]) != 0) {
        pi = static_cast<int>(idx);
        break;
      }
    if (pi >= 0) {
      const int p = live[pi];
      const Rational d = m[p][p];
      (sgn(d) > 0 ? s.n_plus : s.n_minus) += 1;
      live.erase(live.begin() + pi);
      for (int r : live)
        for (int c : live) m[r][c] -= m[r][p] * m[p][c] / d;
      continue;
    }
    // No nonzero diagonal: look for an off-diagonal hyperbolic pivot.
    int ai = -1, bi = -1;
    for (std::size_t x = 0; x < live.size() && ai < 0; ++x)
      for (std::size_t y = x + 1; y < live.size(); ++y)
        if (sgn(m[live[x]][live[y]]) != 0) {
          ai = static_cast<int>(x);
          bi = static_cast<int>(y);
          break;
        }
    if (ai < 0) {
      s.n_zero += static_cast<int>(live.size());
      break;
    }
    const int a = live[ai], b = live[bi];
    const Rational v = m[a][b];
    s.n_plus += 1;
    s.n_minus += 1;
    live.erase(live.begin() + bi);
    live.erase(live.begin() + ai);
    for (int r : live)
      for (int c : live)
        m[r][c] -= (m[r][a] * m[b][c] + m[r][b] * m[a][c]) / v;
  }
  return s;
}

std::optional<Signature> predicted_q8_signature(const Signature& sig_q) {
  const Signature s03{0, 3, 0}, s21{2, 1, 0}, s12{1, 2, 0};
  const Signature s021{0, 2, 1}, s111{1, 1, 1}, s012{0, 1, 2};
  if (sig_q == s03) return Signature{2, 6, 0};
  if (sig_q == s21) return Signature{6, 2, 0};
  if (sig_q == s12) return Signature{4, 4, 0};
  if (sig_q == s021) return Signature{1, 3, 4};
  if (sig_q == s111) return Signature{3, 1, 4};
  if (sig_q == s012) return Signature{1, 1, 6};
  return std::nullopt;
}

namespace {

AlgebraClass class_from_signature(Signature sq) {
  AlgebraClass c;
  c.sig_q = sq;
  const auto pred = predicted_q8_signature(sq);
  if (!pred)
    throw NumericError("signature of Q outside the six admissible cases: " +
                       to_string(sq));
  c.sig_q8_predicted = *pred;
  if (sq == Signature{0, 3, 0})
    c.kind = ClassKind::Spherical;
  else if (sq == Signature{1, 2, 0})
    c.kind = ClassKind::Hyperbolic;
  else if (sq == Signature{0, 2, 1})
    c.kind = ClassKind::Cylindrical;
  else
    c.kind = ClassKind::NonQuaternionic;
  // An embedded quaternion algebra needs a (1,3)-subspace of q.
  const Signature q8 = c.sig_q8_predicted;
  c.quaternionic = q8.n_plus >= 1 && q8.n_minus >= 3;
  return c;
}

}  // namespace

AlgebraClass classify(const Params<double>& p, double tol) {
  AlgebraClass c = class_from_signature(signature(to_eigen3(form_q3(p)), tol));
  // Classification is discontinuous on the det Q = 0 locus; flag proximity
  // so the caller can decide.
  c.near_degenerate = std::abs(det3(form_q3(p))) < tol;
  return c;
}

AlgebraClass classify_exact(const Params<Rational>& p) {
  const Mat3<Rational> q3 = form_q3(p);
  std::vector<std::vector<Rational>> m(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = q3[i][j];
  return class_from_signature(signature_exact(std::move(m)));
}

std::pair<Vec8<double>, Vec8<double>> quaternionic_pair(
    const Algebra<double>& alg, double tol) {
  const auto& p = alg.params();
  const AlgebraClass cls = classify(p, tol);
  if (!cls.quaternionic)
    throw ValidationError("quaternionic_pair: algebra of class " +
                          to_string(cls.kind) + " contains no quaternions");
  struct Candidate {
    double t;
    int gen_a, gen_b;
  };
  const Candidate cands[3] = {{p.alpha, kE1, kE2}, {p.beta, kE2, kE3},
                              {p.gamma, kE3, kE1}};
  for (const auto& cand : cands) {
    if (std::abs(cand.t) < 1.0 - tol) {
      Vec8<double> u1 = basis_element<double>(cand.gen_a);
      Vec8<double> u2 = zero_vec8<double>();
      const double scale = 1.0 / std::sqrt(1.0 - cand.t * cand.t);
      u2[cand.gen_a] = cand.t * scale;
      u2[cand.gen_b] = scale;
      return {u1, u2};
    }
  }
  // Hyperbolic case: q-negative unit in the plane <a - e1e2, g - e3e1>,
  // whose Gram matrix has determinant -det Q < 0.
  Eigen::Matrix2d gram;
  gram << p.alpha * p.alpha - 1.0, -(p.alpha * p.gamma + p.beta),
      -(p.alpha * p.gamma + p.beta), p.gamma * p.gamma - 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
  const double lambda = es.eigenvalues()(0);  // ascending: the negative one
  if (lambda >= 0.0)
    throw NumericError("quaternionic_pair: plane form unexpectedly nonnegative");
  const Eigen::Vector2d v = es.eigenvectors().col(0) / std::sqrt(-lambda);
  Vec8<double> u2 = zero_vec8<double>();
  u2[kOne] = v(0) * p.alpha + v(1) * p.gamma;
  u2[kE12] = -v(0);
  u2[kE31] = -v(1);
  return {basis_element<double>(kE1), u2};
}

}  // namespace biquat
