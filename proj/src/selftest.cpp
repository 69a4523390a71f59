#include "biquat/selftest.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "biquat/fibers.hpp"
#include "biquat/hcore.hpp"
#include "biquat/periods.hpp"
#include "biquat/reps.hpp"
#include "biquat/sigforms.hpp"

namespace biquat {

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 12);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(-3 * d, 3 * d);
  Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

struct Failure {
  std::ostringstream what;
  int count = 0;
  void note(const std::string& msg) {
    if (count < 4) what << (count ? "; " : "") << msg;
    ++count;
  }
  bool ok() const { return count == 0; }
  std::string str() const {
    return count ? what.str() + " (" + std::to_string(count) + " failures)"
                 : "";
  }
};

// ---------------------------------------------------------------------------
// Criterion 1: exact algebraic identity suite over 1000 rational triples.
// ---------------------------------------------------------------------------
CheckResult criterion_identities(const CheckOptions& opt) {
  CheckResult res{"1 exact identity suite (1000 rational triples)", false,
                  false, 0.0, ""};
  Failure fail;
  std::mt19937_64 rng(opt.seed);
  const Rational zero(0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Params<Rational> p{random_rational(rng), random_rational(rng),
                             random_rational(rng)};
    const Algebra<Rational> alg(p);

    // Associativity on all basis triples.
    for (int i = 0; i < 8 && fail.ok(); ++i)
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
          const auto lhs =
              alg.multiply(alg.basis_product(i, j), basis_element<Rational>(k));
          const auto rhs =
              alg.multiply(basis_element<Rational>(i), alg.basis_product(j, k));
          if (!(lhs == rhs)) {
            fail.note("associativity violated at triple " + std::to_string(i) +
                      "," + std::to_string(j) + "," + std::to_string(k));
            break;
          }
        }

    // c is central and squares to -det Q.
    const auto c = alg.central_raw();
    for (int g = kE1; g <= kE3; ++g) {
      const auto e = basis_element<Rational>(g);
      if (!(alg.multiply(c, e) == alg.multiply(e, c)))
        fail.note("central element fails to commute");
    }
    auto csq = alg.multiply(c, c);
    csq[kOne] += alg.det_q();
    if (!is_zero(csq)) fail.note("c^2 != -det Q");

    // Qtilde = -adj(Q), via the trace form on Vtilde.
    const auto qt = form_q3_tilde(p);
    const auto f = alg.vtilde_basis();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(alg.trace_form_value(f[i], f[j]) == qt[i][j]))
          fail.note("q on Vtilde != -adj(Q)");
    const auto q3 = form_q3(p);
    for (int i = kE1; i <= kE3; ++i)
      for (int j = kE1; j <= kE3; ++j)
        if (!(alg.trace_form_value(basis_element<Rational>(i),
                                   basis_element<Rational>(j)) ==
              q3[i - 1][j - 1]))
          fail.note("q on V != printed Q");

    // Tr rho_reg(e1e2e3) = 0.
    if (!(alg.trace_left_mult(basis_element<Rational>(kE123)) == zero))
      fail.note("Tr L_{e1e2e3} != 0");

    // Squares agree with q on V and on Vtilde.
    {
      Vec8<Rational> v = zero_vec8<Rational>();
      for (int i = kE1; i <= kE3; ++i) v[i] = random_rational(rng);
      auto sq = alg.multiply(v, v);
      sq[kOne] -= alg.trace_form_value(v, v);
      if (!is_zero(sq)) fail.note("Sq != q on V");
      Vec8<Rational> w = random_rational(rng) * f[0];
      w = w + random_rational(rng) * f[1];
      w = w + random_rational(rng) * f[2];
      auto sqw = alg.multiply(w, w);
      sqw[kOne] -= alg.trace_form_value(w, w);
      if (!is_zero(sqw)) fail.note("Sq != q on Vtilde");
    }

    // Canonical decomposition: q-orthogonality, the inclusion checks and
    // the square-map range, all exact.
    const auto dec = alg.canonical_decomposition();
    if (dec.span_dim != 8) fail.note("decomposition does not span R^8");
    const auto checks = check_decomposition(alg, dec, opt.seed + trial);
    if (!checks.q_orthogonal) fail.note("decomposition not q-orthogonal");
    if (!checks.cv_in_vtilde) fail.note("cV not in Vtilde");
    if (!checks.cvtilde_in_v) fail.note("cVtilde not in V");
    if (!checks.square_map_in_center_plane)
      fail.note("square map leaves <1, c>");
    if (sgn(alg.det_q()) != 0 && !checks.equalities_hold)
      fail.note("cV = Vtilde fails at nonzero det Q");
    if (!fail.ok()) break;
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 2: signature table over a stratified sample of all six cases.
// ---------------------------------------------------------------------------
CheckResult criterion_signature_table(const CheckOptions& opt) {
  CheckResult res{"2 signature table (six cases + boundaries)", false, true,
                  0.0, ""};
  Failure fail;
  const auto check_exact = [&](int an, int bn, int gn) {
    const Params<Rational> p{Rational(an), Rational(bn), Rational(gn)};
    const AlgebraClass cls = classify_exact(p);
    const Algebra<Rational> alg(p);
    const auto q8 = alg.trace_form();
    std::vector<std::vector<Rational>> m(8, std::vector<Rational>(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m[i][j] = q8[i][j];
    if (!(signature_exact(m) == cls.sig_q8_predicted))
      fail.note("exact q-signature mismatch at boundary triple");
  };
  // Exact boundary and representative triples covering all six cases.
  check_exact(0, 0, 0);     // (0,3)
  check_exact(2, 2, 2);     // (1,2)
  check_exact(1, 1, 1);     // (1,2) again: det 4 > 0
  check_exact(-2, -2, -2);  // (2,1)
  check_exact(0, 0, 1);     // (0,2,1)
  check_exact(2, -1, 2);    // (1,1,1)
  check_exact(1, 1, -1);    // (0,1,2)

  // Float measurements across the strata, including the exact boundaries.
  const Params<double> samples[] = {
      {0, 0, 0},    {0.3, -0.2, 0.4}, {2, 2, 2},  {1.5, -0.3, 0.2},
      {-2, -2, -2}, {2.5, 1.2, 0.1},  {0, 0, 1},  {0, 1, 0},
      {2, -1, 2},   {1, 1, -1},       {1, -1, 1}, {1, 1, 1}};
  for (const auto& p : samples) {
    const AlgebraClass cls = classify(p, opt.tol);
    if (!predicted_q8_signature(cls.sig_q))
      fail.note("signature outside the six-case list");
    const Algebra<double> alg(p);
    const Signature meas = signature(to_eigen8(alg.trace_form()), opt.tol);
    if (!(meas == cls.sig_q8_predicted))
      fail.note("measured sig(q) " + to_string(meas) + " != predicted " +
                to_string(cls.sig_q8_predicted));
  }
  // Random strata.
  std::mt19937_64 rng(opt.seed + 2);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    const Params<double> p{unif(rng), unif(rng), unif(rng)};
    const AlgebraClass cls = classify(p, opt.tol);
    if (cls.near_degenerate) continue;
    const Algebra<double> alg(p);
    const Signature meas = signature(to_eigen8(alg.trace_form()), opt.tol);
    if (!(meas == cls.sig_q8_predicted)) fail.note("random-sample mismatch");
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 3: center dimension 3 exactly on the rank-one locus, else 2.
// ---------------------------------------------------------------------------
CheckResult criterion_center(const CheckOptions& opt) {
  CheckResult res{"3 center dimension (rank-one locus vs generic)", false,
                  false, 0.0, ""};
  Failure fail;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      const Params<Rational> p{Rational(a), Rational(b), Rational(-a * b)};
      const Algebra<Rational> alg(p);
      if (alg.center_basis().size() != 3)
        fail.note("rank-one triple has center dimension != 3");
    }
  std::mt19937_64 rng(opt.seed + 3);
  for (int t = 0; t < 500; ++t) {
    const Params<Rational> p{random_rational(rng), random_rational(rng),
                             random_rational(rng)};
    const bool rank_one = abs(p.alpha) == 1 && abs(p.beta) == 1 &&
                          abs(p.gamma) == 1 && p.gamma == -p.alpha * p.beta;
    if (rank_one) continue;
    const Algebra<Rational> alg(p);
    if (alg.center_basis().size() != 2)
      fail.note("generic triple has center dimension != 2");
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 4: representation counts and multiplicity recovery.
// ---------------------------------------------------------------------------
CheckResult criterion_rep_counts(const CheckOptions& opt) {
  CheckResult res{"4 representation counts and k recovery", false, true, 0.0,
                  ""};
  Failure fail;
  const double ktol = 1e-6;
  {
    const Algebra<double> alg({0.3, -0.2, 0.4});
    for (int n = 1; n <= 3; ++n) {
      std::vector<MatRep> reps;
      for (int k = 0; k <= n; ++k) reps.push_back(build(alg, n, k, opt.tol));
      int nonfaithful = 0;
      for (int i = 0; i <= n; ++i) {
        const RepClass cls = classify_rep(reps[i], ktol);
        if (cls.k != i) fail.note("spherical k recovery failed");
        if (!cls.faithful) ++nonfaithful;
        for (int j = i + 1; j <= n; ++j)
          if (equivalent(reps[i], reps[j], opt.seed + 10 * i + j, opt.tol))
            fail.note("distinct spherical multiplicities found equivalent");
      }
      if (nonfaithful != 2) fail.note("spherical non-faithful count != 2");
    }
  }
  {
    const Algebra<double> alg({0.0, 0.0, 1.0});
    for (int n = 1; n <= 4; ++n) {
      std::vector<MatRep> reps;
      for (int k = 0; 2 * k <= n; ++k)
        reps.push_back(build(alg, n, k, opt.tol));
      if (static_cast<int>(reps.size()) != n / 2 + 1)
        fail.note("cylindrical class count != floor(n/2)+1");
      int nonfaithful = 0;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const RepClass cls = classify_rep(reps[i], ktol);
        if (cls.k != static_cast<int>(i))
          fail.note("cylindrical k recovery failed");
        if (!cls.faithful) ++nonfaithful;
        for (std::size_t j = i + 1; j < reps.size(); ++j)
          if (equivalent(reps[i], reps[j], opt.seed + 20 * i + j, opt.tol))
            fail.note("distinct cylindrical multiplicities found equivalent");
      }
      if (nonfaithful != 1) fail.note("cylindrical non-faithful count != 1");
    }
  }
  {
    const Algebra<double> alg({2.0, 2.0, 2.0});
    std::mt19937_64 rng(opt.seed + 4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
      const MatRep canonical = build(alg, n, n, opt.tol);
      // A second relation-satisfying representation from other ideals.
      const Eigen::Vector3d axes[3] = {{0, 1, 0}, {0, 0, 1}, {0.6, 0, 0.8}};
      const int d = 4 * n;
      MatRep other;
      other.n = n;
      other.params = alg.params();
      other.J1 = Eigen::MatrixXd::Zero(d, d);
      other.J2 = Eigen::MatrixXd::Zero(d, d);
      other.J3 = Eigen::MatrixXd::Zero(d, d);
      for (int b = 0; b < n; ++b) {
        const MatRep piece = irrep(alg, IrrepKind::rho0(axes[b % 3]), opt.tol);
        other.J1.block(4 * b, 4 * b, 4, 4) = piece.J1;
        other.J2.block(4 * b, 4 * b, 4, 4) = piece.J2;
        other.J3.block(4 * b, 4 * b, 4, 4) = piece.J3;
      }
      Eigen::MatrixXd g(d, d);
      do {
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
      } while (std::abs(g.determinant()) < 1e-3);
      const Eigen::MatrixXd gi = g.inverse();
      const MatRep shuffled{n, g * other.J1 * gi, g * other.J2 * gi,
                            g * other.J3 * gi, alg.params()};
      if (!equivalent(canonical, shuffled, opt.seed + 30 + n, opt.tol))
        fail.note("hyperbolic representations of equal n not equivalent");
    }
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 5: the explicit matrices of the irreducible pieces.
// ---------------------------------------------------------------------------
CheckResult criterion_explicit_matrices(const CheckOptions& opt) {
  CheckResult res{"5 explicit central matrices (all three classes)", false,
                  true, 0.0, ""};
  Failure fail;
  std::mt19937_64 rng(opt.seed + 5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-2.5, 2.5);
  // Hyperbolic: 50 random unit w across a few hyperbolic parameter triples.
  std::vector<Params<double>> hyper = {{2, 2, 2}};
  while (hyper.size() < 4) {
    const Params<double> p{unif(rng), unif(rng), unif(rng)};
    const AlgebraClass c = classify(p);
    if (c.kind == ClassKind::Hyperbolic && !c.near_degenerate)
      hyper.push_back(p);
  }
  int done = 0;
  while (done < 50) {
    const auto& p = hyper[done % hyper.size()];
    const Algebra<double> alg(p);
    Eigen::Vector3d w(gauss(rng), gauss(rng), gauss(rng));
    if (w.norm() < 1e-2) continue;
    w.normalize();
    const Eigen::Matrix4d m = hyperbolic_central_matrix(alg, w, opt.tol);
    const double x = w(0), y = w(1), z = w(2);
    Eigen::Matrix4d expect;
    expect << 0, -x, -y, -z, x, 0, z, -y, y, -z, 0, x, z, y, -x, 0;
    if ((m - expect).cwiseAbs().maxCoeff() > 1e-9)
      fail.note("hyperbolic L_c block matrix mismatch");
    ++done;
  }
  // Cylindrical block normal form.
  for (const Params<double>& p :
       {Params<double>{0, 0, 1}, Params<double>{0, 1, 0}}) {
    const Algebra<double> alg(p);
    const Eigen::MatrixXd m = cylindrical_central_matrix(alg, opt.tol);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(8, 8);
    expect.block(0, 4, 4, 4) = Eigen::Matrix4d::Identity();
    if ((m - expect).cwiseAbs().maxCoeff() > 1e-9)
      fail.note("cylindrical L_c block form mismatch");
  }
  // Spherical: rho1(c) = Id, rho2(c) = -Id.
  for (const Params<double>& p :
       {Params<double>{0, 0, 0}, Params<double>{0.3, -0.2, 0.4}}) {
    const Algebra<double> alg(p);
    const double r = std::sqrt(-alg.det_q());
    const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
    const MatRep r1 = irrep(alg, IrrepKind::rho1(), opt.tol);
    const MatRep r2 = irrep(alg, IrrepKind::rho2(), opt.tol);
    if ((r1.image_central_raw() / r - id).cwiseAbs().maxCoeff() > 1e-9)
      fail.note("rho1(c) != Id");
    if ((r2.image_central_raw() / r + id).cwiseAbs().maxCoeff() > 1e-9)
      fail.note("rho2(c) != -Id");
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 6: pseudometric signatures on End and on the tangent space.
// ---------------------------------------------------------------------------
CheckResult criterion_pseudometric(const CheckOptions& opt) {
  CheckResult res{"6 pseudometric signatures (n = 1, 2)", false, true, 0.0,
                  ""};
  Failure fail;
  for (int n : {1, 2}) {
    const int d = 4 * n, dim = d * d;
    std::vector<Eigen::MatrixXd> units;
    units.reserve(dim);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
        e(r, c) = 1.0;
        units.push_back(std::move(e));
      }
    Eigen::MatrixXd gram(dim, dim);
    for (int x = 0; x < dim; ++x)
      for (int y = x; y < dim; ++y)
        gram(x, y) = gram(y, x) = pseudo_inner(units[x], units[y]);
    if (!(signature(gram, opt.tol) ==
          Signature{8 * n * n - 2 * n, 8 * n * n + 2 * n, 0}))
      fail.note("full-space signature mismatch at n = " + std::to_string(n));

    Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(d, d);
    for (int b = 0; b + 1 < d; b += 2) {
      j0(b, b + 1) = -1;
      j0(b + 1, b) = 1;
    }
    Eigen::MatrixXd op(dim, dim);
    for (int x = 0; x < dim; ++x) {
      const Eigen::MatrixXd img = units[x] * j0 + j0 * units[x];
      op.col(x) = Eigen::Map<const Eigen::VectorXd>(img.data(), dim);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
    lu.setThreshold(opt.tol);
    const Eigen::MatrixXd ker = lu.kernel();
    if (ker.cols() != 8 * n * n) {
      fail.note("tangent space dimension mismatch");
      continue;
    }
    Eigen::MatrixXd tgram(ker.cols(), ker.cols());
    for (int x = 0; x < ker.cols(); ++x) {
      const Eigen::MatrixXd mx =
          Eigen::Map<const Eigen::MatrixXd>(ker.col(x).data(), d, d);
      for (int y = x; y < ker.cols(); ++y) {
        const Eigen::MatrixXd my =
            Eigen::Map<const Eigen::MatrixXd>(ker.col(y).data(), d, d);
        tgram(x, y) = tgram(y, x) = pseudo_inner(mx, my);
      }
    }
    if (!(signature(tgram, opt.tol) ==
          Signature{4 * n * n - 2 * n, 4 * n * n + 2 * n, 0}))
      fail.note("tangent signature mismatch at n = " + std::to_string(n));
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 7: angle theorem for the balanced witness.
// ---------------------------------------------------------------------------
CheckResult criterion_angles(const CheckOptions& opt) {
  CheckResult res{"7 angle theorem (balanced witness, 20x20 grid)", false,
                  true, 0.0, ""};
  Failure fail;
  const Params<double> p{0.3, -0.2, 0.4};
  const Algebra<double> alg(p);
  const GroupTriple w = nondegenerate_witness(alg, 2, 1, opt.seed + 7);
  const Triangle tri = tau(w, 1e-7);
  const Triangle degenerate{w.I1, w.I2, w.I3};
  for (int vertex : {1, 2, 3}) {
    for (int it = 0; it < 20; ++it)
      for (int is = 0; is < 20; ++is) {
        const double t = it * 2.0 * M_PI / 20, s = is * 2.0 * M_PI / 20;
        const VertexAngleValue v = vertex_angle_form(tri, vertex, t, s);
        if (std::abs(v.closed_form - v.direct) > 1e-9)
          fail.note("closed form and direct trace disagree");
      }
    const VertexAngle got = vertex_angle(tri, vertex);
    const VertexAngle ref = vertex_angle(degenerate, vertex);
    if (!got.defined) fail.note("balanced angle not certified positive");
    if (std::abs(std::abs(got.cosine) - std::abs(ref.cosine)) > 1e-8)
      fail.note("extremal value differs from the spherical cosine law");
    if (std::abs(got.angle - ref.angle) > 1e-8)
      fail.note("angle differs from the spherical triangle's");
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 8: fiber theorem witnesses and dimension bookkeeping.
// ---------------------------------------------------------------------------
CheckResult criterion_fibers(const CheckOptions& opt) {
  CheckResult res{"8 fiber theorem (SO(3) triple, witnesses, dimensions)",
                  false, true, 0.0, ""};
  Failure fail;
  const Params<double> p{0.3, -0.2, 0.4};
  const Algebra<double> alg(p);
  {
    const SphericalFrame f = spherical_frame(alg, 2);
    const TwistorSphere s = sphere_from_pair(f.I1, f.I2);
    const GroupTriple g = so3_triple(s, f.I1, f.I2, f.I3);
    if (!in_GH(g.g1 * g.g2 * g.g3, f.I1, f.I2, 1e-8))
      fail.note("so3 product not in G_H");
    if (in_GH(g.g1, f.I1, f.I2, 1e-8) || in_GH(g.g2, f.I1, f.I2, 1e-8) ||
        in_GH(g.g3, f.I1, f.I2, 1e-8))
      fail.note("an so3 factor lies in G_H");
  }
  for (const auto& [n, k] :
       {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
    const GroupTriple w = nondegenerate_witness(alg, n, k, opt.seed + 8);
    const int d = 4 * n;
    if ((w.g1 * w.g2 * w.g3 - Eigen::MatrixXd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff() > 1e-8)
      fail.note("witness product is not the identity");
    const Triangle img = tau(w, 1e-7);
    if (degeneracy_test(img).degenerate)
      fail.note("witness triangle degenerate");
    const auto t = t_invariant(img);
    if (std::abs(t[0] - p.alpha) > 1e-8 || std::abs(t[1] - p.beta) > 1e-8 ||
        std::abs(t[2] - p.gamma) > 1e-8)
      fail.note("witness does not preserve the T-invariant");
  }
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      const FiberComponentReport r = component_report(alg, n, k, opt.tol);
      if (r.stabilizer_dim != 4 * k * k + 4 * (n - k) * (n - k))
        fail.note("stabilizer dimension mismatch");
      if (r.component_dim != 12 * n * n + 8 * n * k - 8 * k * k)
        fail.note("component dimension mismatch");
    }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 9: quadric realization in each class.
// ---------------------------------------------------------------------------
CheckResult criterion_quadrics(const CheckOptions& opt) {
  CheckResult res{"9 quadric realization (sphere/hyperboloid/cylinder)", false,
                  true, 0.0, ""};
  Failure fail;
  struct Case {
    Params<double> p;
    int n, k;
    QuadricKind kind;
  };
  const Case cases[] = {{{0.3, -0.2, 0.4}, 2, 1, QuadricKind::Sphere},
                        {{2, 2, 2}, 2, 2, QuadricKind::Hyperboloid},
                        {{0, 0, 1}, 2, 1, QuadricKind::Cylinder}};
  for (const auto& c : cases) {
    const Algebra<double> alg(c.p);
    const MatRep rep = build(alg, c.n, c.k, opt.tol);
    const Triangle tri = Triangle::checked(rep.J1, rep.J2, rep.J3);
    const QuadricSamples qs =
        quadric_classify_and_sample(tri, 30, opt.seed + 9, opt.tol);
    if (qs.kind != c.kind) fail.note("wrong quadric kind");
    if (qs.max_unit_residual > 1e-8)
      fail.note("sampled solution fails to square to -Id");
  }
  res.pass = fail.ok();
  res.detail = fail.str();
  return res;
}

}  // namespace

std::vector<CheckResult> run_acceptance(const CheckOptions& opt) {
  using Clock = std::chrono::steady_clock;
  std::vector<CheckResult> out;
  struct Entry {
    const char* name;
    bool tolerance_bound;
    CheckResult (*fn)(const CheckOptions&);
  };
  const Entry entries[] = {
      {"1 exact identity suite (1000 rational triples)", false,
       criterion_identities},
      {"2 signature table (six cases + boundaries)", true,
       criterion_signature_table},
      {"3 center dimension (rank-one locus vs generic)", false,
       criterion_center},
      {"4 representation counts and k recovery", true, criterion_rep_counts},
      {"5 explicit central matrices (all three classes)", true,
       criterion_explicit_matrices},
      {"6 pseudometric signatures (n = 1, 2)", true, criterion_pseudometric},
      {"7 angle theorem (balanced witness, 20x20 grid)", true,
       criterion_angles},
      {"8 fiber theorem (SO(3) triple, witnesses, dimensions)", true,
       criterion_fibers},
      {"9 quadric realization (sphere/hyperboloid/cylinder)", true,
       criterion_quadrics}};
  for (const Entry& entry : entries) {
    if (!opt.exact_mode && entry.fn == criterion_identities) continue;
    const auto start = Clock::now();
    CheckResult r;
    try {
      r = entry.fn(opt);
    } catch (const std::exception& e) {
      r.name = entry.name;
      r.tolerance_bound = entry.tolerance_bound;
      r.pass = false;
      r.detail = std::string("aborted: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

int acceptance_exit_code(const std::vector<CheckResult>& results,
                         const CheckOptions& opt) {
  bool any_fail = false, all_failures_tolerance_bound = true;
  for (const auto& r : results) {
    if (r.pass) continue;
    any_fail = true;
    if (!r.tolerance_bound) {
      all_failures_tolerance_bound = false;
      continue;
    }
    // Attribute the failure: a check that passes at the default tolerance
    // failed only through the configured one.
    CheckOptions defaults = opt;
    defaults.tol = 1e-9;
    bool recovered = false;
    for (const auto& rerun : run_acceptance(defaults))
      if (rerun.name == r.name && rerun.pass) recovered = true;
    if (!recovered) all_failures_tolerance_bound = false;
  }
  if (!any_fail) return 0;
  return all_failures_tolerance_bound ? 3 : 2;
}

}  // namespace biquat
