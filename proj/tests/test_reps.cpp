#include <doctest.h>

#include <random>

#include "biquat/reps.hpp"

using namespace biquat;

namespace {

const Params<double> kSpherical{0.0, 0.0, 0.0};
const Params<double> kSpherical2{0.3, -0.2, 0.4};
const Params<double> kHyperbolic{2.0, 2.0, 2.0};
const Params<double> kCylindrical{0.0, 0.0, 1.0};

Eigen::MatrixXd random_invertible(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
    if (std::abs(g.determinant()) > 1e-3) return g;
  }
}

MatRep conjugated(const MatRep& rep, const Eigen::MatrixXd& g) {
  const Eigen::MatrixXd gi = g.inverse();
  return MatRep{rep.n, g * rep.J1 * gi, g * rep.J2 * gi, g * rep.J3 * gi,
                rep.params};
}

}  // namespace

TEST_CASE("left ideals have the dimensions the classification demands") {
  SUBCASE("spherical: two 4-dimensional two-sided ideals") {
    const Algebra<double> alg(kSpherical2);
    const auto ce = alg.central_element();
    REQUIRE(ce.normalized.has_value());
    const auto one = basis_element<double>(kOne);
    CHECK(left_ideal_basis(alg, one + *ce.normalized).cols() == 4);
    CHECK(left_ideal_basis(alg, one - *ce.normalized).cols() == 4);
  }
  SUBCASE("hyperbolic: the sphere of ideals H(w + c)") {
    const Algebra<double> alg(kHyperbolic);
    const auto ce = alg.central_element();
    REQUIRE(ce.normalized.has_value());
    const QuaternionFrame f = quaternion_frame(alg);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 5; ++t) {
      Eigen::Vector3d w(gauss(rng), gauss(rng), gauss(rng));
      w.normalize();
      const Vec8<double> v =
          w(0) * f.i + w(1) * f.j + w(2) * f.k + *ce.normalized;
      CHECK(left_ideal_basis(alg, v).cols() == 4);
    }
  }
  SUBCASE("cylindrical: the ideal Hc equals Ker L_c") {
    const Algebra<double> alg(kCylindrical);
    const Eigen::MatrixXd basis = left_ideal_basis(alg, alg.central_raw());
    CHECK(basis.cols() == 4);
    const Eigen::MatrixXd lc = to_eigen(alg.left_mult(alg.central_raw()));
    CHECK((lc * basis).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(lc.fullPivLu().rank() == 4);
  }
}

TEST_CASE("spherical irreducibles: central element acts as +-Id") {
  for (const auto& p : {kSpherical, kSpherical2}) {
    const Algebra<double> alg(p);
    const MatRep r1 = irrep(alg, IrrepKind::rho1());
    const MatRep r2 = irrep(alg, IrrepKind::rho2());
    const double r = std::sqrt(-alg.det_q());
    const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
    CHECK((r1.image_central_raw() / r - id).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((r2.image_central_raw() / r + id).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r1.image_central_raw().trace() / r == doctest::Approx(4.0));
    CHECK(verify_relations(r1).ok);
    CHECK(verify_relations(r2).ok);
  }
}

TEST_CASE("hyperbolic L_c matrix matches the antisymmetric block form") {
  const Algebra<double> alg(kHyperbolic);
  SUBCASE("axis w = (1,0,0): first row (0,-1,0,0)") {
    const Eigen::Matrix4d m = hyperbolic_central_matrix(alg, {1, 0, 0});
    Eigen::Matrix4d expect;
    expect << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0;
    CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("random axes") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 25; ++t) {
      Eigen::Vector3d w(gauss(rng), gauss(rng), gauss(rng));
      w.normalize();
      const Eigen::Matrix4d m = hyperbolic_central_matrix(alg, w);
      const double x = w(0), y = w(1), z = w(2);
      Eigen::Matrix4d expect;
      expect << 0, -x, -y, -z,
                x, 0, z, -y,
                y, -z, 0, x,
                z, y, -x, 0;
      CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("rho0 is faithful and satisfies the relations") {
    const MatRep r0 = irrep(alg, IrrepKind::rho0({1, 0, 0}));
    CHECK(verify_relations(r0).ok);
    const RepClass cls = classify_rep(r0);
    CHECK(cls.faithful);
    CHECK(cls.k == 1);
  }
}

TEST_CASE("cylindrical: nilpotent center, Ker = Im, block normal form") {
  const Algebra<double> alg(kCylindrical);
  const MatRep r8 = irrep(alg, IrrepKind::rho8());
  const Eigen::MatrixXd c8 = r8.image_central_raw();
  CHECK((c8 * c8).cwiseAbs().maxCoeff() < 1e-12);
  // Ker L_c = Im L_c: rank 4 and c * c = 0 on an 8-dim space.
  CHECK(c8.fullPivLu().rank() == 4);

  const Eigen::MatrixXd m = cylindrical_central_matrix(alg);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(8, 8);
  expect.block(0, 4, 4, 4) = Eigen::Matrix4d::Identity();
  CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-9);

  const MatRep r4 = irrep(alg, IrrepKind::rho4());
  CHECK(verify_relations(r4).ok);
  CHECK((r4.image_central_raw()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("the regular representation decomposes as the theorem states") {
  SUBCASE("spherical: rho_reg = rho1 + rho2 via an explicit basis change") {
    const Algebra<double> alg(kSpherical2);
    const auto ce = alg.central_element();
    const auto one = basis_element<double>(kOne);
    const Eigen::MatrixXd u1 = left_ideal_basis(alg, one + *ce.normalized);
    const Eigen::MatrixXd u2 = left_ideal_basis(alg, one - *ce.normalized);
    Eigen::MatrixXd u(8, 8);
    u << u1, u2;
    REQUIRE(std::abs(u.determinant()) > 1e-9);
    for (int gen : {kE1, kE2, kE3}) {
      const Eigen::MatrixXd l = to_eigen(alg.left_mult(basis_element<double>(gen)));
      const Eigen::MatrixXd blocked = u.inverse() * l * u;
      CHECK(blocked.block(4, 0, 4, 4).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(blocked.block(0, 4, 4, 4).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("hyperbolic: rho_reg = rho0 + rho0 from two sphere points") {
    const Algebra<double> alg(kHyperbolic);
    const auto ce = alg.central_element();
    const QuaternionFrame f = quaternion_frame(alg);
    const Eigen::MatrixXd u1 = left_ideal_basis(alg, f.i + *ce.normalized);
    const Eigen::MatrixXd u2 = left_ideal_basis(alg, f.j + *ce.normalized);
    Eigen::MatrixXd u(8, 8);
    u << u1, u2;
    REQUIRE(std::abs(u.determinant()) > 1e-9);
    for (int gen : {kE1, kE2, kE3}) {
      const Eigen::MatrixXd l = to_eigen(alg.left_mult(basis_element<double>(gen)));
      const Eigen::MatrixXd blocked = u.inverse() * l * u;
      CHECK(blocked.block(4, 0, 4, 4).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(blocked.block(0, 4, 4, 4).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("cylindrical: rho4 is an invariant subspace with non-split quotient") {
    const Algebra<double> alg(kCylindrical);
    const Eigen::MatrixXd u1 = left_ideal_basis(alg, alg.central_raw());
    for (int gen : {kE1, kE2, kE3}) {
      const Eigen::MatrixXd l = to_eigen(alg.left_mult(basis_element<double>(gen)));
      // Invariance: L e_i maps the ideal into itself.
      const Eigen::MatrixXd proj =
          Eigen::MatrixXd::Identity(8, 8) - u1 * u1.transpose();
      CHECK((proj * l * u1).cwiseAbs().maxCoeff() < 1e-9);
    }
    // Non-split: Ker L_c = Im L_c leaves no invariant complement on which c
    // vanishes identically; equivalently rk rho_reg(c) = 4 != 0.
    CHECK(to_eigen(alg.left_mult(alg.central_raw())).fullPivLu().rank() == 4);
  }
}

TEST_CASE("build: traces, ranks and multiplicity recovery") {
  SUBCASE("spherical traces 4(2k - n)") {
    const Algebra<double> alg(kSpherical2);
    const double r = std::sqrt(-alg.det_q());
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= n; ++k) {
        const MatRep rep = build(alg, n, k);
        CHECK(verify_relations(rep).ok);
        CHECK(rep.image_central_raw().trace() / r ==
              doctest::Approx(4.0 * (2 * k - n)).epsilon(1e-9));
        const RepClass cls = classify_rep(rep);
        CHECK(cls.k == k);
        CHECK(cls.faithful == (k != 0 && k != n));
      }
    // n=2, k=1 balanced: trace 0; n=3, k=3: trace 12 and 4-dim image.
    CHECK(build(alg, 2, 1).image_central_raw().trace() / r ==
          doctest::Approx(0.0));
    const MatRep top = build(alg, 3, 3);
    CHECK(top.image_central_raw().trace() / r == doctest::Approx(12.0));
    const RepClass top_cls = classify_rep(top);
    CHECK(!top_cls.faithful);
    CHECK(top_cls.image_dim == 4);
  }
  SUBCASE("cylindrical ranks 4k") {
    const Algebra<double> alg(kCylindrical);
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; 2 * k <= n; ++k) {
        const MatRep rep = build(alg, n, k);
        CHECK(verify_relations(rep).ok);
        const RepClass cls = classify_rep(rep);
        CHECK(cls.kind == ClassKind::Cylindrical);
        CHECK(cls.k == k);
        CHECK(cls.faithful == (k > 0));
      }
    CHECK(classify_rep(build(alg, 2, 1)).k == 1);
  }
  SUBCASE("hyperbolic") {
    const Algebra<double> alg(kHyperbolic);
    for (int n = 1; n <= 3; ++n) {
      const MatRep rep = build(alg, n, n);
      CHECK(verify_relations(rep).ok);
      CHECK(classify_rep(rep).faithful);
    }
  }
  SUBCASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(build(Algebra<double>(kSpherical2), 2, 3), ValidationError);
    CHECK_THROWS_AS(build(Algebra<double>(kCylindrical), 2, 2), ValidationError);
    CHECK_THROWS_AS(build(Algebra<double>(kHyperbolic), 2, 1), ValidationError);
  }
  SUBCASE("multiplicity recovery is conjugation invariant") {
    std::mt19937_64 rng(23);
    const Algebra<double> alg(kSpherical2);
    const MatRep rep = conjugated(build(alg, 3, 2), random_invertible(12, rng));
    CHECK(verify_relations(rep, 1e-6).ok);
    CHECK(classify_rep(rep).k == 2);
  }
}

TEST_CASE("verify_relations flags violations and survives conjugation") {
  const Algebra<double> alg(kSpherical2);
  MatRep rep = build(alg, 2, 1);
  CHECK(verify_relations(rep).ok);
  MatRep broken = rep;
  broken.J3 += 0.1 * Eigen::MatrixXd::Identity(8, 8);
  const RelationReport report = verify_relations(broken);
  CHECK(!report.ok);
  CHECK(report.violated == "J3^2 = -Id");
  std::mt19937_64 rng(31);
  const MatRep conj = conjugated(rep, random_invertible(8, rng));
  CHECK(verify_relations(conj, 1e-6).ok);
}

TEST_CASE("intertwiner solver") {
  const Algebra<double> alg(kSpherical2);
  const MatRep rep = build(alg, 2, 1);
  SUBCASE("identical lists are accepted") {
    const auto t = intertwiner({rep.J1, rep.J2, rep.J3},
                               {rep.J1, rep.J2, rep.J3}, 42);
    REQUIRE(t.has_value());
    CHECK((*t * rep.J1 - rep.J1 * *t).cwiseAbs().maxCoeff() < 1e-8);
    // The identity lies in the solution space, so Id must be accepted too:
    // T = Id satisfies the equations; the solver only needs any invertible T.
  }
  SUBCASE("hyperbolic ideals with different sphere points are equivalent") {
    const Algebra<double> hyp(kHyperbolic);
    const MatRep a = irrep(hyp, IrrepKind::rho0({1, 0, 0}));
    const MatRep b = irrep(hyp, IrrepKind::rho0({0, 0.6, 0.8}));
    CHECK(equivalent(a, b, 7));
  }
  SUBCASE("distinct spherical multiplicities are inequivalent") {
    const MatRep k0 = build(alg, 2, 0);
    const MatRep k2 = build(alg, 2, 2);
    IntertwinerDiag diag;
    const auto t = intertwiner({k0.J1, k0.J2, k0.J3}, {k2.J1, k2.J2, k2.J3},
                               11, &diag);
    CHECK(!t.has_value());
    // Hom space between non-isomorphic isotypic sums is zero, so the
    // nullspace itself vanishes.
    CHECK(diag.nullspace_dim == 0);
  }
  SUBCASE("size mismatch rejected") {
    CHECK_THROWS_AS(intertwiner({rep.J1}, {Eigen::MatrixXd::Identity(4, 4)}, 1),
                    ValidationError);
  }
}

TEST_CASE("equivalence-class counts match the classification") {
  std::mt19937_64 rng(57);
  SUBCASE("spherical: n+1 classes, exactly two non-faithful") {
    const Algebra<double> alg(kSpherical2);
    for (int n = 1; n <= 3; ++n) {
      std::vector<MatRep> reps;
      for (int k = 0; k <= n; ++k) reps.push_back(build(alg, n, k));
      int nonfaithful = 0;
      for (int i = 0; i <= n; ++i) {
        if (!classify_rep(reps[i]).faithful) ++nonfaithful;
        for (int j = i + 1; j <= n; ++j)
          CHECK(!equivalent(reps[i], reps[j], 100 + i * 7 + j));
        // Same k, conjugated: equivalent.
        const MatRep twin = conjugated(reps[i], random_invertible(4 * n, rng));
        CHECK(equivalent(reps[i], twin, 200 + i));
      }
      CHECK(nonfaithful == 2);
    }
  }
  SUBCASE("cylindrical: floor(n/2)+1 classes, one non-faithful") {
    const Algebra<double> alg(kCylindrical);
    for (int n = 1; n <= 4; ++n) {
      std::vector<MatRep> reps;
      for (int k = 0; 2 * k <= n; ++k) reps.push_back(build(alg, n, k));
      CHECK(static_cast<int>(reps.size()) == n / 2 + 1);
      int nonfaithful = 0;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (!classify_rep(reps[i]).faithful) ++nonfaithful;
        for (std::size_t j = i + 1; j < reps.size(); ++j)
          CHECK(!equivalent(reps[i], reps[j], 300 + i * 5 + j));
      }
      CHECK(nonfaithful == 1);
    }
  }
  SUBCASE("hyperbolic: all relation-satisfying reps of equal n are equivalent") {
    const Algebra<double> alg(kHyperbolic);
    for (int n = 1; n <= 3; ++n) {
      // Assemble a second representation from different ideal points and a
      // random conjugation, then ask the solver for the intertwiner.
      const MatRep canonical = build(alg, n, n);
      std::vector<MatRep> pieces;
      const Eigen::Vector3d axes[3] = {{0, 1, 0}, {0, 0, 1}, {0.6, 0, 0.8}};
      for (int b = 0; b < n; ++b)
        pieces.push_back(irrep(alg, IrrepKind::rho0(axes[b % 3])));
      MatRep other;
      other.n = n;
      other.params = alg.params();
      const int d = 4 * n;
      other.J1 = Eigen::MatrixXd::Zero(d, d);
      other.J2 = Eigen::MatrixXd::Zero(d, d);
      other.J3 = Eigen::MatrixXd::Zero(d, d);
      for (int b = 0; b < n; ++b) {
        other.J1.block(4 * b, 4 * b, 4, 4) = pieces[b].J1;
        other.J2.block(4 * b, 4 * b, 4, 4) = pieces[b].J2;
        other.J3.block(4 * b, 4 * b, 4, 4) = pieces[b].J3;
      }
      const MatRep shuffled = conjugated(other, random_invertible(d, rng));
      CHECK(verify_relations(shuffled, 1e-6).ok);
      CHECK(equivalent(canonical, shuffled, 400 + n));
    }
  }
}

TEST_CASE("random cylindrical decompositions recover k from rank rho(c)") {
  const Algebra<double> alg(kCylindrical);
  std::mt19937_64 rng(71);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; 2 * k <= n; ++k) {
      const MatRep rep = conjugated(build(alg, n, k), random_invertible(4 * n, rng));
      const RepClass cls = classify_rep(rep);
      CHECK(cls.kind == ClassKind::Cylindrical);
      CHECK(cls.k == k);
    }
}

TEST_CASE("faithful constructor states the n = 1 impossibility") {
  CHECK_THROWS_AS(build_faithful(Algebra<double>(kSpherical2), 1),
                  ValidationError);
  CHECK_THROWS_AS(build_faithful(Algebra<double>(kCylindrical), 1),
                  ValidationError);
  CHECK(classify_rep(build_faithful(Algebra<double>(kHyperbolic), 1)).faithful);
  CHECK(classify_rep(build_faithful(Algebra<double>(kSpherical2), 2)).faithful);
  CHECK(classify_rep(build_faithful(Algebra<double>(kCylindrical), 2)).faithful);
}

TEST_CASE("incompatible irrep kinds are rejected") {
  CHECK_THROWS_AS(irrep(Algebra<double>(kSpherical2), IrrepKind::rho0({1, 0, 0})),
                  ValidationError);
  CHECK_THROWS_AS(irrep(Algebra<double>(kHyperbolic), IrrepKind::rho1()),
                  ValidationError);
  CHECK_THROWS_AS(irrep(Algebra<double>(kSpherical), IrrepKind::rho4()),
                  ValidationError);
}
