#include <doctest.h>

#include <random>

#include "biquat/hcore.hpp"

using namespace biquat;

namespace {

Params<Rational> rational_params(int an, int ad, int bn, int bd, int cn, int cd) {
  return {Rational(an, ad), Rational(bn, bd), Rational(cn, cd)};
}

// Seeded random rational in [-3, 3] with a small denominator.
Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 12);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(-3 * d, 3 * d);
  Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

Vec8<Rational> random_element(std::mt19937_64& rng) {
  Vec8<Rational> v;
  for (auto& x : v) x = random_rational(rng);
  return v;
}

Vec8<Rational> scalar_multiple(const Rational& c) {
  Vec8<Rational> v = zero_vec8<Rational>();
  v[kOne] = c;
  return v;
}

}  // namespace

TEST_CASE("structure table reproduces the defining relations") {
  const auto p = rational_params(1, 2, -1, 3, 2, 1);
  const Algebra<Rational> alg(p);
  // e_i^2 = -1
  for (int i = kE1; i <= kE3; ++i)
    CHECK(alg.basis_product(i, i) == scalar_multiple(Rational(-1)));
  // e1e2 + e2e1 = 2 alpha, and cyclic
  CHECK(alg.basis_product(kE1, kE2) + alg.basis_product(kE2, kE1) ==
        scalar_multiple(Rational(2) * p.alpha));
  CHECK(alg.basis_product(kE2, kE3) + alg.basis_product(kE3, kE2) ==
        scalar_multiple(Rational(2) * p.beta));
  CHECK(alg.basis_product(kE3, kE1) + alg.basis_product(kE1, kE3) ==
        scalar_multiple(Rational(2) * p.gamma));
}

TEST_CASE("normal ordering of generator products") {
  const auto p = rational_params(1, 2, -1, 3, 2, 1);
  const Algebra<Rational> alg(p);
  // e1 * e2 is already a basis monomial.
  Vec8<Rational> expect = zero_vec8<Rational>();
  expect[kE12] = 1;
  CHECK(alg.basis_product(kE1, kE2) == expect);
  // e2 * e1 = -e1e2 + 2 alpha.
  expect = zero_vec8<Rational>();
  expect[kE12] = -1;
  expect[kOne] = Rational(2) * p.alpha;
  CHECK(alg.basis_product(kE2, kE1) == expect);
}

TEST_CASE("square of the top monomial matches the stated expansion") {
  // (e1e2e3)^2 = 1 - 2a e1e2 - 2b e2e3 - (2g + 4ab) e1e3, with
  // e1e3 = 2g - e3e1 in the stored basis.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    const Rational a = p.alpha, b = p.beta, g = p.gamma;
    Vec8<Rational> expect = zero_vec8<Rational>();
    const Rational e13 = Rational(2) * g + Rational(4) * a * b;
    expect[kOne] = 1 - e13 * Rational(2) * g;
    expect[kE12] = Rational(-2) * a;
    expect[kE23] = Rational(-2) * b;
    expect[kE31] = e13;
    CHECK(alg.basis_product(kE123, kE123) == expect);
  }
  // At the quaternionic point the square is exactly 1.
  const Algebra<Rational> alg0(rational_params(0, 1, 0, 1, 0, 1));
  CHECK(alg0.basis_product(kE123, kE123) == scalar_multiple(Rational(1)));
}

TEST_CASE("top-monomial products against the worked expansion") {
  // e1e2e3 * e2e3 = -e1 + 2b e1e2e3 and e1e2e3 * e3e1 = -2a e1 - e2.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    Vec8<Rational> expect = zero_vec8<Rational>();
    expect[kE1] = -1;
    expect[kE123] = Rational(2) * p.beta;
    CHECK(alg.basis_product(kE123, kE23) == expect);
    expect = zero_vec8<Rational>();
    expect[kE1] = Rational(-2) * p.alpha;
    expect[kE2] = -1;
    CHECK(alg.basis_product(kE123, kE31) == expect);
    expect = zero_vec8<Rational>();
    expect[kE12] = -1;
    CHECK(alg.basis_product(kE123, kE3) == expect);
  }
}

TEST_CASE("associativity on all basis triples, exact") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
          const auto lhs =
              alg.multiply(alg.basis_product(i, j), basis_element<Rational>(k));
          const auto rhs =
              alg.multiply(basis_element<Rational>(i), alg.basis_product(j, k));
          REQUIRE(lhs == rhs);
        }
  }
}

TEST_CASE("unit laws and bilinearity") {
  std::mt19937_64 rng(33);
  const Params<Rational> p{random_rational(rng), random_rational(rng),
                           random_rational(rng)};
  const Algebra<Rational> alg(p);
  const auto one = basis_element<Rational>(kOne);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_element(rng);
    CHECK(alg.multiply(one, x) == x);
    CHECK(alg.multiply(x, one) == x);
    const auto y = random_element(rng);
    const auto z = random_element(rng);
    const Rational c = random_rational(rng);
    CHECK(alg.multiply(x + c * y, z) ==
          alg.multiply(x, z) + c * alg.multiply(y, z));
    CHECK(alg.multiply(z, x + c * y) ==
          alg.multiply(z, x) + c * alg.multiply(z, y));
    // Associativity on random elements.
    CHECK(alg.multiply(alg.multiply(x, y), z) ==
          alg.multiply(x, alg.multiply(y, z)));
  }
}

TEST_CASE("left regular representation is a homomorphism; right one commutes") {
  std::mt19937_64 rng(44);
  const Params<Rational> p{random_rational(rng), random_rational(rng),
                           random_rational(rng)};
  const Algebra<Rational> alg(p);
  const auto a = random_element(rng);
  const auto b = random_element(rng);
  CHECK(detail::mat_mul8(alg.left_mult(a), alg.left_mult(b)) ==
        alg.left_mult(alg.multiply(a, b)));
  // Right multiplication is an antihomomorphism and commutes with left.
  CHECK(detail::mat_mul8(alg.right_mult(a), alg.right_mult(b)) ==
        alg.right_mult(alg.multiply(b, a)));
  CHECK(detail::mat_mul8(alg.left_mult(a), alg.right_mult(b)) ==
        detail::mat_mul8(alg.right_mult(b), alg.left_mult(a)));
  // L_1 = Id.
  const auto id = alg.left_mult(basis_element<Rational>(kOne));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(id[i][j] == (i == j ? Rational(1) : Rational(0)));
}

TEST_CASE("traces of generators and of the top monomial vanish") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    for (int i : {kE1, kE2, kE3, kE123}) {
      CHECK(alg.trace_left_mult(basis_element<Rational>(i)) == 0);
      // Zero diagonal, not just zero trace, for the top monomial.
      if (i == kE123) {
        const auto l = alg.left_mult(basis_element<Rational>(i));
        for (int dgn = 0; dgn < 8; ++dgn) CHECK(l[dgn][dgn] == 0);
      }
    }
  }
}

TEST_CASE("trace form restrictions: printed Q and Qtilde matrices") {
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    const auto q = alg.trace_form();
    // q(1,1) = 1.
    CHECK(q[kOne][kOne] == 1);
    // Restriction to V: diagonal -1, off-diagonal alpha, beta, gamma.
    CHECK(q[kE1][kE1] == -1);
    CHECK(q[kE2][kE2] == -1);
    CHECK(q[kE3][kE3] == -1);
    CHECK(q[kE1][kE2] == p.alpha);
    CHECK(q[kE2][kE3] == p.beta);
    CHECK(q[kE3][kE1] == p.gamma);
    // Restriction to Vtilde equals minus the adjugate of Q.
    const auto f = alg.vtilde_basis();
    const Rational a = p.alpha, b = p.beta, g = p.gamma;
    const Rational expected[3][3] = {
        {b * b - 1, -(b * g + a), -(a * b + g)},
        {-(b * g + a), g * g - 1, -(a * g + b)},
        {-(a * b + g), -(a * g + b), a * a - 1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(alg.trace_form_value(f[i], f[j]) == expected[i][j]);
  }
}

TEST_CASE("central element: commutes, squares to -det Q, epsilon sign") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    const auto ce = alg.central_element();
    for (int i = kE1; i <= kE3; ++i) {
      const auto e = basis_element<Rational>(i);
      CHECK(alg.multiply(ce.raw, e) == alg.multiply(e, ce.raw));
    }
    CHECK(alg.multiply(ce.raw, ce.raw) == scalar_multiple(-alg.det_q()));
    CHECK(ce.epsilon == -sgn(alg.det_q()));
    // c commutes with arbitrary elements too.
    const auto x = random_element(rng);
    CHECK(alg.multiply(ce.raw, x) == alg.multiply(x, ce.raw));
  }

  SUBCASE("pinned parameter triples") {
    // (0,0,0): raw = -e1e2e3, raw^2 = 1, eps = 1 (det Q = -1).
    const Algebra<Rational> a0(rational_params(0, 1, 0, 1, 0, 1));
    auto ce = a0.central_element();
    Vec8<Rational> expect = zero_vec8<Rational>();
    expect[kE123] = -1;
    CHECK(ce.raw == expect);
    CHECK(a0.multiply(ce.raw, ce.raw) == scalar_multiple(Rational(1)));
    CHECK(ce.epsilon == 1);
    REQUIRE(ce.normalized.has_value());  // sqrt(1) is rational
    CHECK(*ce.normalized == ce.raw);

    // (1,1,-1): det Q = 1+1+1-2-1 = 0, raw^2 = 0, eps = 0.
    const Algebra<Rational> a1(rational_params(1, 1, 1, 1, -1, 1));
    ce = a1.central_element();
    CHECK(a1.det_q() == 0);
    CHECK(a1.multiply(ce.raw, ce.raw) == zero_vec8<Rational>());
    CHECK(ce.epsilon == 0);

    // (2,2,2): det Q = 27, raw^2 = -27, eps = -1.
    const Algebra<Rational> a2(rational_params(2, 1, 2, 1, 2, 1));
    ce = a2.central_element();
    CHECK(a2.det_q() == 27);
    CHECK(a2.multiply(ce.raw, ce.raw) == scalar_multiple(Rational(-27)));
    CHECK(ce.epsilon == -1);
  }
}

TEST_CASE("center dimension and the rank-one extra generator") {
  const auto check_center = [](const Params<Rational>& p, std::size_t dim) {
    const Algebra<Rational> alg(p);
    const auto basis = alg.center_basis();
    REQUIRE(basis.size() == dim);
    for (const auto& z : basis)
      for (int i = kE1; i <= kE3; ++i) {
        const auto e = basis_element<Rational>(i);
        CHECK(alg.multiply(z, e) == alg.multiply(e, z));
      }
  };
  check_center(rational_params(0, 1, 0, 1, 0, 1), 2);
  check_center(rational_params(1, 2, 0, 1, 0, 1), 2);
  check_center(rational_params(1, 1, 1, 1, -1, 1), 3);

  // The rank-one case contains z = -g(a - e1e2) + (b - e2e3) - a(g - e3e1):
  // z must land in the span of the computed center basis.
  const Params<Rational> p = rational_params(1, 1, 1, 1, -1, 1);
  const Algebra<Rational> alg(p);
  const auto f = alg.vtilde_basis();
  const Vec8<Rational> z =
      (-p.gamma) * f[2] + f[0] + (-p.alpha) * f[1];
  for (int i = kE1; i <= kE3; ++i) {
    const auto e = basis_element<Rational>(i);
    CHECK(alg.multiply(z, e) == alg.multiply(e, z));
  }
  // (0,0,0): center spanned by {1, e1e2e3}.
  const Algebra<Rational> a0(rational_params(0, 1, 0, 1, 0, 1));
  for (const auto& zc : a0.center_basis()) {
    CHECK(zc[kE1] == 0);
    CHECK(zc[kE2] == 0);
    CHECK(zc[kE3] == 0);
    CHECK(zc[kE12] == 0);
    CHECK(zc[kE23] == 0);
    CHECK(zc[kE31] == 0);
  }
}

TEST_CASE("canonical decomposition: projectors, orthogonality, inclusions") {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 12; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    const auto d = alg.canonical_decomposition();
    CHECK(d.span_dim == 8);
    const Mat8<Rational> projs[4] = {d.proj_one, d.proj_v, d.proj_vtilde,
                                     d.proj_c};
    // Projectors sum to the identity and are mutually annihilating.
    Mat8<Rational> sum;
    for (auto& row : sum) row.fill(Rational(0));
    for (const auto& pr : projs)
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) sum[i][j] += pr[i][j];
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        CHECK(sum[i][j] == (i == j ? Rational(1) : Rational(0)));
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        const auto prod = detail::mat_mul8(projs[x], projs[y]);
        for (int i = 0; i < 8; ++i)
          for (int j = 0; j < 8; ++j)
            CHECK(prod[i][j] == (x == y ? projs[x][i][j] : Rational(0)));
      }
    // Images are q-orthogonal: q(P_x u, P_y v) = 0 for x != y.
    for (int trial2 = 0; trial2 < 3; ++trial2) {
      const auto u = random_element(rng);
      const auto v = random_element(rng);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          if (x == y) continue;
          CHECK(alg.trace_form_value(apply8(projs[x], u), apply8(projs[y], v)) ==
                0);
        }
    }
    // cV in Vtilde and cVtilde in V.
    const auto c = alg.central_raw();
    for (int i = kE1; i <= kE3; ++i) {
      const auto ce = alg.multiply(c, basis_element<Rational>(i));
      CHECK(apply8(d.proj_vtilde, ce) == ce);
    }
    for (const auto& f : alg.vtilde_basis()) {
      const auto cf = alg.multiply(c, f);
      CHECK(apply8(d.proj_v, cf) == cf);
    }
    // Square map sends V + Vtilde into <1, c>.
    for (int trial2 = 0; trial2 < 4; ++trial2) {
      auto v = random_element(rng);
      v = apply8(d.proj_v, v) + apply8(d.proj_vtilde, v);
      const auto sq = alg.multiply(v, v);
      const auto in_plane = apply8(d.proj_one, sq) + apply8(d.proj_c, sq);
      CHECK(sq == in_plane);
    }
  }
}

TEST_CASE("decomposition check report") {
  std::mt19937_64 rng(144);
  for (int trial = 0; trial < 8; ++trial) {
    const Params<Rational> p{random_rational(rng), random_rational(rng),
                             random_rational(rng)};
    const Algebra<Rational> alg(p);
    const auto checks =
        check_decomposition(alg, alg.canonical_decomposition(), 7);
    CHECK(checks.all(sgn(alg.det_q()) != 0));
  }
  // Float backend at a degenerate triple.
  const Algebra<double> alg({0.0, 0.0, 1.0});
  const auto checks = check_decomposition(alg, alg.canonical_decomposition(), 7);
  CHECK(checks.q_orthogonal);
  CHECK(checks.cv_in_vtilde);
  CHECK(checks.cvtilde_in_v);
  CHECK(checks.square_map_in_center_plane);
}

TEST_CASE("squares on V and Vtilde agree with the trace form") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    // Random v in V.
    Vec8<Rational> v = zero_vec8<Rational>();
    for (int i = kE1; i <= kE3; ++i) v[i] = random_rational(rng);
    CHECK(alg.multiply(v, v) == scalar_multiple(alg.trace_form_value(v, v)));
    // Random w in Vtilde.
    const auto f = alg.vtilde_basis();
    Vec8<Rational> w = random_rational(rng) * f[0];
    w = w + random_rational(rng) * f[1];
    w = w + random_rational(rng) * f[2];
    CHECK(alg.multiply(w, w) == scalar_multiple(alg.trace_form_value(w, w)));
  }
}

TEST_CASE("symmetric products across V and Vtilde produce the center line") {
  std::mt19937_64 rng(111);
  const Params<Rational> p{random_rational(rng), random_rational(rng),
                           random_rational(rng)};
  const Algebra<Rational> alg(p);
  const auto f = alg.vtilde_basis();
  const auto e1 = basis_element<Rational>(kE1);
  // e1 (b - e2e3) + (b - e2e3) e1 = 2c.
  const auto sym = alg.multiply(e1, f[0]) + alg.multiply(f[0], e1);
  CHECK(sym == Rational(2) * alg.central_raw());
  // The pairs {a - e1e2, g - e3e1} anticommute with e1 (and cyclically).
  const auto anti = [&](const Vec8<Rational>& x, const Vec8<Rational>& y) {
    return alg.multiply(x, y) + alg.multiply(y, x) == zero_vec8<Rational>();
  };
  CHECK(anti(basis_element<Rational>(kE1), f[2]));
  CHECK(anti(basis_element<Rational>(kE1), f[1]));
  CHECK(anti(basis_element<Rational>(kE2), f[2]));
  CHECK(anti(basis_element<Rational>(kE2), f[0]));
  CHECK(anti(basis_element<Rational>(kE3), f[0]));
  CHECK(anti(basis_element<Rational>(kE3), f[1]));
}

TEST_CASE("products of c with the basis vectors, entrywise") {
  // c e1 = -(b - e2e3) + a(g - e3e1) + g(a - e1e2) and
  // c (b - e2e3) = (b^2 - 1) e1 - (bg + a) e2 - (ab + g) e3.
  std::mt19937_64 rng(155);
  for (int trial = 0; trial < 15; ++trial) {
    const Params<Rational> p{random_rational(rng), random_rational(rng),
                             random_rational(rng)};
    const Algebra<Rational> alg(p);
    const auto c = alg.central_raw();
    const auto f = alg.vtilde_basis();
    const Rational a = p.alpha, b = p.beta, g = p.gamma;
    const Vec8<Rational> ce1_expect =
        Rational(-1) * f[0] + a * f[1] + g * f[2];
    CHECK(alg.multiply(c, basis_element<Rational>(kE1)) == ce1_expect);
    Vec8<Rational> cf_expect = zero_vec8<Rational>();
    cf_expect[kE1] = b * b - 1;
    cf_expect[kE2] = -(b * g + a);
    cf_expect[kE3] = -(a * b + g);
    CHECK(alg.multiply(c, f[0]) == cf_expect);
  }
}

TEST_CASE("left and right regular representations give the same trace form") {
  std::mt19937_64 rng(166);
  for (int trial = 0; trial < 10; ++trial) {
    const Params<Rational> p{random_rational(rng), random_rational(rng),
                             random_rational(rng)};
    const Algebra<Rational> alg(p);
    const auto x = random_element(rng);
    const auto y = random_element(rng);
    const auto xy = alg.multiply(x, y);
    // Tr of the right regular representation of xy.
    const auto r = alg.right_mult(xy);
    Rational tr(0);
    for (int i = 0; i < 8; ++i) tr += r[i][i];
    CHECK(tr == alg.trace_left_mult(xy));
  }
}

TEST_CASE("equality cV = Vtilde when det Q is nonzero") {
  std::mt19937_64 rng(122);
  int nondegenerate_seen = 0;
  while (nondegenerate_seen < 10) {
    Params<Rational> p{random_rational(rng), random_rational(rng),
                       random_rational(rng)};
    const Algebra<Rational> alg(p);
    if (sgn(alg.det_q()) == 0) continue;
    ++nondegenerate_seen;
    // c acts invertibly between V and Vtilde: c(c v) = -detQ v.
    const auto c = alg.central_raw();
    for (int i = kE1; i <= kE3; ++i) {
      const auto v = basis_element<Rational>(i);
      CHECK(alg.multiply(c, alg.multiply(c, v)) == (-alg.det_q()) * v);
    }
  }
}

TEST_CASE("float backend is associative to 1e-12 on all basis triples") {
  std::mt19937_64 rng(177);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Params<double> p{unif(rng), unif(rng), unif(rng)};
    const Algebra<double> alg(p);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
          const auto lhs =
              alg.multiply(alg.basis_product(i, j), basis_element<double>(k));
          const auto rhs =
              alg.multiply(basis_element<double>(i), alg.basis_product(j, k));
          REQUIRE(is_zero(lhs - rhs, 1e-12));
        }
  }
}

TEST_CASE("float backend agrees with the exact one") {
  std::mt19937_64 rng(133);
  for (int trial = 0; trial < 10; ++trial) {
    const Params<Rational> pr{random_rational(rng), random_rational(rng),
                              random_rational(rng)};
    const Params<double> pd{pr.alpha.get_d(), pr.beta.get_d(),
                            pr.gamma.get_d()};
    const Algebra<Rational> ar(pr);
    const Algebra<double> ad(pd);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int m = 0; m < 8; ++m)
          CHECK(ad.basis_product(i, j)[m] ==
                doctest::Approx(ar.basis_product(i, j)[m].get_d())
                    .epsilon(1e-12));
    CHECK(ar.center_basis().size() == ad.center_basis(1e-9).size());
  }
}
