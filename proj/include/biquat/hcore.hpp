// The 8-dimensional real algebra on three imaginary units e1,e2,e3 with
// prescribed anticommutators
//
//   e_i^2 = -1,  e1e2+e2e1 = 2a,  e2e3+e3e2 = 2b,  e3e1+e1e3 = 2g,
//
// modeled exactly via normal-order rewriting in the monomial basis
//
//   1, e1, e2, e3, e1e2, e2e3, e3e1, e1e2e3.
//
// This basis order is a contract shared with the serialization layer and the
// representation-theoretic code; do not permute it.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <type_traits>
#include <vector>

#include "biquat/scalar.hpp"

namespace biquat {

enum BasisIndex : int {
  kOne = 0,
  kE1 = 1,
  kE2 = 2,
  kE3 = 3,
  kE12 = 4,
  kE23 = 5,
  kE31 = 6,
  kE123 = 7,
};

template <class S>
struct Params {
  S alpha{}, beta{}, gamma{};
};

template <class S>
using Vec8 = std::array<S, 8>;

template <class S>
using Mat8 = std::array<std::array<S, 8>, 8>;  // m[row][col]

template <class S>
Vec8<S> zero_vec8() {
  Vec8<S> v;
  v.fill(ScalarTraits<S>::zero());
  return v;
}

template <class S>
Vec8<S> basis_element(int i) {
  Vec8<S> v = zero_vec8<S>();
  v[i] = ScalarTraits<S>::one();
  return v;
}

template <class S>
Vec8<S> operator+(const Vec8<S>& a, const Vec8<S>& b) {
  Vec8<S> r;
  for (int i = 0; i < 8; ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
Vec8<S> operator-(const Vec8<S>& a, const Vec8<S>& b) {
  Vec8<S> r;
  for (int i = 0; i < 8; ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
Vec8<S> operator*(const std::type_identity_t<S>& c, const Vec8<S>& a) {
  Vec8<S> r;
  for (int i = 0; i < 8; ++i) r[i] = c * a[i];
  return r;
}

template <class S>
bool is_zero(const Vec8<S>& a, double tol = 0.0) {
  for (int i = 0; i < 8; ++i)
    if (!ScalarTraits<S>::is_zero(a[i], tol)) return false;
  return true;
}

// Result of central_element(): the raw element b e1 - g e2 + a e3 - e1e2e3,
// its normalization when one exists in the scalar field, and the sign
// epsilon of its square after normalization (c^2 = -det Q before scaling).
template <class S>
struct CentralElement {
  Vec8<S> raw;
  std::optional<Vec8<S>> normalized;
  int epsilon = 0;  // sign of -det Q
  S det_q{};
};

template <class S>
struct CanonicalDecomposition {
  Mat8<S> proj_one, proj_v, proj_vtilde, proj_c;
  int span_dim = 0;  // dimension of R*1 + V + Vtilde + R*c (always 8)
};

// The subspace relations carried by the decomposition: q-orthogonality of
// the four summands, c V in Vtilde and c Vtilde in V (equalities when
// det Q != 0), and the square map sending V + Vtilde into <1, c>.
struct DecompositionChecks {
  bool q_orthogonal = false;
  bool cv_in_vtilde = false;
  bool cvtilde_in_v = false;
  bool equalities_hold = false;  // meaningful only when det Q != 0
  bool square_map_in_center_plane = false;

  bool all(bool det_q_nonzero) const {
    return q_orthogonal && cv_in_vtilde && cvtilde_in_v &&
           square_map_in_center_plane && (!det_q_nonzero || equalities_hold);
  }
};

template <class S>
class Algebra {
 public:
  explicit Algebra(Params<S> p) : params_(std::move(p)) {
    if constexpr (ScalarTraits<S>::exact) {
      params_.alpha.canonicalize();
      params_.beta.canonicalize();
      params_.gamma.canonicalize();
    }
    build_table();
  }

  const Params<S>& params() const { return params_; }

  // Product of the i-th and j-th basis monomials, as coordinates.
  const Vec8<S>& basis_product(int i, int j) const { return table_[i][j]; }

  Vec8<S> multiply(const Vec8<S>& a, const Vec8<S>& b) const {
    Vec8<S> out = zero_vec8<S>();
    for (int i = 0; i < 8; ++i) {
      if (ScalarTraits<S>::is_zero(a[i], 0.0)) continue;
      for (int j = 0; j < 8; ++j) {
        if (ScalarTraits<S>::is_zero(b[j], 0.0)) continue;
        const S c = a[i] * b[j];
        const Vec8<S>& t = table_[i][j];
        for (int m = 0; m < 8; ++m) out[m] = out[m] + c * t[m];
      }
    }
    return out;
  }

  // Matrix of left multiplication L_a in the monomial basis. Left
  // multiplication is the regular-representation contract everywhere;
  // right_mult exists for commutator operators and as a test oracle.
  Mat8<S> left_mult(const Vec8<S>& a) const {
    Mat8<S> m;
    for (int j = 0; j < 8; ++j) {
      Vec8<S> col = multiply(a, basis_element<S>(j));
      for (int r = 0; r < 8; ++r) m[r][j] = col[r];
    }
    return m;
  }

  Mat8<S> right_mult(const Vec8<S>& a) const {
    Mat8<S> m;
    for (int j = 0; j < 8; ++j) {
      Vec8<S> col = multiply(basis_element<S>(j), a);
      for (int r = 0; r < 8; ++r) m[r][j] = col[r];
    }
    return m;
  }

  S trace_left_mult(const Vec8<S>& a) const {
    S t = ScalarTraits<S>::zero();
    for (int i = 0; i < 8; ++i) t = t + a[i] * basis_trace_[i];
    return t;
  }

  // q(u,v) = Tr(L_{uv}) / 8, as the Gram matrix over the monomial basis.
  Mat8<S> trace_form() const {
    Mat8<S> q;
    const S eighth = ScalarTraits<S>::one() / S(8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) q[i][j] = eighth * trace_left_mult(table_[i][j]);
    return q;
  }

  S trace_form_value(const Vec8<S>& u, const Vec8<S>& v) const {
    return trace_left_mult(multiply(u, v)) / S(8);
  }

  S det_q() const {
    const S &a = params_.alpha, &b = params_.beta, &g = params_.gamma;
    return a * a + b * b + g * g + S(2) * a * b * g - ScalarTraits<S>::one();
  }

  Vec8<S> central_raw() const {
    Vec8<S> c = zero_vec8<S>();
    c[kE1] = params_.beta;
    c[kE2] = -params_.gamma;
    c[kE3] = params_.alpha;
    c[kE123] = -ScalarTraits<S>::one();
    return c;
  }

  CentralElement<S> central_element(double tol = 1e-9) const;

  // Basis of {z : z e_i = e_i z, i=1,2,3}, the joint kernel of the three
  // commutator operators on R^8.
  std::vector<Vec8<S>> center_basis(double tol = 1e-9) const;

  // Basis vectors of Vtilde in the order used for the printed Qtilde:
  // b - e2e3, g - e3e1, a - e1e2.
  std::array<Vec8<S>, 3> vtilde_basis() const {
    std::array<Vec8<S>, 3> f = {zero_vec8<S>(), zero_vec8<S>(), zero_vec8<S>()};
    f[0][kOne] = params_.beta;
    f[0][kE23] = -ScalarTraits<S>::one();
    f[1][kOne] = params_.gamma;
    f[1][kE31] = -ScalarTraits<S>::one();
    f[2][kOne] = params_.alpha;
    f[2][kE12] = -ScalarTraits<S>::one();
    return f;
  }

  CanonicalDecomposition<S> canonical_decomposition(double tol = 1e-9) const;

 private:
  void build_table();

  Params<S> params_;
  Mat8<Vec8<S>> table_;  // table_[i][j] = coords of basis_i * basis_j
  Vec8<S> basis_trace_;  // Tr L_{basis_i}
};

namespace detail {

// Anticommutator scalar for the unordered generator pair {lo, hi}, lo < hi.
template <class S>
S anti_scalar(const Params<S>& p, int lo, int hi) {
  if (lo == 1 && hi == 2) return p.alpha;
  if (lo == 2 && hi == 3) return p.beta;
  return p.gamma;  // {1,3}
}

// Rewrites a word in the generators into monomial-basis coordinates by the
// rules e_i e_i -> -1 and e_j e_i -> -e_i e_j + 2*anti (j > i), then maps
// the strictly increasing normal forms onto the stored basis. The only
// normal form that is not itself a stored monomial is e1e3 = 2g - e3e1.
template <class S>
void reduce_word(std::vector<int>& w, const S& coeff, const Params<S>& p,
                 Vec8<S>& out) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1]) {
      std::vector<int> rest;
      rest.reserve(w.size() - 2);
      rest.insert(rest.end(), w.begin(), w.begin() + i);
      rest.insert(rest.end(), w.begin() + i + 2, w.end());
      S c = -coeff;
      reduce_word(rest, c, p, out);
      return;
    }
    if (w[i] > w[i + 1]) {
      const S s = anti_scalar(p, w[i + 1], w[i]);
      std::vector<int> swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      S c1 = -coeff;
      reduce_word(swapped, c1, p, out);
      std::vector<int> dropped;
      dropped.reserve(w.size() - 2);
      dropped.insert(dropped.end(), w.begin(), w.begin() + i);
      dropped.insert(dropped.end(), w.begin() + i + 2, w.end());
      S c2 = S(2) * s * coeff;
      reduce_word(dropped, c2, p, out);
      return;
    }
  }
  // Strictly increasing word.
  if (w.empty()) {
    out[kOne] = out[kOne] + coeff;
  } else if (w.size() == 1) {
    out[w[0]] = out[w[0]] + coeff;
  } else if (w.size() == 2) {
    if (w[0] == 1 && w[1] == 2) {
      out[kE12] = out[kE12] + coeff;
    } else if (w[0] == 2 && w[1] == 3) {
      out[kE23] = out[kE23] + coeff;
    } else {  // e1e3 = 2g*1 - e3e1
      out[kOne] = out[kOne] + S(2) * p.gamma * coeff;
      out[kE31] = out[kE31] - coeff;
    }
  } else {
    out[kE123] = out[kE123] + coeff;
  }
}

inline const std::vector<int>& basis_word(int i) {
  static const std::vector<int> words[8] = {{},  {1},    {2},    {3},
                                            {1, 2}, {2, 3}, {3, 1}, {1, 2, 3}};
  return words[i];
}

}  // namespace detail

template <class S>
void Algebra<S>::build_table() {
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      std::vector<int> w = detail::basis_word(i);
      const std::vector<int>& wj = detail::basis_word(j);
      w.insert(w.end(), wj.begin(), wj.end());
      Vec8<S> out = zero_vec8<S>();
      detail::reduce_word(w, ScalarTraits<S>::one(), params_, out);
      table_[i][j] = out;
    }
  }
  for (int i = 0; i < 8; ++i) {
    S t = ScalarTraits<S>::zero();
    for (int j = 0; j < 8; ++j) t = t + table_[i][j][j];
    basis_trace_[i] = t;
  }
}

template <class S>
CentralElement<S> Algebra<S>::central_element(double tol) const {
  CentralElement<S> ce;
  ce.raw = central_raw();
  ce.det_q = det_q();
  ce.epsilon = -sign_of(ce.det_q, ScalarTraits<S>::exact ? 0.0 : tol);
  if (ce.epsilon == 0) {
    ce.normalized = ce.raw;  // c^2 = 0 already; no scaling applies
    return ce;
  }
  if constexpr (ScalarTraits<S>::exact) {
    const Rational mag = ce.det_q < 0 ? -ce.det_q : ce.det_q;
    if (auto root = exact_sqrt(mag)) {
      const Rational inv = Rational(1) / *root;
      ce.normalized = inv * ce.raw;
    }
  } else {
    const double scale = 1.0 / std::sqrt(std::abs(ce.det_q));
    ce.normalized = scale * ce.raw;
  }
  return ce;
}

namespace detail {

// Gauss-Jordan kernel of an m x n matrix; exact pivoting for rationals,
// scaled partial pivoting for doubles.
template <class S>
std::vector<std::array<S, 8>> kernel8(std::vector<Vec8<S>> rows, double tol) {
  const int n = 8;
  const int m = static_cast<int>(rows.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int best = -1;
    if constexpr (ScalarTraits<S>::exact) {
      for (int r = rank; r < m; ++r)
        if (sgn(rows[r][col]) != 0) {
          best = r;
          break;
        }
    } else {
      double bestval = tol;
      for (int r = rank; r < m; ++r) {
        double v = std::abs(ScalarTraits<S>::to_double(rows[r][col]));
        if (v > bestval) {
          bestval = v;
          best = r;
        }
      }
    }
    if (best < 0) continue;
    std::swap(rows[rank], rows[best]);
    const S inv = ScalarTraits<S>::one() / rows[rank][col];
    for (int c = 0; c < n; ++c) rows[rank][c] = inv * rows[rank][c];
    for (int r = 0; r < m; ++r) {
      if (r == rank) continue;
      const S f = rows[r][col];
      if (ScalarTraits<S>::is_zero(f, 0.0)) continue;
      for (int c = 0; c < n; ++c) rows[r][c] = rows[r][c] - f * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<std::array<S, 8>> basis;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec8<S> v = zero_vec8<S>();
    v[free] = ScalarTraits<S>::one();
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace detail

template <class S>
std::vector<Vec8<S>> Algebra<S>::center_basis(double tol) const {
  std::vector<Vec8<S>> rows;
  rows.reserve(24);
  for (int gen = kE1; gen <= kE3; ++gen) {
    const Mat8<S> l = left_mult(basis_element<S>(gen));
    const Mat8<S> r = right_mult(basis_element<S>(gen));
    for (int i = 0; i < 8; ++i) {
      Vec8<S> row;
      for (int j = 0; j < 8; ++j) row[j] = l[i][j] - r[i][j];
      rows.push_back(row);
    }
  }
  return detail::kernel8<S>(std::move(rows), tol);
}

namespace detail {

// Inverse of an 8x8 matrix by Gauss-Jordan; throws if singular.
template <class S>
Mat8<S> invert8(Mat8<S> a, double tol) {
  Mat8<S> inv;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      inv[i][j] = i == j ? ScalarTraits<S>::one() : ScalarTraits<S>::zero();
  for (int col = 0; col < 8; ++col) {
    int best = -1;
    if constexpr (ScalarTraits<S>::exact) {
      for (int r = col; r < 8; ++r)
        if (sgn(a[r][col]) != 0) {
          best = r;
          break;
        }
    } else {
      double bestval = tol;
      for (int r = col; r < 8; ++r) {
        double v = std::abs(ScalarTraits<S>::to_double(a[r][col]));
        if (v > bestval) {
          bestval = v;
          best = r;
        }
      }
    }
    if (best < 0) throw NumericError("singular matrix in invert8");
    std::swap(a[col], a[best]);
    std::swap(inv[col], inv[best]);
    const S p = ScalarTraits<S>::one() / a[col][col];
    for (int c = 0; c < 8; ++c) {
      a[col][c] = p * a[col][c];
      inv[col][c] = p * inv[col][c];
    }
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const S f = a[r][col];
      if (ScalarTraits<S>::is_zero(f, 0.0)) continue;
      for (int c = 0; c < 8; ++c) {
        a[r][c] = a[r][c] - f * a[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

template <class S>
Mat8<S> mat_mul8(const Mat8<S>& a, const Mat8<S>& b) {
  Mat8<S> r;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      S acc = ScalarTraits<S>::zero();
      for (int k = 0; k < 8; ++k) acc = acc + a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

}  // namespace detail

template <class S>
CanonicalDecomposition<S> Algebra<S>::canonical_decomposition(double tol) const {
  // Columns: 1 | e1 e2 e3 | Vtilde basis | c. The matrix is unimodular for
  // every parameter triple, so the four subspaces always span R^8.
  Mat8<S> basis;
  for (auto& row : basis) row.fill(ScalarTraits<S>::zero());
  const auto put = [&](int col, const Vec8<S>& v) {
    for (int r = 0; r < 8; ++r) basis[r][col] = v[r];
  };
  put(0, basis_element<S>(kOne));
  put(1, basis_element<S>(kE1));
  put(2, basis_element<S>(kE2));
  put(3, basis_element<S>(kE3));
  const auto f = vtilde_basis();
  put(4, f[0]);
  put(5, f[1]);
  put(6, f[2]);
  put(7, central_raw());

  const Mat8<S> inv = detail::invert8(basis, tol);
  const auto projector = [&](int lo, int hi) {
    Mat8<S> sel;
    for (auto& row : sel) row.fill(ScalarTraits<S>::zero());
    for (int d = lo; d <= hi; ++d) sel[d][d] = ScalarTraits<S>::one();
    return detail::mat_mul8(basis, detail::mat_mul8(sel, inv));
  };
  CanonicalDecomposition<S> d;
  d.proj_one = projector(0, 0);
  d.proj_v = projector(1, 3);
  d.proj_vtilde = projector(4, 6);
  d.proj_c = projector(7, 7);
  d.span_dim = 8;
  return d;
}

template <class S>
Vec8<S> apply8(const Mat8<S>& m, const Vec8<S>& v) {
  Vec8<S> r = zero_vec8<S>();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) r[i] = r[i] + m[i][j] * v[j];
  return r;
}

template <class S>
DecompositionChecks check_decomposition(const Algebra<S>& alg,
                                        const CanonicalDecomposition<S>& dec,
                                        std::uint64_t seed, double tol = 1e-9) {
  DecompositionChecks out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-6, 6);
  const auto random_elem = [&] {
    Vec8<S> v;
    for (auto& x : v) x = S(coeff(rng));
    return v;
  };
  const Mat8<S>* projs[4] = {&dec.proj_one, &dec.proj_v, &dec.proj_vtilde,
                             &dec.proj_c};

  out.q_orthogonal = true;
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = random_elem();
    const auto w = random_elem();
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        if (x == y) continue;
        const S val =
            alg.trace_form_value(apply8(*projs[x], u), apply8(*projs[y], w));
        if (!ScalarTraits<S>::is_zero(val, tol)) out.q_orthogonal = false;
      }
  }

  const auto c = alg.central_raw();
  out.cv_in_vtilde = true;
  for (int g = kE1; g <= kE3; ++g) {
    const auto ce = alg.multiply(c, basis_element<S>(g));
    if (!is_zero(ce - apply8(dec.proj_vtilde, ce), tol)) out.cv_in_vtilde = false;
  }
  out.cvtilde_in_v = true;
  for (const auto& f : alg.vtilde_basis()) {
    const auto cf = alg.multiply(c, f);
    if (!is_zero(cf - apply8(dec.proj_v, cf), tol)) out.cvtilde_in_v = false;
  }

  // When det Q != 0, c^2 = -det Q is an invertible scalar, so the inclusions
  // compose to c V = Vtilde and c Vtilde = V.
  out.equalities_hold = true;
  for (int g = kE1; g <= kE3; ++g) {
    const auto e = basis_element<S>(g);
    const auto back = alg.multiply(c, alg.multiply(c, e));
    if (!is_zero(back - (-alg.det_q()) * e, tol)) out.equalities_hold = false;
  }

  out.square_map_in_center_plane = true;
  for (int trial = 0; trial < 4; ++trial) {
    auto v = random_elem();
    v = apply8(dec.proj_v, v) + apply8(dec.proj_vtilde, v);
    const auto sq = alg.multiply(v, v);
    const auto in_plane = apply8(dec.proj_one, sq) + apply8(dec.proj_c, sq);
    if (!is_zero(sq - in_plane, tol)) out.square_map_in_center_plane = false;
  }
  return out;
}

}  // namespace biquat
