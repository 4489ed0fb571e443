#ifndef XPROD_TESTS_FIXTURES_HPP
#define XPROD_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "xprod/twosided.hpp"

namespace fx {

using namespace xprod;

template <class S>
S s(const Field& f, long long v) {
  return scalar<S>(f, v);
}

template <class S>
Vector<S> vec(const Field& f, std::initializer_list<long long> xs) {
  Vector<S> v = zero_vector<S>(f, xs.size());
  Eigen::Index i = 0;
  for (long long x : xs) v(i++) = scalar<S>(f, x);
  return v;
}

/// Algebra from a table: table[i][j] lists (k, coefficient) pairs of e_i e_j.
template <class S>
FinAlgebra<S> table_algebra(const Field& f, std::size_t n,
                            const std::vector<std::vector<std::vector<std::pair<std::size_t, long long>>>>& table,
                            std::initializer_list<long long> unit) {
  Matrix<S> m = zero_matrix<S>(f, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (auto [k, c] : table[i][j]) m(k, i * n + j) += scalar<S>(f, c);
  return FinAlgebra<S>::make(f, TensorMap<S>(Shape{n, n}, Shape{n}, m), vec<S>(f, unit));
}

template <class S>
FinAlgebra<S> ground(const Field& f) {
  return ground_algebra<S>(f);
}

/// k[x]/(x^2), basis {1, x}.
template <class S>
FinAlgebra<S> dual(const Field& f) {
  return table_algebra<S>(f, 2, {{{{0, 1}}, {{1, 1}}}, {{{1, 1}}, {}}}, {1, 0});
}

/// k[x]/(x^2 - x - 1), basis {1, x}.
template <class S>
FinAlgebra<S> golden(const Field& f) {
  return table_algebra<S>(f, 2, {{{{0, 1}}, {{1, 1}}}, {{{1, 1}}, {{0, 1}, {1, 1}}}}, {1, 0});
}

/// k x k with idempotents e0, e1; unit e0 + e1.
template <class S>
FinAlgebra<S> split2(const Field& f) {
  return table_algebra<S>(f, 2, {{{{0, 1}}, {}}, {{}, {{1, 1}}}}, {1, 1});
}

/// 2x2 matrices, basis E11, E12, E21, E22 (index 2*(row) + col).
template <class S>
FinAlgebra<S> mat2(const Field& f) {
  using Table = std::vector<std::vector<std::vector<std::pair<std::size_t, long long>>>>;
  Table t(4, Table::value_type(4));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          if (j == k) t[2 * i + j][2 * k + l].push_back({2 * i + l, 1});
  return table_algebra<S>(f, 4, t, {1, 0, 0, 1});
}

/// Group algebra of Z/n, basis g^0 ... g^(n-1).
template <class S>
FinAlgebra<S> cyclic(const Field& f, std::size_t n) {
  Matrix<S> m = zero_matrix<S>(f, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m((i + j) % n, i * n + j) = scalar<S>(f, 1);
  return FinAlgebra<S>::make(f, TensorMap<S>(Shape{n, n}, Shape{n}, m), basis_vector<S>(f, n, 0));
}

/// Flip X (x) Y -> Y (x) X with the Koszul sign: -1 when both basis vectors are
/// odd. `px`, `py` list the parity of each basis vector.
template <class S>
TensorMap<S> graded_flip(const Field& f, const std::vector<int>& px, const std::vector<int>& py) {
  const std::size_t nx = px.size(), ny = py.size();
  Matrix<S> m = zero_matrix<S>(f, ny * nx, nx * ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) m(j * nx + i, i * ny + j) = scalar<S>(f, px[i] && py[j] ? -1 : 1);
  return TensorMap<S>(Shape{nx, ny}, Shape{ny, nx}, m);
}

inline const std::vector<int> dual_parity{0, 1};

template <class S>
TensorMap<S> dual_graded_flip(const Field& f) {
  return graded_flip<S>(f, dual_parity, dual_parity);
}

/// E(v (x) v') = 1_A (x) vv' (x) 1_C for V carrying the algebra structure B.
template <class S>
TensorMap<S> algebra_E(const Field& f, const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C) {
  return Composite<S>(f, B.mul()).then(0, embed<S>(f, B.dim(), 1, {A.unit(), C.unit()})).map().reshaped(
      Shape{B.dim(), B.dim()}, Shape{A.dim(), B.dim(), C.dim()});
}

template <class S>
TwoSidedData<S> all_flips(const Field& f, const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C) {
  const std::size_t na = A.dim(), nb = B.dim(), nc = C.dim();
  return TwoSidedData<S>(A, PointedSpace<S>::of(B), C, flip<S>(f, nb, na), flip<S>(f, nc, nb), flip<S>(f, nc, na),
                         algebra_E(f, A, B, C));
}

/// D, D, D with selected maps graded (true) or plain flips (false).
template <class S>
TwoSidedData<S> ddd(const Field& f, bool g1, bool g2, bool g3) {
  const auto D = dual<S>(f);
  const auto pick = [&](bool g) { return g ? dual_graded_flip<S>(f) : flip<S>(f, 2, 2); };
  return TwoSidedData<S>(D, PointedSpace<S>::of(D), D, pick(g1), pick(g2), pick(g3), algebra_E(f, D, D, D));
}

template <class S>
TwoSidedData<S> graded(const Field& f) {
  return ddd<S>(f, true, true, true);
}

/// R1 graded, R2 and R3 plain flips.
template <class S>
TwoSidedData<S> mixed(const Field& f) {
  return ddd<S>(f, true, false, false);
}

/// Coalgebra spanned by n group-like elements g_0 = 1_H, ..., g_(n-1).
template <class S>
Coalgebra<S> grouplike(const Field& f, std::size_t n) {
  Matrix<S> comul = zero_matrix<S>(f, n * n, n), counit = zero_matrix<S>(f, 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    comul(i * n + i, i) = scalar<S>(f, 1);
    counit(0, i) = scalar<S>(f, 1);
  }
  return Coalgebra<S>::make(f, TensorMap<S>(Shape{n}, Shape{n, n}, comul), TensorMap<S>(Shape{n}, Shape{1}, counit),
                            basis_vector<S>(f, n, 0));
}

/// Integer matrix with an integer inverse: a few random row additions.
template <class S>
Matrix<S> random_unimodular(const Field& f, std::mt19937_64& rng, std::size_t n) {
  Matrix<S> m = identity<S>(f, Shape{n}).matrix();
  if (n < 2) return m;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int t = 0; t < 3; ++t) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const S c = scalar<S>(f, rng() % 2 ? 1 : -1);
    m.row(static_cast<Eigen::Index>(i)) += c * m.row(static_cast<Eigen::Index>(j));
  }
  return m;
}

/// The same data after invertible basis changes pA, pV, pC of A, V and C.
template <class S>
TwoSidedData<S> change_basis(const TwoSidedData<S>& d, const Matrix<S>& pA, const Matrix<S>& pV, const Matrix<S>& pC) {
  const Field& f = d.field();
  const std::size_t na = d.A().dim(), nv = d.V().dim(), nc = d.C().dim();
  const TensorMap<S> a(Shape{na}, Shape{na}, pA), v(Shape{nv}, Shape{nv}, pV), c(Shape{nc}, Shape{nc}, pC);
  const TensorMap<S> ai(Shape{na}, Shape{na}, *inverse<S>(f, pA)), vi(Shape{nv}, Shape{nv}, *inverse<S>(f, pV)),
      ci(Shape{nc}, Shape{nc}, *inverse<S>(f, pC));
  const auto conj = [](const TensorMap<S>& out, const TensorMap<S>& m, const TensorMap<S>& in) {
    return compose(out, compose(m, in));
  };
  return TwoSidedData<S>(transport(d.A(), a), PointedSpace<S>::make(f, apply(v, d.V().unit())), transport(d.C(), c),
                         conj(tensor(a, v), d.R1(), tensor(vi, ai)), conj(tensor(v, c), d.R2(), tensor(ci, vi)),
                         conj(tensor(a, c), d.R3(), tensor(ci, ai)), conj(tensor(tensor(a, v), c), d.E(), tensor(vi, vi)));
}

/// Valid fixtures used across suites.
template <class S>
std::vector<std::pair<std::string, TwoSidedData<S>>> corpus(const Field& f) {
  const auto D = dual<S>(f), G = golden<S>(f), P = split2<S>(f), k = ground<S>(f);
  std::vector<std::pair<std::string, TwoSidedData<S>>> out{
      {"flips D,D,D", all_flips<S>(f, D, D, D)},
      {"flips D,golden,split", all_flips<S>(f, D, G, P)},
      {"flips k,D,k", all_flips<S>(f, k, D, k)},
      {"graded", graded<S>(f)},
      {"mixed", mixed<S>(f)},
      {"graded R2 R3", ddd<S>(f, false, true, true)},
      {"graded R1 R2", ddd<S>(f, true, true, false)},
  };
  return out;
}

template <class S>
TwoSidedData<S> with_E(const TwoSidedData<S>& d, TensorMap<S> E) {
  return TwoSidedData<S>(d.A(), d.V(), d.C(), d.R1(), d.R2(), d.R3(), std::move(E));
}

/// Copy of `m` with one entry replaced.
template <class S>
TensorMap<S> with_entry(const TensorMap<S>& m, std::size_t row, std::size_t col, S value) {
  Matrix<S> x = m.matrix();
  x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
  return TensorMap<S>(m.domain(), m.codomain(), x);
}

template <class S>
Vector<S> mul(const FinAlgebra<S>& a, const Vector<S>& x, const Vector<S>& y) {
  return apply(a.mul(), kron(x, y));
}

template <class S>
Vector<S> e(const Field& f, std::size_t n, std::size_t i) {
  return basis_vector<S>(f, n, i);
}

/// Basis tensor e_i (x) e_j (x) e_k of [A,V,C].
template <class S>
Vector<S> e3(const Field& f, const Shape& shape, std::size_t i, std::size_t j, std::size_t k) {
  return kron(kron(e<S>(f, shape[0], i), e<S>(f, shape[1], j)), e<S>(f, shape[2], k));
}

/// Random matrix with entries drawn from {-2..2} (or residues for F_p).
template <class S>
Matrix<S> random_matrix(const Field& f, std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> dist(-2, 2);
  Matrix<S> m = zero_matrix<S>(f, rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = scalar<S>(f, dist(rng));
  return m;
}

/// Invertible random matrix.
template <class S>
Matrix<S> random_invertible(const Field& f, std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix<S> m = random_matrix<S>(f, rng, n, n);
    if (inverse<S>(f, m)) return m;
  }
}

}  // namespace fx

#endif  // XPROD_TESTS_FIXTURES_HPP
