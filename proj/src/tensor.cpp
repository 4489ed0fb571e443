#include "xprod/tensor.hpp"

#include <numeric>
#include <sstream>

namespace xprod {

namespace {

std::size_t checked_total(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw Error(ErrorKind::ShapeMismatch, "empty shape");
  std::size_t t = 1;
  for (auto d : dims) {
    if (d == 0) throw Error(ErrorKind::ShapeMismatch, "zero factor dimension");
    t *= d;
  }
  return t;
}

}  // namespace

Shape::Shape(std::initializer_list<std::size_t> dims) : Shape(std::vector<std::size_t>(dims)) {}

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)), total_(checked_total(dims_)) {}

Shape Shape::slice(std::size_t first, std::size_t count) const {
  if (first + count > dims_.size()) throw Error(ErrorKind::ShapeMismatch, "slice out of range");
  return Shape(std::vector<std::size_t>(dims_.begin() + first, dims_.begin() + first + count));
}

std::string Shape::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ']';
  return os.str();
}

Shape concat(const Shape& a, const Shape& b) {
  auto dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Shape(std::move(dims));
}

std::size_t flat_index(const Shape& shape, std::span<const std::size_t> multi) {
  if (multi.size() != shape.rank())
    throw Error(ErrorKind::IndexOutOfRange, "multi-index rank differs from shape " + shape.to_string());
  std::size_t flat = 0;
  for (std::size_t k = 0; k < multi.size(); ++k) {
    if (multi[k] >= shape[k])
      throw Error(ErrorKind::IndexOutOfRange,
                  "index " + std::to_string(multi[k]) + " out of range in shape " + shape.to_string());
    flat = flat * shape[k] + multi[k];
  }
  return flat;
}

std::vector<std::size_t> unflatten(const Shape& shape, std::size_t flat) {
  if (flat >= shape.total())
    throw Error(ErrorKind::IndexOutOfRange, "flat index out of range in shape " + shape.to_string());
  std::vector<std::size_t> multi(shape.rank());
  for (std::size_t k = shape.rank(); k-- > 0;) {
    multi[k] = flat % shape[k];
    flat /= shape[k];
  }
  return multi;
}

template <class S>
TensorMap<S>::TensorMap(Shape domain, Shape codomain, Matrix<S> matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (static_cast<std::size_t>(matrix_.rows()) != codomain_.total() ||
      static_cast<std::size_t>(matrix_.cols()) != domain_.total())
    throw Error(ErrorKind::ShapeMismatch, "matrix " + std::to_string(matrix_.rows()) + "x" +
                                              std::to_string(matrix_.cols()) + " does not fit " +
                                              domain_.to_string() + " -> " + codomain_.to_string());
}

template <class S>
TensorMap<S> TensorMap<S>::reshaped(Shape domain, Shape codomain) const {
  return TensorMap(std::move(domain), std::move(codomain), matrix_);
}

template <class S>
Vector<S> basis_vector(const Field& f, std::size_t n, std::size_t i) {
  if (i >= n) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  Vector<S> v = zero_vector<S>(f, n);
  v(static_cast<Eigen::Index>(i)) = scalar<S>(f, 1);
  return v;
}

template <class S>
bool is_zero(const Vector<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!ScalarTraits<S>::is_zero(v(i))) return false;
  return true;
}

template <class S>
Vector<S> kron(const Vector<S>& a, const Vector<S>& b) {
  Vector<S> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

template <class S>
TensorMap<S> identity(const Field& f, const Shape& shape) {
  Matrix<S> m = zero_matrix<S>(f, shape.total(), shape.total());
  for (std::size_t i = 0; i < shape.total(); ++i) m(i, i) = scalar<S>(f, 1);
  return TensorMap<S>(shape, shape, std::move(m));
}

template <class S>
TensorMap<S> zero_map(const Field& f, const Shape& domain, const Shape& codomain) {
  return TensorMap<S>(domain, codomain, zero_matrix<S>(f, codomain.total(), domain.total()));
}

template <class S>
TensorMap<S> point(const Vector<S>& v, const Shape& codomain) {
  return TensorMap<S>(Shape{1}, codomain, Matrix<S>(v));
}

template <class S>
TensorMap<S> compose(const TensorMap<S>& g, const TensorMap<S>& f) {
  if (f.codomain().total() != g.domain().total())
    throw Error(ErrorKind::ShapeMismatch,
                "cannot compose " + g.domain().to_string() + " after " + f.codomain().to_string());
  return TensorMap<S>(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

template <class S>
TensorMap<S> tensor(const TensorMap<S>& f, const TensorMap<S>& g) {
  const auto& a = f.matrix();
  const auto& b = g.matrix();
  Matrix<S> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return TensorMap<S>(concat(f.domain(), g.domain()), concat(f.codomain(), g.codomain()), std::move(m));
}

template <class S>
TensorMap<S> flip(const Field& f, std::size_t d1, std::size_t d2) {
  const std::size_t perm[] = {1, 0};
  return permute<S>(f, Shape{d1, d2}, perm);
}

template <class S>
TensorMap<S> permute(const Field& f, const Shape& domain, std::span<const std::size_t> perm) {
  if (perm.size() != domain.rank()) throw Error(ErrorKind::ShapeMismatch, "permutation rank mismatch");
  std::vector<std::size_t> seen(perm.size(), 0), cod(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size() || seen[perm[k]]++)
      throw Error(ErrorKind::ShapeMismatch, "not a permutation");
    cod[k] = domain[perm[k]];
  }
  const Shape codomain(cod);
  Matrix<S> m = zero_matrix<S>(f, domain.total(), domain.total());
  std::vector<std::size_t> out(perm.size());
  for (std::size_t col = 0; col < domain.total(); ++col) {
    const auto in = unflatten(domain, col);
    for (std::size_t k = 0; k < perm.size(); ++k) out[k] = in[perm[k]];
    m(flat_index(codomain, out), col) = scalar<S>(f, 1);
  }
  return TensorMap<S>(domain, codomain, std::move(m));
}

template <class S>
Vector<S> apply(const TensorMap<S>& f, const Vector<S>& v) {
  if (static_cast<std::size_t>(v.size()) != f.domain().total())
    throw Error(ErrorKind::ShapeMismatch, "vector length " + std::to_string(v.size()) +
                                              " does not match domain " + f.domain().to_string());
  return f.matrix() * v;
}

template <class S>
TensorMap<S> fix_slot(const Field& f, const TensorMap<S>& m, std::size_t pos, const Vector<S>& u) {
  const Shape& dom = m.domain();
  if (pos >= dom.rank() || dom.rank() < 2 || static_cast<std::size_t>(u.size()) != dom[pos])
    throw Error(ErrorKind::ShapeMismatch, "cannot fix factor " + std::to_string(pos) + " of " + dom.to_string());
  std::optional<TensorMap<S>> start;
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < dom.rank(); ++k) {
    TensorMap<S> piece = k == pos ? point(u, Shape{dom[k]}) : identity<S>(f, Shape{dom[k]});
    if (k != pos) rest.push_back(dom[k]);
    start = start ? tensor(*start, piece) : std::move(piece);
  }
  return compose(m, start->reshaped(Shape(rest), dom));
}

template <class S>
TensorMap<S> embed(const Field& f, std::size_t n, std::size_t pos, const std::vector<Vector<S>>& fill) {
  if (pos > fill.size()) throw Error(ErrorKind::ShapeMismatch, "embedding position out of range");
  std::optional<TensorMap<S>> out;
  for (std::size_t k = 0; k <= fill.size(); ++k) {
    TensorMap<S> piece = k == pos ? identity<S>(f, Shape{n})
                                  : point(fill[k < pos ? k : k - 1], Shape{static_cast<std::size_t>(
                                                                          fill[k < pos ? k : k - 1].size())});
    out = out ? tensor(*out, piece) : std::move(piece);
  }
  return out->reshaped(Shape{n}, out->codomain());
}

template <class S>
Composite<S>::Composite(const Field& field, const Shape& domain)
    : field_(field), current_(identity<S>(field, domain)) {}

template <class S>
Composite<S>::Composite(const Field& field, TensorMap<S> start) : field_(field), current_(std::move(start)) {}

template <class S>
Composite<S>& Composite<S>::then(std::size_t pos, const TensorMap<S>& f) {
  const Shape& cod = current_.codomain();
  const std::size_t k = f.domain().rank();
  if (pos + k > cod.rank() || cod.slice(pos, k) != f.domain())
    throw Error(ErrorKind::ShapeMismatch, "cannot apply " + f.domain().to_string() + " map at factor " +
                                              std::to_string(pos) + " of " + cod.to_string());
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= cod[i];
  for (std::size_t i = pos + k; i < cod.rank(); ++i) right *= cod[i];

  std::vector<std::size_t> dims(cod.dims().begin(), cod.dims().begin() + pos);
  dims.insert(dims.end(), f.codomain().dims().begin(), f.codomain().dims().end());
  dims.insert(dims.end(), cod.dims().begin() + pos + k, cod.dims().end());
  const Shape out_shape(dims);

  const auto n = f.domain().total(), m = f.codomain().total();
  std::vector<std::vector<std::pair<std::size_t, S>>> fcol(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (!ScalarTraits<S>::is_zero(f(i, j))) fcol[j].emplace_back(i, f(i, j));
  const auto& x = current_.matrix();
  Matrix<S> out = zero_matrix<S>(field_, out_shape.total(), current_.domain().total());
  // Walk the nonzero entries of the current matrix only; it is usually sparse.
  for (Eigen::Index col = 0; col < x.cols(); ++col)
    for (std::size_t l = 0; l < left; ++l)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < right; ++r) {
          const S& v = x(static_cast<Eigen::Index>((l * n + j) * right + r), col);
          if (ScalarTraits<S>::is_zero(v)) continue;
          for (const auto& [i, c] : fcol[j]) out(static_cast<Eigen::Index>((l * m + i) * right + r), col) += c * v;
        }
  current_ = TensorMap<S>(current_.domain(), out_shape, std::move(out));
  return *this;
}

namespace {

/// In-place reduction to reduced row echelon form; returns pivot columns.
template <class S>
std::vector<std::size_t> rref(Matrix<S>& m) {
  std::vector<std::size_t> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && ScalarTraits<S>::is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    m.row(row).swap(m.row(piv));
    const S inv = ScalarTraits<S>::inverse(m(row, col));
    m.row(row) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarTraits<S>::is_zero(m(r, col))) continue;
      const S factor = m(r, col);
      m.row(r) -= factor * m.row(row);
    }
    pivots.push_back(static_cast<std::size_t>(col));
    ++row;
  }
  return pivots;
}

}  // namespace

template <class S>
std::size_t rank(const Field&, Matrix<S> m) {
  return rref(m).size();
}

template <class S>
std::optional<Matrix<S>> inverse(const Field& f, const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  const auto n = m.rows();
  Matrix<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity<S>(f, Shape{static_cast<std::size_t>(n)}).matrix();
  const auto pivots = rref(aug);
  if (pivots.size() < static_cast<std::size_t>(n) || pivots[n - 1] >= static_cast<std::size_t>(n))
    return std::nullopt;
  return Matrix<S>(aug.rightCols(n));
}

template <class S>
std::pair<Matrix<S>, std::size_t> complete_to_basis(const Field& f, const Matrix<S>& cols) {
  const auto n = cols.rows();
  std::vector<Vector<S>> chosen;
  std::size_t rk = 0, from_input = 0;
  auto try_add = [&](const Vector<S>& v) {
    Matrix<S> trial(n, static_cast<Eigen::Index>(chosen.size() + 1));
    for (std::size_t c = 0; c < chosen.size(); ++c) trial.col(c) = chosen[c];
    trial.col(chosen.size()) = v;
    const auto r = rank(f, std::move(trial));
    if (r > rk) {
      chosen.push_back(v);
      rk = r;
      return true;
    }
    return false;
  };
  for (Eigen::Index c = 0; c < cols.cols(); ++c)
    if (try_add(cols.col(c))) ++from_input;
  for (Eigen::Index i = 0; i < n && rk < static_cast<std::size_t>(n); ++i)
    try_add(basis_vector<S>(f, static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  Matrix<S> basis(n, n);
  for (Eigen::Index c = 0; c < n; ++c) basis.col(c) = chosen[c];
  return {std::move(basis), from_input};
}

#define XPROD_INSTANTIATE_TENSOR(S)                                                            \
  template class TensorMap<S>;                                                                 \
  template class Composite<S>;                                                                 \
  template Vector<S> basis_vector<S>(const Field&, std::size_t, std::size_t);                 \
  template bool is_zero<S>(const Vector<S>&);                                                  \
  template Vector<S> kron<S>(const Vector<S>&, const Vector<S>&);                              \
  template TensorMap<S> identity<S>(const Field&, const Shape&);                               \
  template TensorMap<S> zero_map<S>(const Field&, const Shape&, const Shape&);                 \
  template TensorMap<S> point<S>(const Vector<S>&, const Shape&);                              \
  template TensorMap<S> compose<S>(const TensorMap<S>&, const TensorMap<S>&);                  \
  template TensorMap<S> tensor<S>(const TensorMap<S>&, const TensorMap<S>&);                   \
  template TensorMap<S> flip<S>(const Field&, std::size_t, std::size_t);                      \
  template TensorMap<S> permute<S>(const Field&, const Shape&, std::span<const std::size_t>); \
  template Vector<S> apply<S>(const TensorMap<S>&, const Vector<S>&);                          \
  template TensorMap<S> fix_slot<S>(const Field&, const TensorMap<S>&, std::size_t, const Vector<S>&); \
  template TensorMap<S> embed<S>(const Field&, std::size_t, std::size_t, const std::vector<Vector<S>>&); \
  template std::size_t rank<S>(const Field&, Matrix<S>);                                       \
  template std::optional<Matrix<S>> inverse<S>(const Field&, const Matrix<S>&);                \
  template std::pair<Matrix<S>, std::size_t> complete_to_basis<S>(const Field&, const Matrix<S>&);

XPROD_INSTANTIATE_TENSOR(Rational)
XPROD_INSTANTIATE_TENSOR(Zp)

}  // namespace xprod
