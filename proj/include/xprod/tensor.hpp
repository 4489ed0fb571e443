#ifndef XPROD_TENSOR_HPP
#define XPROD_TENSOR_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "xprod/scalar.hpp"

namespace xprod {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Ordered list of tensor factor dimensions. Basis vectors of the product
/// are flattened row-major: the leftmost factor is most significant.
class Shape {
 public:
  Shape(std::initializer_list<std::size_t> dims);
  explicit Shape(std::vector<std::size_t> dims);

  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// Factors [first, first + count).
  Shape slice(std::size_t first, std::size_t count) const;

  std::string to_string() const;
  bool operator==(const Shape&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_;
};

Shape concat(const Shape& a, const Shape& b);

std::size_t flat_index(const Shape& shape, std::span<const std::size_t> multi);
std::vector<std::size_t> unflatten(const Shape& shape, std::size_t flat);

/// Linear map between tensor products of spaces, stored densely as a
/// codomain.total() x domain.total() matrix. Column j is the image of the
/// j-th basis tensor of the domain.
template <class S>
class TensorMap {
 public:
  TensorMap(Shape domain, Shape codomain, Matrix<S> matrix);

  const Shape& domain() const noexcept { return domain_; }
  const Shape& codomain() const noexcept { return codomain_; }
  const Matrix<S>& matrix() const noexcept { return matrix_; }

  const S& operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }
  Vector<S> column(std::size_t col) const { return matrix_.col(col); }

  /// Same matrix read against different factorizations of equal totals.
  TensorMap reshaped(Shape domain, Shape codomain) const;

  friend bool operator==(const TensorMap& a, const TensorMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
  }

 private:
  Shape domain_;
  Shape codomain_;
  Matrix<S> matrix_;
};

template <class S>
Matrix<S> zero_matrix(const Field& f, std::size_t rows, std::size_t cols) {
  return Matrix<S>::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols),
                             scalar<S>(f, 0));
}

template <class S>
Vector<S> zero_vector(const Field& f, std::size_t n) {
  return Vector<S>::Constant(static_cast<Eigen::Index>(n), scalar<S>(f, 0));
}

template <class S>
Vector<S> basis_vector(const Field& f, std::size_t n, std::size_t i);

template <class S>
bool is_zero(const Vector<S>& v);

template <class S>
Vector<S> kron(const Vector<S>& a, const Vector<S>& b);

template <class S>
TensorMap<S> identity(const Field& f, const Shape& shape);

template <class S>
TensorMap<S> zero_map(const Field& f, const Shape& domain, const Shape& codomain);

/// The map k -> codomain sending 1 to `v`.
template <class S>
TensorMap<S> point(const Vector<S>& v, const Shape& codomain);

/// g o f. Throws ShapeMismatch unless f.codomain().total() == g.domain().total().
template <class S>
TensorMap<S> compose(const TensorMap<S>& g, const TensorMap<S>& f);

/// f (x) g, Kronecker product; shapes concatenate.
template <class S>
TensorMap<S> tensor(const TensorMap<S>& f, const TensorMap<S>& g);

/// The flip d1 (x) d2 -> d2 (x) d1, e_(i,j) -> e_(j,i).
template <class S>
TensorMap<S> flip(const Field& f, std::size_t d1, std::size_t d2);

/// Factor permutation: output factor k is input factor perm[k].
template <class S>
TensorMap<S> permute(const Field& f, const Shape& domain, std::span<const std::size_t> perm);

template <class S>
Vector<S> apply(const TensorMap<S>& f, const Vector<S>& v);

/// `m` with its domain factor `pos` evaluated at `u`; the result is a map on
/// the remaining domain factors.
template <class S>
TensorMap<S> fix_slot(const Field& f, const TensorMap<S>& m, std::size_t pos, const Vector<S>& u);

/// The map [n] -> (fill..., with the argument at factor `pos`), e.g.
/// embed(f, n, 0, {u, w}) is x -> x (x) u (x) w.
template <class S>
TensorMap<S> embed(const Field& f, std::size_t n, std::size_t pos, const std::vector<Vector<S>>& fill);

/// Builds (id (x) ... (x) f (x) ... (x) id) o ... o x one factor block at a
/// time without materialising the Kronecker products.
template <class S>
class Composite {
 public:
  /// Starts from the identity on `domain`.
  Composite(const Field& field, const Shape& domain);
  /// Starts from an existing map.
  Composite(const Field& field, TensorMap<S> start);

  /// Applies `f` to the current codomain factors [pos, pos + f.domain().rank()).
  Composite& then(std::size_t pos, const TensorMap<S>& f);

  const TensorMap<S>& map() const noexcept { return current_; }

 private:
  Field field_;
  TensorMap<S> current_;
};

// Exact linear algebra over the field.

template <class S>
std::size_t rank(const Field& f, Matrix<S> m);

/// Inverse of a square matrix, or nullopt when singular.
template <class S>
std::optional<Matrix<S>> inverse(const Field& f, const Matrix<S>& m);

/// Greedy basis completion: keeps the columns of `cols` that are independent
/// of their predecessors, then appends standard basis vectors e_0, e_1, ...
/// that increase the rank. Returns the square basis matrix and the number of
/// leading columns taken from `cols`.
template <class S>
std::pair<Matrix<S>, std::size_t> complete_to_basis(const Field& f, const Matrix<S>& cols);

}  // namespace xprod

#endif  // XPROD_TENSOR_HPP
