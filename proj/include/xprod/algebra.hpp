#ifndef XPROD_ALGEBRA_HPP
#define XPROD_ALGEBRA_HPP

#include <optional>

#include "xprod/report.hpp"

namespace xprod {

/// Finite-dimensional unital associative algebra given by structure
/// constants: mul has domain [n,n] and codomain [n], and column (i*n + j)
/// holds the coordinates of e_i e_j. The unit is an arbitrary vector.
template <class S>
class FinAlgebra {
 public:
  /// Validates associativity and the unit laws on all basis tuples. Throws
  /// NotAssociative(i,j,k) or NotUnital(i) with the smallest witness.
  static FinAlgebra make(const Field& field, TensorMap<S> mul, Vector<S> unit);
  /// Skips validation. Used to inspect candidate products built under force.
  static FinAlgebra unchecked(const Field& field, TensorMap<S> mul, Vector<S> unit);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return mul_.codomain().total(); }
  const TensorMap<S>& mul() const noexcept { return mul_; }
  const Vector<S>& unit() const noexcept { return unit_; }

  friend bool operator==(const FinAlgebra& a, const FinAlgebra& b) {
    return a.field_ == b.field_ && a.mul_.matrix() == b.mul_.matrix() && a.unit_ == b.unit_;
  }

 private:
  FinAlgebra(const Field& field, TensorMap<S> mul, Vector<S> unit)
      : field_(field), mul_(std::move(mul)), unit_(std::move(unit)) {}

  Field field_;
  TensorMap<S> mul_;
  Vector<S> unit_;
};

/// Checks the algebra axioms without throwing; nullopt means valid.
template <class S>
std::optional<Error> validate_algebra(const Field& field, const TensorMap<S>& mul, const Vector<S>& unit);

template <class S>
FinAlgebra<S> new_algebra(const Field& field, std::size_t dim, TensorMap<S> mul, Vector<S> unit);

/// Builds an algebra from c[i][j][k], e_i e_j = sum_k c[i][j][k] e_k.
template <class S>
FinAlgebra<S> algebra_from_constants(const Field& field, const std::vector<std::vector<std::vector<S>>>& c,
                                     Vector<S> unit);

/// The one-dimensional algebra k.
template <class S>
FinAlgebra<S> ground_algebra(const Field& field);

template <class S>
Vector<S> algebra_mul(const FinAlgebra<S>& a, const Vector<S>& x, const Vector<S>& y);

/// A (x) B with componentwise product and unit 1_A (x) 1_B.
template <class S>
FinAlgebra<S> ordinary_tensor(const FinAlgebra<S>& a, const FinAlgebra<S>& b);

/// Conditions "unit" (f(1_A) = 1_X) and "multiplicative" (f(ab) = f(a)f(b)).
template <class S>
Report<S> is_algebra_map(const TensorMap<S>& f, const FinAlgebra<S>& a, const FinAlgebra<S>& x);

/// Transfers the structure along a linear isomorphism `iso` from the
/// algebra's space: mul' = iso o mul o (iso^-1 (x) iso^-1), unit' = iso(unit).
template <class S>
FinAlgebra<S> transport(const FinAlgebra<S>& a, const TensorMap<S>& iso);

/// Vector space with a distinguished nonzero element.
template <class S>
class PointedSpace {
 public:
  /// Throws NotUnital if the distinguished element is zero.
  static PointedSpace make(const Field& field, Vector<S> unit);
  static PointedSpace of(const FinAlgebra<S>& a) { return make(a.field(), a.unit()); }

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(unit_.size()); }
  const Vector<S>& unit() const noexcept { return unit_; }

  friend bool operator==(const PointedSpace&, const PointedSpace&) = default;

 private:
  PointedSpace(const Field& field, Vector<S> unit) : field_(field), unit_(std::move(unit)) {}
  Field field_;
  Vector<S> unit_;
};

/// Coassociative counital coalgebra with a group-like element 1_H.
template <class S>
class Coalgebra {
 public:
  /// Throws NotCoassociative, CounitFail or UnitNotGrouplike.
  static Coalgebra make(const Field& field, TensorMap<S> comul, TensorMap<S> counit, Vector<S> unit);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(unit_.size()); }
  const TensorMap<S>& comul() const noexcept { return comul_; }
  const TensorMap<S>& counit() const noexcept { return counit_; }
  const Vector<S>& unit() const noexcept { return unit_; }

 private:
  Coalgebra(const Field& field, TensorMap<S> comul, TensorMap<S> counit, Vector<S> unit)
      : field_(field), comul_(std::move(comul)), counit_(std::move(counit)), unit_(std::move(unit)) {}
  Field field_;
  TensorMap<S> comul_;
  TensorMap<S> counit_;
  Vector<S> unit_;
};

}  // namespace xprod

#endif  // XPROD_ALGEBRA_HPP
