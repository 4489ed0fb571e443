#include "xprod/algebra.hpp"

namespace xprod {

namespace {

template <class S>
void check_entries_field(const Field& field, const Matrix<S>& m) {
  if constexpr (std::is_same_v<S, Zp>) {
    for (Eigen::Index i = 0; i < m.size(); ++i)
      if (m.data()[i].modulus() != field.modulus())
        throw Error(ErrorKind::FieldMismatch, "entry not bound to " + field.to_string());
  } else {
    (void)field;
    (void)m;
  }
}

/// Smallest basis index i with e_i not fixed by left or right multiplication
/// with `unit`.
template <class S>
std::optional<std::size_t> unit_violation(const Field& field, const TensorMap<S>& mul, const Vector<S>& unit) {
  const std::size_t n = mul.codomain().total();
  const auto u = point(unit, Shape{n});
  const auto id = identity<S>(field, Shape{n});
  const auto left = Composite<S>(field, tensor(u, id)).then(0, mul).map();
  const auto right = Composite<S>(field, tensor(id, u)).then(0, mul).map();
  for (std::size_t i = 0; i < n; ++i) {
    if (left.matrix().col(i) != id.matrix().col(i)) return i;
    if (right.matrix().col(i) != id.matrix().col(i)) return i;
  }
  return std::nullopt;
}

}  // namespace

template <class S>
std::optional<Error> validate_algebra(const Field& field, const TensorMap<S>& mul, const Vector<S>& unit) {
  const std::size_t n = mul.codomain().total();
  if (mul.codomain().rank() != 1 || mul.domain() != Shape{n, n} || static_cast<std::size_t>(unit.size()) != n)
    return Error(ErrorKind::ShapeMismatch, "structure constants must map [n,n] -> [n] with a unit of length n");
  const Shape triple{n, n, n};
  const auto left = Composite<S>(field, triple).then(0, mul).then(0, mul).map();
  const auto right = Composite<S>(field, triple).then(1, mul).then(0, mul).map();
  const auto assoc = compare_maps<S>("associativity", {"i", "j", "k"}, left, right);
  if (!assoc.pass) {
    const auto& w = assoc.witness->indices;
    return Error(ErrorKind::NotAssociative,
                 "(e_" + std::to_string(w[0]) + " e_" + std::to_string(w[1]) + ") e_" + std::to_string(w[2]) +
                     " != e_" + std::to_string(w[0]) + " (e_" + std::to_string(w[1]) + " e_" +
                     std::to_string(w[2]) + ")",
                 "associativity", w);
  }
  if (auto i = unit_violation(field, mul, unit))
    return Error(ErrorKind::NotUnital, "unit does not fix e_" + std::to_string(*i), "unit", {*i});
  return std::nullopt;
}

template <class S>
FinAlgebra<S> FinAlgebra<S>::make(const Field& field, TensorMap<S> mul, Vector<S> unit) {
  require_field<S>(field);
  check_entries_field(field, mul.matrix());
  if (auto err = validate_algebra(field, mul, unit)) throw *err;
  return FinAlgebra(field, std::move(mul), std::move(unit));
}

template <class S>
FinAlgebra<S> FinAlgebra<S>::unchecked(const Field& field, TensorMap<S> mul, Vector<S> unit) {
  return FinAlgebra(field, std::move(mul), std::move(unit));
}

template <class S>
FinAlgebra<S> new_algebra(const Field& field, std::size_t dim, TensorMap<S> mul, Vector<S> unit) {
  if (mul.codomain().total() != dim)
    throw Error(ErrorKind::ShapeMismatch, "structure constants do not match dimension " + std::to_string(dim));
  return FinAlgebra<S>::make(field, std::move(mul), std::move(unit));
}

template <class S>
FinAlgebra<S> algebra_from_constants(const Field& field, const std::vector<std::vector<std::vector<S>>>& c,
                                     Vector<S> unit) {
  const std::size_t n = c.size();
  Matrix<S> m = zero_matrix<S>(field, n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].size() != n) throw Error(ErrorKind::ShapeMismatch, "structure constants are not n x n x n");
    for (std::size_t j = 0; j < n; ++j) {
      if (c[i][j].size() != n) throw Error(ErrorKind::ShapeMismatch, "structure constants are not n x n x n");
      for (std::size_t k = 0; k < n; ++k) m(k, i * n + j) = c[i][j][k];
    }
  }
  return FinAlgebra<S>::make(field, TensorMap<S>(Shape{n, n}, Shape{n}, std::move(m)), std::move(unit));
}

template <class S>
FinAlgebra<S> ground_algebra(const Field& field) {
  Matrix<S> m(1, 1);
  m(0, 0) = scalar<S>(field, 1);
  return FinAlgebra<S>::make(field, TensorMap<S>(Shape{1, 1}, Shape{1}, std::move(m)),
                             basis_vector<S>(field, 1, 0));
}

template <class S>
Vector<S> algebra_mul(const FinAlgebra<S>& a, const Vector<S>& x, const Vector<S>& y) {
  if (static_cast<std::size_t>(x.size()) != a.dim() || static_cast<std::size_t>(y.size()) != a.dim())
    throw Error(ErrorKind::ShapeMismatch, "operand length does not match algebra dimension");
  return a.mul().matrix() * kron(x, y);
}

template <class S>
FinAlgebra<S> ordinary_tensor(const FinAlgebra<S>& a, const FinAlgebra<S>& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "tensor product over different fields");
  const Field& f = a.field();
  const std::size_t na = a.dim(), nb = b.dim();
  const auto mul = Composite<S>(f, Shape{na, nb, na, nb})
                       .then(1, flip<S>(f, nb, na))
                       .then(0, a.mul())
                       .then(1, b.mul())
                       .map()
                       .reshaped(Shape{na * nb, na * nb}, Shape{na * nb});
  return FinAlgebra<S>::make(f, mul, kron(a.unit(), b.unit()));
}

template <class S>
Report<S> is_algebra_map(const TensorMap<S>& f, const FinAlgebra<S>& a, const FinAlgebra<S>& x) {
  if (f.domain().total() != a.dim() || f.codomain().total() != x.dim())
    throw Error(ErrorKind::ShapeMismatch, "map shape does not match the algebras");
  const Field& field = a.field();
  const auto fr = f.reshaped(Shape{a.dim()}, Shape{x.dim()});
  Report<S> report;
  ConditionResult<S> unit{"unit", true, std::nullopt};
  const Vector<S> image = apply(fr, a.unit());
  if (image != x.unit()) {
    unit.pass = false;
    unit.witness = Witness<S>{{}, {}, "f(1) = 1", Shape{x.dim()}, image, x.unit()};
  }
  report.add(std::move(unit));
  const Shape pair{a.dim(), a.dim()};
  const auto lhs = Composite<S>(field, pair).then(0, a.mul()).then(0, fr).map();
  const auto rhs = Composite<S>(field, pair).then(0, fr).then(1, fr).then(0, x.mul()).map();
  report.add(compare_maps<S>("multiplicative", {"a", "a'"}, lhs, rhs));
  return report;
}

template <class S>
FinAlgebra<S> transport(const FinAlgebra<S>& a, const TensorMap<S>& iso) {
  const Field& f = a.field();
  const std::size_t n = a.dim();
  const auto inv = inverse<S>(f, iso.matrix());
  if (!inv) throw Error(ErrorKind::Precondition, "transport along a singular map");
  const TensorMap<S> back(Shape{n}, Shape{n}, *inv);
  const auto fwd = iso.reshaped(Shape{n}, Shape{n});
  const auto mul = Composite<S>(f, Shape{n, n}).then(0, back).then(1, back).then(0, a.mul()).then(0, fwd).map();
  return FinAlgebra<S>::make(f, mul, apply(fwd, a.unit()));
}

template <class S>
PointedSpace<S> PointedSpace<S>::make(const Field& field, Vector<S> unit) {
  require_field<S>(field);
  if (unit.size() == 0) throw Error(ErrorKind::ShapeMismatch, "pointed space of dimension zero");
  if (is_zero(unit)) throw Error(ErrorKind::NotUnital, "distinguished element must be nonzero");
  return PointedSpace(field, std::move(unit));
}

template <class S>
Coalgebra<S> Coalgebra<S>::make(const Field& field, TensorMap<S> comul, TensorMap<S> counit, Vector<S> unit) {
  require_field<S>(field);
  const std::size_t h = static_cast<std::size_t>(unit.size());
  if (comul.domain() != Shape{h} || comul.codomain() != Shape{h, h} || counit.domain() != Shape{h} ||
      counit.codomain().total() != 1)
    throw Error(ErrorKind::ShapeMismatch, "comultiplication must map [h] -> [h,h] and counit [h] -> [1]");
  const auto counit1 = counit.reshaped(Shape{h}, Shape{1});

  const auto left = Composite<S>(field, comul).then(0, comul).map();
  const auto right = Composite<S>(field, comul).then(1, comul).map();
  const auto coassoc = compare_maps<S>("coassociativity", {"h"}, left, right);
  if (!coassoc.pass)
    throw Error(ErrorKind::NotCoassociative, "coassociativity fails at basis element " +
                                                 std::to_string(coassoc.witness->indices[0]),
                "coassociativity", coassoc.witness->indices);

  const auto id = identity<S>(field, Shape{h});
  const auto eps_left = Composite<S>(field, comul).then(0, counit1).map().reshaped(Shape{h}, Shape{h});
  const auto eps_right = Composite<S>(field, comul).then(1, counit1).map().reshaped(Shape{h}, Shape{h});
  for (const auto* side : {&eps_left, &eps_right}) {
    const auto r = compare_maps<S>("counit", {"h"}, *side, id);
    if (!r.pass)
      throw Error(ErrorKind::CounitFail, "counit law fails at basis element " + std::to_string(r.witness->indices[0]),
                  "counit", r.witness->indices);
  }

  if (apply(comul, unit) != kron(unit, unit))
    throw Error(ErrorKind::UnitNotGrouplike, "comultiplication of the distinguished element is not 1 (x) 1");
  if (apply(counit1, unit)(0) != scalar<S>(field, 1))
    throw Error(ErrorKind::UnitNotGrouplike, "counit of the distinguished element is not 1");
  return Coalgebra(field, std::move(comul), counit1, std::move(unit));
}

#define XPROD_INSTANTIATE_ALGEBRA(S)                                                                           \
  template class FinAlgebra<S>;                                                                                \
  template class PointedSpace<S>;                                                                              \
  template class Coalgebra<S>;                                                                                 \
  template std::optional<Error> validate_algebra<S>(const Field&, const TensorMap<S>&, const Vector<S>&);     \
  template FinAlgebra<S> new_algebra<S>(const Field&, std::size_t, TensorMap<S>, Vector<S>);                  \
  template FinAlgebra<S> algebra_from_constants<S>(const Field&, const std::vector<std::vector<std::vector<S>>>&, \
                                                   Vector<S>);                                                 \
  template FinAlgebra<S> ground_algebra<S>(const Field&);                                                      \
  template Vector<S> algebra_mul<S>(const FinAlgebra<S>&, const Vector<S>&, const Vector<S>&);                \
  template FinAlgebra<S> ordinary_tensor<S>(const FinAlgebra<S>&, const FinAlgebra<S>&);                      \
  template Report<S> is_algebra_map<S>(const TensorMap<S>&, const FinAlgebra<S>&, const FinAlgebra<S>&);      \
  template FinAlgebra<S> transport<S>(const FinAlgebra<S>&, const TensorMap<S>&);

XPROD_INSTANTIATE_ALGEBRA(Rational)
XPROD_INSTANTIATE_ALGEBRA(Zp)

}  // namespace xprod
