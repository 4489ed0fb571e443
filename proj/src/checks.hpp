#ifndef XPROD_SRC_CHECKS_HPP
#define XPROD_SRC_CHECKS_HPP

#include <string>

#include "xprod/algebra.hpp"
#include "xprod/report.hpp"

namespace xprod::detail {

/// Reads `m` as a map [d0, d1] -> [c0, c1], rejecting other totals.
template <class S>
TensorMap<S> two_factor(const TensorMap<S>& m, std::size_t d0, std::size_t d1, std::size_t c0, std::size_t c1,
                        const std::string& what) {
  if (m.domain().total() != d0 * d1 || m.codomain().total() != c0 * c1)
    throw Error(ErrorKind::ShapeMismatch, what + " has the wrong shape: " + m.domain().to_string() + " -> " +
                                              m.codomain().to_string());
  return m.reshaped(Shape{d0, d1}, Shape{c0, c1});
}

/// Unit condition pair "m(u (x) x) = left(x)" and "m(x (x) w) = right(x)".
template <class S>
ConditionResult<S> unit_pair(const Field& f, std::string label, const TensorMap<S>& m, const Vector<S>& u,
                             const TensorMap<S>& left_expected, std::string left_slot, std::string left_identity,
                             const Vector<S>& w, const TensorMap<S>& right_expected, std::string right_slot,
                             std::string right_identity) {
  auto first = compare_maps<S>(label, {std::move(left_slot)}, fix_slot(f, m, 0, u), left_expected,
                               std::move(left_identity));
  auto second = compare_maps<S>(label, {std::move(right_slot)}, fix_slot(f, m, 1, w), right_expected,
                                std::move(right_identity));
  return first_failure(std::move(label), std::move(first), std::move(second));
}

/// FinAlgebra::make, with a validation failure reported as an internal error.
template <class S>
FinAlgebra<S> revalidate(const Field& f, TensorMap<S> mul, Vector<S> unit, const std::string& what) {
  try {
    return FinAlgebra<S>::make(f, std::move(mul), std::move(unit));
  } catch (const Error& e) {
    throw Error(ErrorKind::InternalMismatch, what + " passed its conditions but " + e.what(), e.label(),
                e.witness());
  }
}

}  // namespace xprod::detail

#endif  // XPROD_SRC_CHECKS_HPP
