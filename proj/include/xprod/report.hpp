#ifndef XPROD_REPORT_HPP
#define XPROD_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xprod/tensor.hpp"

namespace xprod {

/// A failing basis tuple together with both evaluated sides, so the failure
/// can be re-checked by hand.
template <class S>
struct Witness {
  std::vector<std::string> slots;     // names of the quantified variables, e.g. {"v", "v'", "a"}
  std::vector<std::size_t> indices;   // basis index per slot
  std::string identity;               // which sub-identity failed, for conditions with several
  Shape codomain;
  Vector<S> lhs;
  Vector<S> rhs;
};

template <class S>
struct ConditionResult {
  std::string label;
  bool pass = true;
  std::optional<Witness<S>> witness;
};

template <class S>
class Report {
 public:
  std::vector<ConditionResult<S>> entries;

  bool all_pass() const;
  /// Throws Precondition if the label is absent.
  const ConditionResult<S>& at(std::string_view label) const;
  const ConditionResult<S>* find(std::string_view label) const;
  std::vector<std::string> failing() const;
  void append(const Report& other);
  void add(ConditionResult<S> r) { entries.push_back(std::move(r)); }
};

/// AxiomFailure carrying the first failing label and its witness.
template <class S>
Error axiom_failure(const Report<S>& report, const std::string& context);

/// Compares two maps with equal shapes column by column in lexicographic
/// order of the domain basis; the first differing column is the witness.
template <class S>
ConditionResult<S> compare_maps(std::string label, std::vector<std::string> slots, const TensorMap<S>& lhs,
                                const TensorMap<S>& rhs, std::string identity = {});

/// Evaluates both sides of an identity on every basis tuple of `domain`, in
/// lexicographic order, stopping at the first mismatch. `lhs` and `rhs` are
/// called as eval(multi_index, accumulator) and must add their value into the
/// zero-initialised accumulator of length codomain.total().
template <class S, class Lhs, class Rhs>
ConditionResult<S> scan_tuples(std::string label, std::vector<std::string> slots, const Field& field,
                               const Shape& domain, const Shape& codomain, Lhs&& lhs, Rhs&& rhs,
                               std::string identity = {}) {
  ConditionResult<S> result{std::move(label), true, std::nullopt};
  for (std::size_t flat = 0; flat < domain.total(); ++flat) {
    const auto multi = unflatten(domain, flat);
    Vector<S> l = zero_vector<S>(field, codomain.total());
    Vector<S> r = zero_vector<S>(field, codomain.total());
    lhs(multi, l);
    rhs(multi, r);
    if (l != r) {
      result.pass = false;
      result.witness = Witness<S>{std::move(slots), multi, std::move(identity), codomain, std::move(l), std::move(r)};
      return result;
    }
  }
  return result;
}

/// Merges two sub-identities under one label: the first failing one wins.
template <class S>
ConditionResult<S> first_failure(std::string label, ConditionResult<S> a, ConditionResult<S> b) {
  ConditionResult<S>& chosen = a.pass ? b : a;
  chosen.label = std::move(label);
  return std::move(chosen);
}

}  // namespace xprod

#endif  // XPROD_REPORT_HPP
