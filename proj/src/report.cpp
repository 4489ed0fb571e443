#include "xprod/report.hpp"

#include <sstream>

namespace xprod {

template <class S>
bool Report<S>::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

template <class S>
const ConditionResult<S>* Report<S>::find(std::string_view label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

template <class S>
const ConditionResult<S>& Report<S>::at(std::string_view label) const {
  if (const auto* e = find(label)) return *e;
  throw Error(ErrorKind::Precondition, "no condition labelled " + std::string(label));
}

template <class S>
std::vector<std::string> Report<S>::failing() const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (!e.pass) out.push_back(e.label);
  return out;
}

template <class S>
void Report<S>::append(const Report& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

template <class S>
Error axiom_failure(const Report<S>& report, const std::string& context) {
  std::ostringstream os;
  os << context << ": failing conditions";
  const ConditionResult<S>* first = nullptr;
  for (const auto& e : report.entries) {
    if (e.pass) continue;
    if (!first) first = &e;
    os << ' ' << e.label;
  }
  if (!first) return Error(ErrorKind::AxiomFailure, context + ": no failing condition");
  std::vector<std::size_t> witness;
  if (first->witness) witness = first->witness->indices;
  return Error(ErrorKind::AxiomFailure, os.str(), first->label, witness);
}

template <class S>
ConditionResult<S> compare_maps(std::string label, std::vector<std::string> slots, const TensorMap<S>& lhs,
                                const TensorMap<S>& rhs, std::string identity) {
  if (lhs.domain().total() != rhs.domain().total() || lhs.codomain().total() != rhs.codomain().total())
    throw Error(ErrorKind::ShapeMismatch, "condition " + label + ": sides have different shapes");
  ConditionResult<S> result{std::move(label), true, std::nullopt};
  const auto& a = lhs.matrix();
  const auto& b = rhs.matrix();
  for (Eigen::Index col = 0; col < a.cols(); ++col) {
    if (a.col(col) == b.col(col)) continue;
    result.pass = false;
    result.witness = Witness<S>{std::move(slots),
                                unflatten(lhs.domain(), static_cast<std::size_t>(col)),
                                std::move(identity),
                                lhs.codomain(),
                                a.col(col),
                                b.col(col)};
    break;
  }
  return result;
}

#define XPROD_INSTANTIATE_REPORT(S)                                                                     \
  template class Report<S>;                                                                             \
  template Error axiom_failure<S>(const Report<S>&, const std::string&);                                \
  template ConditionResult<S> compare_maps<S>(std::string, std::vector<std::string>, const TensorMap<S>&, \
                                              const TensorMap<S>&, std::string);

XPROD_INSTANTIATE_REPORT(Rational)
XPROD_INSTANTIATE_REPORT(Zp)

}  // namespace xprod
