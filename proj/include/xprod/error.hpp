#ifndef XPROD_ERROR_HPP
#define XPROD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xprod {

enum class ErrorKind {
  ShapeMismatch,
  IndexOutOfRange,
  FieldMismatch,
  NotPrime,
  NotAssociative,
  NotUnital,
  NotCoassociative,
  CounitFail,
  UnitNotGrouplike,
  AxiomFailure,
  UnitMismatch,
  NotAlgebraMap,
  SplitFail,
  RoundTripMismatch,
  PremiseFail,
  NotAlgebraMapResult,
  Precondition,
  SearchSpaceTooLarge,
  InternalMismatch,
  Parse,
  UnresolvedReference,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `label` names the failing condition,
/// premise or embedding when there is one; `witness` is the smallest failing
/// basis tuple in lexicographic order.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string label = {},
        std::vector<std::size_t> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string label_;
  std::vector<std::size_t> witness_;
};

}  // namespace xprod

#endif  // XPROD_ERROR_HPP
