#ifndef XPROD_DOCUMENT_HPP
#define XPROD_DOCUMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xprod/algebra.hpp"

namespace xprod {

/// A named dataset: its kind and the names it refers to, by role.
struct DatasetSpec {
  std::string kind;
  std::map<std::string, std::string> refs;
  // search only
  std::map<std::string, std::string> frozen;  // role ("R1", "R2", "R3", "E") -> map name
  std::string mode = "exhaustive";
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t seed = 0;

  bool operator==(const DatasetSpec&) const = default;
};

template <class S>
struct DocMap {
  using Scalar = S;
  std::vector<std::string> domain;  // factor names as written; digits for bare dimensions
  std::vector<std::string> codomain;
  TensorMap<S> map;
};

template <class S>
struct Objects {
  std::map<std::string, FinAlgebra<S>> algebras;
  std::map<std::string, PointedSpace<S>> spaces;
  std::map<std::string, Coalgebra<S>> coalgebras;
  std::map<std::string, DocMap<S>> maps;
};

struct Document {
  Field field = Field::rationals();
  std::variant<Objects<Rational>, Objects<Zp>> objects;
  std::map<std::string, DatasetSpec> datasets;
};

/// Dataset kinds and the roles each one needs.
const std::map<std::string, std::vector<std::string>>& dataset_roles();

/// Parses and validates a document: every reference resolves, every map has
/// the dimensions its role needs, every algebra and coalgebra satisfies its
/// axioms. Errors carry a JSON-pointer path to the offending field; the kind
/// is Parse, UnresolvedReference (label = the missing name), ShapeMismatch,
/// NotPrime, or the algebra validation error.
Document parse_document(std::string_view text);

/// Canonical form: sorted keys, scalars as normalized strings, two-space
/// indentation, LF line endings, trailing newline.
std::string serialize_document(const Document& doc);

}  // namespace xprod

#endif  // XPROD_DOCUMENT_HPP
