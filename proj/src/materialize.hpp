#ifndef XPROD_SRC_MATERIALIZE_HPP
#define XPROD_SRC_MATERIALIZE_HPP

// Turns named references in a Document into typed module inputs.

#include <map>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>

#include "xprod/constructions.hpp"
#include "xprod/document.hpp"
#include "xprod/search.hpp"

namespace xprod::detail {

inline std::string ds_path(const std::string& dataset, const std::string& role) {
  return "/datasets/" + dataset + "/" + role;
}

inline const std::string& ref_of(const DatasetSpec& spec, const std::string& dataset, const std::string& role) {
  const auto it = spec.refs.find(role);
  if (it == spec.refs.end()) throw Error(ErrorKind::Parse, ds_path(dataset, role) + ": missing");
  return it->second;
}

template <class S>
const FinAlgebra<S>& algebra_ref(const Objects<S>& o, const std::string& name, const std::string& path) {
  const auto it = o.algebras.find(name);
  if (it == o.algebras.end()) throw Error(ErrorKind::UnresolvedReference, path + ": no algebra \"" + name + "\"", name);
  return it->second;
}

// Algebras serve as pointed spaces through their unit.
template <class S>
PointedSpace<S> space_ref(const Objects<S>& o, const std::string& name, const std::string& path) {
  if (const auto it = o.spaces.find(name); it != o.spaces.end()) return it->second;
  if (const auto it = o.algebras.find(name); it != o.algebras.end()) return PointedSpace<S>::of(it->second);
  throw Error(ErrorKind::UnresolvedReference, path + ": no space \"" + name + "\"", name);
}

template <class S>
const Coalgebra<S>& coalgebra_ref(const Objects<S>& o, const std::string& name, const std::string& path) {
  const auto it = o.coalgebras.find(name);
  if (it == o.coalgebras.end())
    throw Error(ErrorKind::UnresolvedReference, path + ": no coalgebra \"" + name + "\"", name);
  return it->second;
}

template <class S>
const TensorMap<S>& map_ref(const Objects<S>& o, const std::string& name, const std::string& path,
                            const Shape& domain, const Shape& codomain) {
  const auto it = o.maps.find(name);
  if (it == o.maps.end()) throw Error(ErrorKind::UnresolvedReference, path + ": no map \"" + name + "\"", name);
  const auto& m = it->second.map;
  if (m.domain() != domain || m.codomain() != codomain)
    throw Error(ErrorKind::ShapeMismatch, path + ": map \"" + name + "\" is " + m.domain().to_string() + " -> " +
                                              m.codomain().to_string() + ", expected " + domain.to_string() +
                                              " -> " + codomain.to_string());
  return m;
}

template <class S>
const TensorMap<S>& map_role(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds,
                             const std::string& role, const Shape& domain, const Shape& codomain) {
  return map_ref(o, ref_of(spec, ds, role), ds_path(ds, role), domain, codomain);
}

template <class S>
const FinAlgebra<S>& algebra_role(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds,
                                  const std::string& role) {
  return algebra_ref(o, ref_of(spec, ds, role), ds_path(ds, role));
}

template <class S>
PointedSpace<S> space_role(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds,
                           const std::string& role) {
  return space_ref(o, ref_of(spec, ds, role), ds_path(ds, role));
}

inline const DatasetSpec& dataset_ref(const Document& doc, const std::string& name, const std::string& path) {
  const auto it = doc.datasets.find(name);
  if (it == doc.datasets.end())
    throw Error(ErrorKind::UnresolvedReference, path + ": no dataset \"" + name + "\"", name);
  return it->second;
}

inline bool is_twosided_like(const std::string& kind) {
  return kind == "twosided" || kind == "iterated" || kind == "ma";
}

template <class S>
std::tuple<FinAlgebra<S>, FinAlgebra<S>, FinAlgebra<S>, TensorMap<S>, TensorMap<S>, TensorMap<S>> iterated_of(
    const Objects<S>& o, const DatasetSpec& spec, const std::string& ds) {
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto& B = algebra_role(o, spec, ds, "B");
  const auto& C = algebra_role(o, spec, ds, "C");
  const std::size_t a = A.dim(), b = B.dim(), c = C.dim();
  return {A,
          B,
          C,
          map_role(o, spec, ds, "R1", Shape{b, a}, Shape{a, b}),
          map_role(o, spec, ds, "R2", Shape{c, b}, Shape{b, c}),
          map_role(o, spec, ds, "R3", Shape{c, a}, Shape{a, c})};
}

template <class S>
MaData<S> ma_of(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds) {
  const auto& H = coalgebra_ref(o, ref_of(spec, ds, "H"), ds_path(ds, "H"));
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto& B = algebra_role(o, spec, ds, "B");
  const std::size_t h = H.dim(), a = A.dim(), b = B.dim();
  return MaData<S>{H,
                   A,
                   B,
                   map_role(o, spec, ds, "G", Shape{h, h}, Shape{a, h}),
                   map_role(o, spec, ds, "R", Shape{h, a}, Shape{a, h}),
                   map_role(o, spec, ds, "T", Shape{b, h}, Shape{h, b}),
                   map_role(o, spec, ds, "tau", Shape{h, h}, Shape{b})};
}

/// twosided, iterated (trivial E) or ma (assembled, unchecked).
template <class S>
TwoSidedData<S> twosided_of(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds) {
  if (spec.kind == "iterated") {
    const auto [A, B, C, R1, R2, R3] = iterated_of(o, spec, ds);
    return iterated_data(A, B, C, R1, R2, R3);
  }
  if (spec.kind == "ma") return ma_assemble(ma_of(o, spec, ds));
  if (spec.kind != "twosided")
    throw Error(ErrorKind::Precondition, "dataset \"" + ds + "\" of kind " + spec.kind + " is not two-sided data");
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto V = space_role(o, spec, ds, "V");
  const auto& C = algebra_role(o, spec, ds, "C");
  const std::size_t a = A.dim(), v = V.dim(), c = C.dim();
  return TwoSidedData<S>(A, V, C, map_role(o, spec, ds, "R1", Shape{v, a}, Shape{a, v}),
                         map_role(o, spec, ds, "R2", Shape{c, v}, Shape{v, c}),
                         map_role(o, spec, ds, "R3", Shape{c, a}, Shape{a, c}),
                         map_role(o, spec, ds, "E", Shape{v, v}, Shape{a, v, c}));
}

template <class S>
BrzData<S> brzezinski_of(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds) {
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto V = space_role(o, spec, ds, "V");
  const std::size_t a = A.dim(), v = V.dim();
  return BrzData<S>{A, V, map_role(o, spec, ds, "R", Shape{v, a}, Shape{a, v}),
                    map_role(o, spec, ds, "sigma", Shape{v, v}, Shape{a, v})};
}

template <class S>
MirrorData<S> mirror_of(const Objects<S>& o, const DatasetSpec& spec, const std::string& ds) {
  const auto W = space_role(o, spec, ds, "W");
  const auto& B = algebra_role(o, spec, ds, "B");
  const std::size_t w = W.dim(), b = B.dim();
  return MirrorData<S>{W, B, map_role(o, spec, ds, "P", Shape{b, w}, Shape{w, b}),
                       map_role(o, spec, ds, "nu", Shape{w, w}, Shape{w, b})};
}

template <class S>
std::tuple<FinAlgebra<S>, FinAlgebra<S>, TensorMap<S>> ttp_of(const Objects<S>& o, const DatasetSpec& spec,
                                                               const std::string& ds) {
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto& B = algebra_role(o, spec, ds, "B");
  return {A, B, map_role(o, spec, ds, "R", Shape{B.dim(), A.dim()}, Shape{A.dim(), B.dim()})};
}

template <class S>
std::tuple<FinAlgebra<S>, FinAlgebra<S>, PointedSpace<S>, FinAlgebra<S>> split_of(const Objects<S>& o,
                                                                                  const DatasetSpec& spec,
                                                                                  const std::string& ds) {
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto V = space_role(o, spec, ds, "V");
  const auto& C = algebra_role(o, spec, ds, "C");
  const auto& M = algebra_role(o, spec, ds, "M");
  if (M.dim() != A.dim() * V.dim() * C.dim())
    throw Error(ErrorKind::ShapeMismatch, ds_path(ds, "M") + ": dimension " + std::to_string(M.dim()) +
                                              " is not dim A * dim V * dim C");
  return {M, A, V, C};
}

template <class S>
struct UniversalInput {
  TwoSidedData<S> data;
  FinAlgebra<S> X;
  TensorMap<S> fA, fV, fC;
};

template <class S>
UniversalInput<S> universal_of(const Document& doc, const Objects<S>& o, const DatasetSpec& spec,
                               const std::string& ds) {
  const auto& inner_name = ref_of(spec, ds, "data");
  const auto& inner = dataset_ref(doc, inner_name, ds_path(ds, "data"));
  if (!is_twosided_like(inner.kind))
    throw Error(ErrorKind::Precondition, ds_path(ds, "data") + ": dataset \"" + inner_name + "\" is not two-sided");
  auto d = twosided_of(o, inner, inner_name);
  const auto& X = algebra_role(o, spec, ds, "X");
  const std::size_t x = X.dim();
  return UniversalInput<S>{d, X, map_role(o, spec, ds, "fA", Shape{d.A().dim()}, Shape{x}),
                           map_role(o, spec, ds, "fV", Shape{d.V().dim()}, Shape{x}),
                           map_role(o, spec, ds, "fC", Shape{d.C().dim()}, Shape{x})};
}

template <class S>
std::tuple<SearchSpec, FinAlgebra<S>, PointedSpace<S>, FinAlgebra<S>> search_of(const Objects<S>& o,
                                                                                const DatasetSpec& spec,
                                                                                const std::string& ds) {
  const auto& A = algebra_role(o, spec, ds, "A");
  const auto V = space_role(o, spec, ds, "V");
  const auto& C = algebra_role(o, spec, ds, "C");
  SearchSpec s;
  s.mode = spec.mode == "randomized" ? SearchMode::Randomized : SearchMode::Exhaustive;
  s.budget = spec.budget;
  s.seed = spec.seed;
  if constexpr (std::is_same_v<S, Zp>) {
    const std::size_t a = A.dim(), v = V.dim(), c = C.dim();
    const std::map<std::string, std::pair<Shape, Shape>> shapes{
        {"R1", {Shape{v, a}, Shape{a, v}}},
        {"R2", {Shape{c, v}, Shape{v, c}}},
        {"R3", {Shape{c, a}, Shape{a, c}}},
        {"E", {Shape{v, v}, Shape{a, v, c}}},
    };
    for (const auto& [role, name] : spec.frozen) {
      const auto it = shapes.find(role);
      if (it == shapes.end()) throw Error(ErrorKind::Parse, ds_path(ds, "frozen/" + role) + ": unknown role");
      s.frozen.emplace(role, map_ref(o, name, ds_path(ds, "frozen/" + role), it->second.first, it->second.second));
    }
  }
  return {s, A, V, C};
}

/// Resolves every reference of one dataset; throws on the first problem.
template <class S>
void validate_dataset(const Document& doc, const Objects<S>& o, const std::string& ds) {
  const auto& spec = doc.datasets.at(ds);
  if (is_twosided_like(spec.kind)) {
    if (spec.kind == "iterated") (void)iterated_of(o, spec, ds);
    if (spec.kind == "ma") (void)ma_of(o, spec, ds);
    (void)twosided_of(o, spec, ds);
  } else if (spec.kind == "brzezinski") {
    (void)brzezinski_of(o, spec, ds);
  } else if (spec.kind == "mirror") {
    (void)mirror_of(o, spec, ds);
  } else if (spec.kind == "ttp") {
    (void)ttp_of(o, spec, ds);
  } else if (spec.kind == "split") {
    (void)split_of(o, spec, ds);
  } else if (spec.kind == "universal") {
    (void)universal_of(doc, o, spec, ds);
  } else if (spec.kind == "search") {
    (void)search_of(o, spec, ds);
  }
}

}  // namespace xprod::detail

#endif  // XPROD_SRC_MATERIALIZE_HPP
