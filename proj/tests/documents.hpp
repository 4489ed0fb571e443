#ifndef XPROD_TESTS_DOCUMENTS_HPP
#define XPROD_TESTS_DOCUMENTS_HPP

// Documents built from fixtures, and a small reader for reports.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"
#include "xprod/run.hpp"

namespace docs {

using json = nlohmann::json;
using namespace xprod;

template <class S>
DocMap<S> named(std::vector<std::string> dom, std::vector<std::string> cod, const TensorMap<S>& m) {
  return DocMap<S>{std::move(dom), std::move(cod), m};
}

/// One twosided dataset "d" over algebras A, C and space V.
template <class S>
Document to_document(const TwoSidedData<S>& d) {
  Objects<S> o;
  o.algebras.emplace("A", d.A());
  o.algebras.emplace("C", d.C());
  o.spaces.emplace("V", d.V());
  o.maps.emplace("R1", named<S>({"V", "A"}, {"A", "V"}, d.R1()));
  o.maps.emplace("R2", named<S>({"C", "V"}, {"V", "C"}, d.R2()));
  o.maps.emplace("R3", named<S>({"C", "A"}, {"A", "C"}, d.R3()));
  o.maps.emplace("E", named<S>({"V", "V"}, {"A", "V", "C"}, d.E()));
  Document doc;
  doc.field = d.field();
  doc.objects = std::move(o);
  DatasetSpec spec;
  spec.kind = "twosided";
  for (const char* r : {"A", "V", "C", "R1", "R2", "R3", "E"}) spec.refs[r] = r;
  doc.datasets.emplace("d", spec);
  return doc;
}

template <class S>
std::string to_text(const TwoSidedData<S>& d) {
  return serialize_document(to_document(d));
}

template <class S>
Vector<S> vector_of(const Field& f, const json& j) {
  Vector<S> v = zero_vector<S>(f, j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = ScalarTraits<S>::parse(f, j[i].get<std::string>());
  return v;
}

template <class S>
Matrix<S> matrix_of(const Field& f, const json& rows) {
  const std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
  Matrix<S> m = zero_matrix<S>(f, r, c);
  for (std::size_t i = 0; i < r; ++i) m.row(i) = vector_of<S>(f, rows[i]).transpose();
  return m;
}

template <class S>
TensorMap<S> map_of(const Field& f, const json& j) {
  return TensorMap<S>(Shape(j["domain"].get<std::vector<std::size_t>>()),
                      Shape(j["codomain"].get<std::vector<std::size_t>>()), matrix_of<S>(f, j["matrix"]));
}

template <class S>
Witness<S> witness_of(const Field& f, const json& j) {
  return Witness<S>{j["slots"].get<std::vector<std::string>>(),
                    j["indices"].get<std::vector<std::size_t>>(),
                    j["identity"].get<std::string>(),
                    Shape(j["codomain"].get<std::vector<std::size_t>>()),
                    vector_of<S>(f, j["lhs"]),
                    vector_of<S>(f, j["rhs"])};
}

/// e_i e_j = sum_k c[i][j][k] e_k.
template <class S>
TensorMap<S> mul_of(const Field& f, const json& algebra) {
  const std::size_t n = algebra["dim"].get<std::size_t>();
  Matrix<S> m = zero_matrix<S>(f, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.col(i * n + j) = vector_of<S>(f, algebra["constants"][i][j]);
  return TensorMap<S>(Shape{n, n}, Shape{n}, m);
}

inline const json* condition(const json& report, const std::string& label) {
  for (const auto& c : report["conditions"])
    if (c["label"] == label) return &c;
  return nullptr;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace docs

#endif  // XPROD_TESTS_DOCUMENTS_HPP
