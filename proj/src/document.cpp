#include "xprod/document.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "materialize.hpp"

namespace xprod {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Parse, (path.empty() ? "/" : path) + ": " + msg);
}

// what() without the leading "Kind: ".
std::string message_of(const Error& e) {
  const std::string_view w = e.what(), kind = to_string(e.kind());
  return std::string(w.substr(0, kind.size()) == kind ? w.substr(std::min(w.size(), kind.size() + 2)) : w);
}

// Re-raise with the field path in front, keeping kind, label and witness.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string msg = message_of(e);
    if (msg.starts_with("/")) throw;
    throw Error(e.kind(), path + ": " + msg, e.label(), e.witness());
  }
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(path + "/" + key, "unknown field");
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "missing");
  return *it;
}

std::size_t as_dim(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0 || j.get<std::uint64_t>() > 4096)
    fail(path, "expected a positive dimension");
  return j.get<std::size_t>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const json& as_array(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  return j;
}

template <class S>
S as_scalar(const Field& f, const json& j, const std::string& path) {
  std::string text;
  if (j.is_number_integer())
    text = j.dump();
  else if (j.is_string())
    text = j.get<std::string>();
  else
    fail(path, "expected an integer or a string \"p/q\"");
  try {
    return ScalarTraits<S>::parse(f, text);
  } catch (const Error& e) {
    fail(path, message_of(e));
  }
}

template <class S>
Vector<S> as_vector(const Field& f, const json& j, std::size_t n, const std::string& path) {
  as_array(j, n, path);
  Vector<S> v = zero_vector<S>(f, n);
  for (std::size_t i = 0; i < n; ++i) v(i) = as_scalar<S>(f, j[i], path + "/" + std::to_string(i));
  return v;
}

template <class S>
Matrix<S> as_matrix(const Field& f, const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  as_array(j, rows, path);
  Matrix<S> m = zero_matrix<S>(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    as_array(j[r], cols, rp);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_scalar<S>(f, j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

// n x n x n array; t[i][j][k].
template <class S>
std::vector<std::vector<std::vector<S>>> as_cube(const Field& f, const json& j, std::size_t n,
                                                 const std::string& path) {
  as_array(j, n, path);
  std::vector<std::vector<std::vector<S>>> c(n, std::vector<std::vector<S>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string pi = path + "/" + std::to_string(i);
    as_array(j[i], n, pi);
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = as_vector<S>(f, j[i][k], n, pi + "/" + std::to_string(k));
      c[i][k].assign(v.data(), v.data() + n);
    }
  }
  return c;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

void check_name(const std::string& name, const std::string& path) {
  if (name.empty() || all_digits(name) || name.find('/') != std::string::npos)
    fail(path, "invalid name \"" + name + "\"");
}

Field parse_field(const json& j) {
  only_keys(j, "/field", {"kind", "p"});
  const auto& kind = as_string(member(j, "kind", "/field"), "/field/kind");
  if (kind == "rationals") {
    if (j.contains("p")) fail("/field/p", "not allowed for rationals");
    return Field::rationals();
  }
  if (kind != "prime") fail("/field/kind", "expected \"rationals\" or \"prime\"");
  const auto p = as_u64(member(j, "p", "/field"), "/field/p");
  return at_path("/field/p", [&] { return Field::prime(p); });
}

template <class S>
Objects<S> parse_objects(const Field& f, const json& root) {
  Objects<S> o;
  std::set<std::string> taken;
  const auto claim = [&](const std::string& name, const std::string& path) {
    check_name(name, path);
    if (!taken.insert(name).second) fail(path, "name \"" + name + "\" is already used");
  };

  if (root.contains("algebras")) {
    if (!root["algebras"].is_object()) fail("/algebras", "expected an object");
    for (const auto& [name, j] : root["algebras"].items()) {
      const std::string p = "/algebras/" + name;
      claim(name, p);
      only_keys(j, p, {"dim", "unit", "constants"});
      const std::size_t n = as_dim(member(j, "dim", p), p + "/dim");
      auto unit = as_vector<S>(f, member(j, "unit", p), n, p + "/unit");
      const auto c = as_cube<S>(f, member(j, "constants", p), n, p + "/constants");
      o.algebras.emplace(name, at_path(p, [&] { return algebra_from_constants<S>(f, c, unit); }));
    }
  }
  if (root.contains("spaces")) {
    if (!root["spaces"].is_object()) fail("/spaces", "expected an object");
    for (const auto& [name, j] : root["spaces"].items()) {
      const std::string p = "/spaces/" + name;
      claim(name, p);
      only_keys(j, p, {"dim", "unit"});
      const std::size_t n = as_dim(member(j, "dim", p), p + "/dim");
      auto unit = as_vector<S>(f, member(j, "unit", p), n, p + "/unit");
      o.spaces.emplace(name, at_path(p + "/unit", [&] { return PointedSpace<S>::make(f, unit); }));
    }
  }
  if (root.contains("coalgebras")) {
    if (!root["coalgebras"].is_object()) fail("/coalgebras", "expected an object");
    for (const auto& [name, j] : root["coalgebras"].items()) {
      const std::string p = "/coalgebras/" + name;
      claim(name, p);
      only_keys(j, p, {"dim", "comul", "counit", "unit"});
      const std::size_t n = as_dim(member(j, "dim", p), p + "/dim");
      const auto c = as_cube<S>(f, member(j, "comul", p), n, p + "/comul");
      Matrix<S> comul = zero_matrix<S>(f, n * n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) comul(a * n + b, i) = c[i][a][b];
      const auto counit = as_vector<S>(f, member(j, "counit", p), n, p + "/counit");
      auto unit = as_vector<S>(f, member(j, "unit", p), n, p + "/unit");
      o.coalgebras.emplace(name, at_path(p, [&] {
                             return Coalgebra<S>::make(f, TensorMap<S>(Shape{n}, Shape{n, n}, comul),
                                                       TensorMap<S>(Shape{n}, Shape{1}, Matrix<S>(counit.transpose())),
                                                       unit);
                           }));
    }
  }

  const auto factor = [&](const json& j, const std::string& path) -> std::pair<std::string, std::size_t> {
    if (j.is_number_unsigned()) return {std::to_string(as_dim(j, path)), as_dim(j, path)};
    const auto& name = as_string(j, path);
    if (const auto it = o.algebras.find(name); it != o.algebras.end()) return {name, it->second.dim()};
    if (const auto it = o.spaces.find(name); it != o.spaces.end()) return {name, it->second.dim()};
    if (const auto it = o.coalgebras.find(name); it != o.coalgebras.end()) return {name, it->second.dim()};
    if (name == "k") return {name, 1};  // the ground field, unless defined
    throw Error(ErrorKind::UnresolvedReference, path + ": no space \"" + name + "\"", name);
  };
  const auto factors = [&](const json& j, const std::string& path, std::vector<std::string>& names) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of factors");
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto [name, dim] = factor(j[i], path + "/" + std::to_string(i));
      names.push_back(std::move(name));
      dims.push_back(dim);
    }
    return Shape(std::move(dims));
  };

  if (root.contains("maps")) {
    if (!root["maps"].is_object()) fail("/maps", "expected an object");
    for (const auto& [name, j] : root["maps"].items()) {
      const std::string p = "/maps/" + name;
      check_name(name, p);
      only_keys(j, p, {"domain", "codomain", "matrix"});
      std::vector<std::string> dn, cn;
      const Shape dom = factors(member(j, "domain", p), p + "/domain", dn);
      const Shape cod = factors(member(j, "codomain", p), p + "/codomain", cn);
      auto m = as_matrix<S>(f, member(j, "matrix", p), cod.total(), dom.total(), p + "/matrix");
      o.maps.emplace(name, DocMap<S>{std::move(dn), std::move(cn), TensorMap<S>(dom, cod, std::move(m))});
    }
  }
  return o;
}

std::map<std::string, DatasetSpec> parse_datasets(const json& root) {
  std::map<std::string, DatasetSpec> out;
  if (!root.contains("datasets")) return out;
  if (!root["datasets"].is_object()) fail("/datasets", "expected an object");
  for (const auto& [name, j] : root["datasets"].items()) {
    const std::string p = "/datasets/" + name;
    check_name(name, p);
    if (!j.is_object()) fail(p, "expected an object");
    DatasetSpec spec;
    spec.kind = as_string(member(j, "kind", p), p + "/kind");
    const auto roles = dataset_roles().find(spec.kind);
    if (roles == dataset_roles().end()) fail(p + "/kind", "unknown dataset kind \"" + spec.kind + "\"");
    for (const auto& [key, value] : j.items()) {
      const std::string kp = p + "/" + key;
      if (key == "kind") continue;
      if (std::find(roles->second.begin(), roles->second.end(), key) != roles->second.end()) {
        spec.refs.emplace(key, as_string(value, kp));
      } else if (spec.kind == "search" && key == "mode") {
        spec.mode = as_string(value, kp);
        if (spec.mode != "exhaustive" && spec.mode != "randomized")
          fail(kp, "expected \"exhaustive\" or \"randomized\"");
      } else if (spec.kind == "search" && key == "budget") {
        spec.budget = as_u64(value, kp);
      } else if (spec.kind == "search" && key == "seed") {
        spec.seed = as_u64(value, kp);
      } else if (spec.kind == "search" && key == "frozen") {
        if (!value.is_object()) fail(kp, "expected an object");
        for (const auto& [role, map] : value.items()) spec.frozen.emplace(role, as_string(map, kp + "/" + role));
      } else {
        fail(kp, "unknown field");
      }
    }
    for (const auto& role : roles->second)
      if (!spec.refs.count(role)) fail(p + "/" + role, "missing");
    out.emplace(name, std::move(spec));
  }
  return out;
}

template <class S>
json scalar_json(const S& x) {
  return ScalarTraits<S>::format(x);
}

template <class S>
json vector_json(const Vector<S>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
  return out;
}

template <class S>
json matrix_json(const Matrix<S>& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json<S>(m.row(r).transpose()));
  return out;
}

json factors_json(const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& n : names) {
    if (all_digits(n))
      out.push_back(std::stoull(n));
    else
      out.push_back(n);
  }
  return out;
}

template <class S>
json objects_json(const Objects<S>& o) {
  json root = json::object();
  json algebras = json::object(), spaces = json::object(), coalgebras = json::object(), maps = json::object();
  for (const auto& [name, a] : o.algebras) {
    const std::size_t n = a.dim();
    json c = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json ci = json::array();
      for (std::size_t j = 0; j < n; ++j) ci.push_back(vector_json<S>(a.mul().column(i * n + j)));
      c.push_back(std::move(ci));
    }
    algebras[name] = {{"dim", n}, {"unit", vector_json(a.unit())}, {"constants", std::move(c)}};
  }
  for (const auto& [name, s] : o.spaces) spaces[name] = {{"dim", s.dim()}, {"unit", vector_json(s.unit())}};
  for (const auto& [name, h] : o.coalgebras) {
    const std::size_t n = h.dim();
    json c = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json ci = json::array();
      for (std::size_t a = 0; a < n; ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < n; ++b) row.push_back(scalar_json(h.comul()(a * n + b, i)));
        ci.push_back(std::move(row));
      }
      c.push_back(std::move(ci));
    }
    coalgebras[name] = {{"dim", n},
                        {"comul", std::move(c)},
                        {"counit", vector_json<S>(h.counit().matrix().row(0).transpose())},
                        {"unit", vector_json(h.unit())}};
  }
  for (const auto& [name, m] : o.maps)
    maps[name] = {{"domain", factors_json(m.domain)},
                  {"codomain", factors_json(m.codomain)},
                  {"matrix", matrix_json(m.map.matrix())}};
  root["algebras"] = std::move(algebras);
  root["spaces"] = std::move(spaces);
  root["coalgebras"] = std::move(coalgebras);
  root["maps"] = std::move(maps);
  return root;
}

}  // namespace

const std::map<std::string, std::vector<std::string>>& dataset_roles() {
  static const std::map<std::string, std::vector<std::string>> roles{
      {"twosided", {"A", "V", "C", "R1", "R2", "R3", "E"}},
      {"brzezinski", {"A", "V", "R", "sigma"}},
      {"mirror", {"W", "B", "P", "nu"}},
      {"ttp", {"A", "B", "R"}},
      {"ma", {"H", "A", "B", "G", "R", "T", "tau"}},
      {"iterated", {"A", "B", "C", "R1", "R2", "R3"}},
      {"split", {"M", "A", "V", "C"}},
      {"universal", {"data", "X", "fA", "fV", "fC"}},
      {"search", {"A", "V", "C"}},
  };
  return roles;
}

Document parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("syntax error: ") + e.what());
  }
  only_keys(root, "", {"field", "algebras", "spaces", "coalgebras", "maps", "datasets"});

  Document doc;
  doc.field = parse_field(member(root, "field", ""));
  if (doc.field.is_prime())
    doc.objects = parse_objects<Zp>(doc.field, root);
  else
    doc.objects = parse_objects<Rational>(doc.field, root);
  doc.datasets = parse_datasets(root);
  std::visit(
      [&](const auto& o) {
        for (const auto& [name, _] : doc.datasets)
          at_path("/datasets/" + name, [&] { detail::validate_dataset(doc, o, name); });
      },
      doc.objects);
  return doc;
}

std::string serialize_document(const Document& doc) {
  json root = std::visit([](const auto& o) { return objects_json(o); }, doc.objects);
  if (doc.field.is_prime())
    root["field"] = {{"kind", "prime"}, {"p", doc.field.modulus()}};
  else
    root["field"] = {{"kind", "rationals"}};
  json datasets = json::object();
  for (const auto& [name, spec] : doc.datasets) {
    json d = {{"kind", spec.kind}};
    for (const auto& [role, ref] : spec.refs) d[role] = ref;
    if (spec.kind == "search") {
      d["mode"] = spec.mode;
      d["budget"] = spec.budget;
      d["seed"] = spec.seed;
      d["frozen"] = json::object();
      for (const auto& [role, ref] : spec.frozen) d["frozen"][role] = ref;
    }
    datasets[name] = std::move(d);
  }
  root["datasets"] = std::move(datasets);
  return root.dump(2) + "\n";
}

}  // namespace xprod
