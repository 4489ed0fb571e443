#include "xprod/run.hpp"

#include <algorithm>

#include <json.hpp>

#include "materialize.hpp"

namespace xprod {

namespace {

using json = nlohmann::json;

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::UnresolvedReference:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::FieldMismatch:
    case ErrorKind::NotPrime:
    case ErrorKind::Precondition:
    case ErrorKind::SearchSpaceTooLarge:
      return true;
    default:
      return false;
  }
}

json shape_json(const Shape& s) { return s.dims(); }

template <class S>
json vector_json(const Vector<S>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(ScalarTraits<S>::format(v(i)));
  return out;
}

template <class S>
json map_json(const TensorMap<S>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.matrix().rows(); ++r) rows.push_back(vector_json<S>(m.matrix().row(r).transpose()));
  return {{"domain", shape_json(m.domain())}, {"codomain", shape_json(m.codomain())}, {"matrix", std::move(rows)}};
}

template <class S>
json algebra_json(const TensorMap<S>& mul, const Vector<S>& unit) {
  const std::size_t n = mul.codomain().total();
  json c = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json ci = json::array();
    for (std::size_t j = 0; j < n; ++j) ci.push_back(vector_json<S>(mul.column(i * n + j)));
    c.push_back(std::move(ci));
  }
  return {{"dim", n}, {"unit", vector_json(unit)}, {"constants", std::move(c)}};
}

template <class S>
json condition_json(const ConditionResult<S>& c) {
  json out = {{"label", c.label}, {"pass", c.pass}};
  if (c.witness) {
    const auto& w = *c.witness;
    out["witness"] = {{"slots", w.slots},           {"indices", w.indices},   {"identity", w.identity},
                      {"codomain", shape_json(w.codomain)}, {"lhs", vector_json(w.lhs)}, {"rhs", vector_json(w.rhs)}};
  }
  return out;
}

template <class S>
json conditions_json(const Report<S>& r) {
  json out = json::array();
  for (const auto& c : r.entries) out.push_back(condition_json(c));
  return out;
}

json error_json(const Error& e) {
  return {{"kind", to_string(e.kind())}, {"message", e.what()}, {"label", e.label()}, {"witness", e.witness()}};
}

// One command on one dataset. Fills `out` and returns whether it passed;
// library errors propagate.
template <class S>
class Runner {
 public:
  Runner(const Document& doc, const Objects<S>& o, const std::string& name, const RunOptions& opt, json& out)
      : doc_(doc), o_(o), name_(name), spec_(doc.datasets.at(name)), opt_(opt), out_(out), f_(doc.field) {}

  bool dispatch(const std::string& command) {
    if (command == "check") return check();
    if (command == "build") return build();
    if (command == "agree") return agree();
    if (command == "extract") return extract_cmd();
    if (command == "universal") return universal();
    if (command == "search") return search();
    if (command == "transport") return transport();
    throw Error(ErrorKind::Precondition, "unknown command \"" + command + "\"");
  }

 private:
  bool twosided_kind() const { return detail::is_twosided_like(spec_.kind); }

  [[noreturn]] void unsupported(const std::string& command) const {
    throw Error(ErrorKind::Precondition, command + " does not apply to a dataset of kind " + spec_.kind);
  }

  TwoSidedData<S> twosided() const { return detail::twosided_of(o_, spec_, name_); }

  Report<S> conditions() const {
    if (spec_.kind == "iterated") {
      const auto [A, B, C, R1, R2, R3] = detail::iterated_of(o_, spec_, name_);
      return check_iterated(A, B, C, R1, R2, R3);
    }
    if (twosided_kind()) return check_twosided(twosided());
    if (spec_.kind == "brzezinski") return check_brzezinski(detail::brzezinski_of(o_, spec_, name_));
    if (spec_.kind == "mirror") return check_mirror(detail::mirror_of(o_, spec_, name_));
    if (spec_.kind == "ttp") {
      const auto [A, B, R] = detail::ttp_of(o_, spec_, name_);
      return check_twisting(R, A, B);
    }
    unsupported("check");
  }

  bool check() {
    Report<S> r;
    if (!opt_.condition.empty() && spec_.kind != "iterated" && twosided_kind()) {
      r.add(check_twosided_condition(twosided(), opt_.condition));
    } else {
      r = conditions();
      if (!opt_.condition.empty()) {
        const auto* c = r.find(opt_.condition);
        if (!c) throw Error(ErrorKind::Precondition, "no condition \"" + opt_.condition + "\" for kind " + spec_.kind);
        Report<S> one;
        one.add(*c);
        r = std::move(one);
      }
    }
    out_["conditions"] = conditions_json(r);
    return r.all_pass();
  }

  // Product and unit without any check.
  std::pair<TensorMap<S>, Vector<S>> raw_product() const {
    if (twosided_kind()) {
      const auto d = twosided();
      return {twosided_product(d), kron(kron(d.A().unit(), d.V().unit()), d.C().unit())};
    }
    if (spec_.kind == "brzezinski") {
      const auto d = detail::brzezinski_of(o_, spec_, name_);
      return {brzezinski_product(d), kron(d.A.unit(), d.V.unit())};
    }
    if (spec_.kind == "mirror") {
      const auto d = detail::mirror_of(o_, spec_, name_);
      return {mirror_product(d), kron(d.W.unit(), d.B.unit())};
    }
    const auto [A, B, R] = detail::ttp_of(o_, spec_, name_);
    return {ttp_product(A, B, R), kron(A.unit(), B.unit())};
  }

  FinAlgebra<S> checked_build() const {
    if (spec_.kind == "iterated") {
      const auto [A, B, C, R1, R2, R3] = detail::iterated_of(o_, spec_, name_);
      return iterated_ttp(A, B, C, R1, R2, R3);
    }
    if (twosided_kind()) return build_twosided(twosided());
    if (spec_.kind == "brzezinski") return build_brzezinski(detail::brzezinski_of(o_, spec_, name_));
    if (spec_.kind == "mirror") return build_mirror(detail::mirror_of(o_, spec_, name_));
    const auto [A, B, R] = detail::ttp_of(o_, spec_, name_);
    return build_ttp(A, B, R);
  }

  bool build() {
    if (!twosided_kind() && spec_.kind != "brzezinski" && spec_.kind != "mirror" && spec_.kind != "ttp")
      unsupported("build");
    const auto r = conditions();
    out_["conditions"] = conditions_json(r);
    if (!opt_.force) {
      if (!r.all_pass()) {
        out_["error"] = error_json(axiom_failure(r, "build"));
        return false;
      }
      const auto a = checked_build();
      out_["algebra"] = algebra_json(a.mul(), a.unit());
      return true;
    }
    const auto [mul, unit] = raw_product();
    out_["algebra"] = algebra_json(mul, unit);
    if (const auto err = validate_algebra(f_, mul, unit)) {
      out_["error"] = error_json(*err);
      return false;
    }
    return r.all_pass();
  }

  bool agree() {
    if (!twosided_kind()) unsupported("agree");
    const auto r = presentations_agree(twosided());
    out_["conditions"] = conditions_json(r);
    return r.all_pass();
  }

  static json maps_json(const TwoSidedData<S>& d) {
    return {{"R1", map_json(d.R1())}, {"R2", map_json(d.R2())}, {"R3", map_json(d.R3())}, {"E", map_json(d.E())}};
  }

  bool extract_cmd() {
    if (twosided_kind()) {
      const auto d = twosided();
      const auto M = build_twosided(d);
      const auto e = extract(M, d.A(), d.V(), d.C());
      out_["algebra"] = algebra_json(M.mul(), M.unit());
      out_["maps"] = maps_json(e);
      ConditionResult<S> rt{"round-trip", true, std::nullopt};
      const std::vector<std::pair<const TensorMap<S>*, const TensorMap<S>*>> pairs{
          {&e.R1(), &d.R1()}, {&e.R2(), &d.R2()}, {&e.R3(), &d.R3()}, {&e.E(), &d.E()}};
      const char* names[] = {"R1", "R2", "R3", "E"};
      for (std::size_t i = 0; i < pairs.size() && rt.pass; ++i)
        rt = compare_maps<S>("round-trip", {"x", "y"}, *pairs[i].first, *pairs[i].second, names[i]);
      Report<S> r;
      r.add(rt);
      out_["conditions"] = conditions_json(r);
      return rt.pass;
    }
    if (spec_.kind != "split") unsupported("extract");
    const auto [M, A, V, C] = detail::split_of(o_, spec_, name_);
    const auto e = extract(M, A, V, C);
    out_["maps"] = maps_json(e);
    const auto r = check_twosided(e);
    out_["conditions"] = conditions_json(r);
    return r.all_pass();
  }

  bool universal() {
    if (spec_.kind != "universal") unsupported("universal");
    const auto u = detail::universal_of(doc_, o_, spec_, name_);
    const auto f = universal_map(u.data, u.X, u.fA, u.fV, u.fC);
    out_["maps"] = {{"f", map_json(f)}};
    const auto r = is_algebra_map(f, build_twosided(u.data), u.X);
    out_["conditions"] = conditions_json(r);
    return r.all_pass();
  }

  bool search() {
    if (spec_.kind != "search") unsupported("search");
    if constexpr (!std::is_same_v<S, Zp>) {
      throw Error(ErrorKind::FieldMismatch, "search needs a prime field");
    } else {
      auto [s, A, V, C] = detail::search_of(o_, spec_, name_);
      if (opt_.seed) s.seed = *opt_.seed;
      const auto res = search_fp(s, A, V, C, std::max(1u, opt_.threads));
      out_["space"] = res.space;
      out_["mode"] = spec_.mode;
      out_["seed"] = s.seed;
      json sols = json::array();
      for (const auto& d : res.solutions) sols.push_back(maps_json(d));
      out_["solutions"] = std::move(sols);
      return true;
    }
  }

  bool transport() {
    if (!twosided_kind()) unsupported("transport");
    const auto d = twosided();
    Report<S> r;
    json findings = json::array();
    bool applied = false;
    try {
      r.append(remark1_transport(d).report);
      applied = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Precondition) throw;
    }
    try {
      const auto lr = remark2_lr(d);
      r.append(lr.report);
      auto mf = lr.mirror_form;
      mf.label = "mirror-form";
      findings.push_back(condition_json(mf));
      applied = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Precondition) throw;
    }
    if (!applied) throw Error(ErrorKind::Precondition, "transport needs R1 or R3 to be the flip");
    out_["conditions"] = conditions_json(r);
    out_["findings"] = std::move(findings);
    return r.all_pass();
  }

  const Document& doc_;
  const Objects<S>& o_;
  const std::string& name_;
  const DatasetSpec& spec_;
  const RunOptions& opt_;
  json& out_;
  Field f_;
};

RunResult finish(json report, int code) {
  return RunResult{code, report.dump(2) + "\n"};
}

RunResult error_result(json report, const Error& e) {
  report["status"] = "error";
  report["error"] = error_json(e);
  return finish(std::move(report), is_input_error(e.kind()) ? 2 : 1);
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"check", "build", "agree", "extract", "universal", "search", "transport"};
  return c;
}

RunResult run(const std::string& command, const Document& doc, const RunOptions& options) {
  json report = {{"command", command}, {"field", doc.field.to_string()}};
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw Error(ErrorKind::Precondition, "unknown command \"" + command + "\"");
    std::string name = options.dataset;
    if (name.empty()) {
      if (doc.datasets.size() != 1)
        throw Error(ErrorKind::Precondition, "the document has " + std::to_string(doc.datasets.size()) +
                                                 " datasets; choose one with --dataset");
      name = doc.datasets.begin()->first;
    }
    report["dataset"] = name;
    const auto& spec = detail::dataset_ref(doc, name, "--dataset");
    report["kind"] = spec.kind;
    const bool pass = std::visit(
        [&](const auto& o) {
          using S = typename std::decay_t<decltype(o.maps)>::mapped_type::Scalar;
          return Runner<S>(doc, o, name, options, report).dispatch(command);
        },
        doc.objects);
    report["status"] = pass ? "pass" : "fail";
    return finish(std::move(report), pass ? 0 : 1);
  } catch (const Error& e) {
    return error_result(std::move(report), e);
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = {{"kind", "Internal"}, {"message", e.what()}, {"label", ""}, {"witness", json::array()}};
    return finish(std::move(report), 1);
  }
}

RunResult run_text(const std::string& command, std::string_view text, const RunOptions& options) {
  try {
    const auto doc = parse_document(text);
    return run(command, doc, options);
  } catch (const Error& e) {
    return error_result(json{{"command", command}}, e);
  }
}

}  // namespace xprod
