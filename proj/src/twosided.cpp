#include "xprod/twosided.hpp"

#include <array>
#include <functional>

#include "checks.hpp"
#include "xprod/sweedler.hpp"

namespace xprod {

using detail::revalidate;
using detail::two_factor;
using detail::unit_pair;

template <class S>
TwoSidedData<S>::TwoSidedData(FinAlgebra<S> A, PointedSpace<S> V, FinAlgebra<S> C, TensorMap<S> R1,
                              TensorMap<S> R2, TensorMap<S> R3, TensorMap<S> E)
    : A_(std::move(A)),
      V_(std::move(V)),
      C_(std::move(C)),
      R1_(two_factor(R1, V_.dim(), A_.dim(), A_.dim(), V_.dim(), "R1")),
      R2_(two_factor(R2, C_.dim(), V_.dim(), V_.dim(), C_.dim(), "R2")),
      R3_(two_factor(R3, C_.dim(), A_.dim(), A_.dim(), C_.dim(), "R3")),
      E_(E) {
  if (A_.field() != V_.field() || A_.field() != C_.field())
    throw Error(ErrorKind::FieldMismatch, "A, V and C are over different fields");
  const std::size_t na = A_.dim(), nv = V_.dim(), nc = C_.dim();
  if (E.domain().total() != nv * nv || E.codomain().total() != na * nv * nc)
    throw Error(ErrorKind::ShapeMismatch,
                "E has the wrong shape: " + E.domain().to_string() + " -> " + E.codomain().to_string());
  E_ = E.reshaped(Shape{nv, nv}, Shape{na, nv, nc});
}

const std::vector<std::string>& twosided_labels() {
  static const std::vector<std::string> labels{"twR31", "twR32",  "twR33",  "unit-R1", "unit-R2", "unit-E",
                                               "equiv1", "equiv2", "equiv3", "equiv4",  "equiv5",  "equiv6"};
  return labels;
}

namespace {

template <class S>
struct Ctx {
  const TwoSidedData<S>& d;
  const Field& f;
  std::size_t na, nv, nc;
  Expansion<S> mA, mC, r1, r2, r3, e;

  explicit Ctx(const TwoSidedData<S>& data)
      : d(data),
        f(data.field()),
        na(data.A().dim()),
        nv(data.V().dim()),
        nc(data.C().dim()),
        mA(data.A().mul()),
        mC(data.C().mul()),
        r1(data.R1()),
        r2(data.R2()),
        r3(data.R3()),
        e(data.E()) {}

  std::size_t avc(std::size_t a, std::size_t v, std::size_t c) const { return (a * nv + v) * nc + c; }
};

using Multi = std::vector<std::size_t>;

template <class S>
using Eval = std::function<void(const Multi&, Vector<S>&)>;

template <class S>
TensorMap<S> tabulate(const Field& f, const Shape& domain, const Shape& codomain, const Eval<S>& eval) {
  Matrix<S> m = zero_matrix<S>(f, codomain.total(), domain.total());
  for (std::size_t col = 0; col < domain.total(); ++col) {
    Vector<S> acc = zero_vector<S>(f, codomain.total());
    eval(unflatten(domain, col), acc);
    m.col(static_cast<Eigen::Index>(col)) = acc;
  }
  return TensorMap<S>(domain, codomain, std::move(m));
}

template <class S>
bool same_result(const ConditionResult<S>& x, const ConditionResult<S>& y) {
  if (x.pass != y.pass) return false;
  if (x.pass) return true;
  return x.witness->indices == y.witness->indices && x.witness->lhs == y.witness->lhs &&
         x.witness->rhs == y.witness->rhs;
}

/// Runs the elementwise form and the composite form of one identity and
/// insists that they agree.
template <class S>
ConditionResult<S> dual_route(const Ctx<S>& x, std::string label, std::vector<std::string> slots, const Shape& dom,
                              const Shape& cod, const Eval<S>& lhs, const Eval<S>& rhs,
                              const TensorMap<S>& composite_lhs, const TensorMap<S>& composite_rhs) {
  auto elementwise = scan_tuples<S>(label, slots, x.f, dom, cod, lhs, rhs);
  auto composite = compare_maps<S>(label, slots, composite_lhs, composite_rhs);
  if (!same_result(elementwise, composite))
    throw Error(ErrorKind::InternalMismatch, "elementwise and composite forms of " + label + " disagree", label);
  return elementwise;
}

template <class S>
ConditionResult<S> twR32(const Ctx<S>& x) {
  const auto nc = x.nc;
  const Shape dom{x.nc, x.na, x.na}, cod{x.na, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& p : x.mA(m[1], m[2]))
      for (const auto& t : x.r3(m[0], p.idx[0])) acc(t.idx[0] * nc + t.idx[1]) += p.coef * t.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r3(m[0], m[1]))
      for (const auto& u : x.r3(t.idx[1], m[2]))
        for (const auto& p : x.mA(t.idx[0], u.idx[0])) acc(p.idx[0] * nc + u.idx[1]) += t.coef * u.coef * p.coef;
  };
  const auto& R3 = x.d.R3();
  const auto& mu = x.d.A().mul();
  return dual_route<S>(x, "twR32", {"c", "a", "a'"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(1, mu).then(0, R3).map(),
                       Composite<S>(x.f, dom).then(0, R3).then(1, R3).then(0, mu).map());
}

template <class S>
ConditionResult<S> twR33(const Ctx<S>& x) {
  const auto nc = x.nc;
  const Shape dom{x.nc, x.nc, x.na}, cod{x.na, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& p : x.mC(m[0], m[1]))
      for (const auto& t : x.r3(p.idx[0], m[2])) acc(t.idx[0] * nc + t.idx[1]) += p.coef * t.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r3(m[1], m[2]))
      for (const auto& u : x.r3(m[0], t.idx[0]))
        for (const auto& p : x.mC(u.idx[1], t.idx[1])) acc(u.idx[0] * nc + p.idx[0]) += t.coef * u.coef * p.coef;
  };
  const auto& R3 = x.d.R3();
  const auto& mu = x.d.C().mul();
  return dual_route<S>(x, "twR33", {"c", "c'", "a"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(0, mu).then(0, R3).map(),
                       Composite<S>(x.f, dom).then(1, R3).then(0, R3).then(1, mu).map());
}

// (aa')_R1 (x) v_R1 = a_R1 a'_r1 (x) (v_R1)_r1
template <class S>
ConditionResult<S> equiv1(const Ctx<S>& x) {
  const auto nv = x.nv;
  const Shape dom{x.nv, x.na, x.na}, cod{x.na, x.nv};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& p : x.mA(m[1], m[2]))
      for (const auto& t : x.r1(m[0], p.idx[0])) acc(t.idx[0] * nv + t.idx[1]) += p.coef * t.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r1(m[0], m[1]))
      for (const auto& u : x.r1(t.idx[1], m[2]))
        for (const auto& p : x.mA(t.idx[0], u.idx[0])) acc(p.idx[0] * nv + u.idx[1]) += t.coef * u.coef * p.coef;
  };
  const auto& R1 = x.d.R1();
  const auto& mu = x.d.A().mul();
  return dual_route<S>(x, "equiv1", {"v", "a", "a'"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(1, mu).then(0, R1).map(),
                       Composite<S>(x.f, dom).then(0, R1).then(1, R1).then(0, mu).map());
}

// v_R2 (x) (cc')_R2 = (v_R2)_r2 (x) c_r2 c'_R2
template <class S>
ConditionResult<S> equiv2(const Ctx<S>& x) {
  const auto nc = x.nc;
  const Shape dom{x.nc, x.nc, x.nv}, cod{x.nv, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& p : x.mC(m[0], m[1]))
      for (const auto& t : x.r2(p.idx[0], m[2])) acc(t.idx[0] * nc + t.idx[1]) += p.coef * t.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r2(m[1], m[2]))
      for (const auto& u : x.r2(m[0], t.idx[0]))
        for (const auto& p : x.mC(u.idx[1], t.idx[1])) acc(u.idx[0] * nc + p.idx[0]) += t.coef * u.coef * p.coef;
  };
  const auto& R2 = x.d.R2();
  const auto& mu = x.d.C().mul();
  return dual_route<S>(x, "equiv2", {"c", "c'", "v"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(0, mu).then(0, R2).map(),
                       Composite<S>(x.f, dom).then(1, R2).then(0, R2).then(1, mu).map());
}

// (a_R1)_R3 (x) (v_R1)_R2 (x) (c_R3)_R2 = (a_R3)_R1 (x) (v_R2)_R1 (x) (c_R2)_R3
template <class S>
ConditionResult<S> equiv3(const Ctx<S>& x) {
  const Shape dom{x.nc, x.nv, x.na}, cod{x.na, x.nv, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r1(m[1], m[2]))
      for (const auto& u : x.r3(m[0], t.idx[0]))
        for (const auto& w : x.r2(u.idx[1], t.idx[1]))
          acc(x.avc(u.idx[0], w.idx[0], w.idx[1])) += t.coef * u.coef * w.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r2(m[0], m[1]))
      for (const auto& u : x.r3(t.idx[1], m[2]))
        for (const auto& w : x.r1(t.idx[0], u.idx[0]))
          acc(x.avc(w.idx[0], w.idx[1], u.idx[1])) += t.coef * u.coef * w.coef;
  };
  const auto &R1 = x.d.R1(), &R2 = x.d.R2(), &R3 = x.d.R3();
  return dual_route<S>(x, "equiv3", {"c", "v", "a"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(1, R1).then(0, R3).then(1, R2).map(),
                       Composite<S>(x.f, dom).then(0, R2).then(1, R3).then(0, R1).map());
}

// (a_R1)_r1 E_A(v_r1, v'_R1) (x) E_V(..) (x) E_C(..) = E_A(v, v')(a_R3)_R1 (x) E_V(v, v')_R1 (x) E_C(v, v')_R3
template <class S>
ConditionResult<S> equiv4(const Ctx<S>& x) {
  const Shape dom{x.nv, x.nv, x.na}, cod{x.na, x.nv, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r1(m[1], m[2]))
      for (const auto& u : x.r1(m[0], t.idx[0]))
        for (const auto& g : x.e(u.idx[1], t.idx[1]))
          for (const auto& p : x.mA(u.idx[0], g.idx[0]))
            acc(x.avc(p.idx[0], g.idx[1], g.idx[2])) += t.coef * u.coef * g.coef * p.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& g : x.e(m[0], m[1]))
      for (const auto& t : x.r3(g.idx[2], m[2]))
        for (const auto& u : x.r1(g.idx[1], t.idx[0]))
          for (const auto& p : x.mA(g.idx[0], u.idx[0]))
            acc(x.avc(p.idx[0], u.idx[1], t.idx[1])) += g.coef * t.coef * u.coef * p.coef;
  };
  const auto &R1 = x.d.R1(), &R3 = x.d.R3(), &E = x.d.E();
  const auto& mu = x.d.A().mul();
  return dual_route<S>(x, "equiv4", {"v", "v'", "a"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(1, R1).then(0, R1).then(1, E).then(0, mu).map(),
                       Composite<S>(x.f, dom).then(0, E).then(2, R3).then(1, R1).then(0, mu).map());
}

// E_A(v_R2, v'_r2) (x) E_V(..) (x) E_C(..)(c_R2)_r2 = E_A(v, v')_R3 (x) E_V(v, v')_R2 (x) (c_R3)_R2 E_C(v, v')
template <class S>
ConditionResult<S> equiv5(const Ctx<S>& x) {
  const Shape dom{x.nc, x.nv, x.nv}, cod{x.na, x.nv, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r2(m[0], m[1]))
      for (const auto& u : x.r2(t.idx[1], m[2]))
        for (const auto& g : x.e(t.idx[0], u.idx[0]))
          for (const auto& p : x.mC(g.idx[2], u.idx[1]))
            acc(x.avc(g.idx[0], g.idx[1], p.idx[0])) += t.coef * u.coef * g.coef * p.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& g : x.e(m[1], m[2]))
      for (const auto& t : x.r3(m[0], g.idx[0]))
        for (const auto& u : x.r2(t.idx[1], g.idx[1]))
          for (const auto& p : x.mC(u.idx[1], g.idx[2]))
            acc(x.avc(t.idx[0], u.idx[0], p.idx[0])) += g.coef * t.coef * u.coef * p.coef;
  };
  const auto &R2 = x.d.R2(), &R3 = x.d.R3(), &E = x.d.E();
  const auto& mu = x.d.C().mul();
  return dual_route<S>(x, "equiv5", {"c", "v", "v'"}, dom, cod, lhs, rhs,
                       Composite<S>(x.f, dom).then(0, R2).then(1, R2).then(0, E).then(2, mu).map(),
                       Composite<S>(x.f, dom).then(1, E).then(0, R3).then(1, R2).then(2, mu).map());
}

// E_A(v', v'')_R1 E_A(v_R1, E_V(v', v'')) (x) E_V(v_R1, E_V(v', v'')) (x) E_C(v_R1, E_V(v', v'')) E_C(v', v'')
//   = E_A(v, v') E_A(E_V(v, v'), v''_R2) (x) E_V(E_V(v, v'), v''_R2) (x) E_C(E_V(v, v'), v''_R2) E_C(v, v')_R2
template <class S>
ConditionResult<S> equiv6(const Ctx<S>& x) {
  const Shape dom{x.nv, x.nv, x.nv}, cod{x.na, x.nv, x.nc};
  Eval<S> lhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& g : x.e(m[1], m[2]))
      for (const auto& t : x.r1(m[0], g.idx[0]))
        for (const auto& h : x.e(t.idx[1], g.idx[1]))
          for (const auto& p : x.mA(t.idx[0], h.idx[0]))
            for (const auto& q : x.mC(h.idx[2], g.idx[2]))
              acc(x.avc(p.idx[0], h.idx[1], q.idx[0])) += g.coef * t.coef * h.coef * p.coef * q.coef;
  };
  Eval<S> rhs = [&](const Multi& m, Vector<S>& acc) {
    for (const auto& g : x.e(m[0], m[1]))
      for (const auto& t : x.r2(g.idx[2], m[2]))
        for (const auto& h : x.e(g.idx[1], t.idx[0]))
          for (const auto& p : x.mA(g.idx[0], h.idx[0]))
            for (const auto& q : x.mC(h.idx[2], t.idx[1]))
              acc(x.avc(p.idx[0], h.idx[1], q.idx[0])) += g.coef * t.coef * h.coef * p.coef * q.coef;
  };
  const auto &R1 = x.d.R1(), &R2 = x.d.R2(), &E = x.d.E();
  const auto& muA = x.d.A().mul();
  const auto& muC = x.d.C().mul();
  return dual_route<S>(
      x, "equiv6", {"v", "v'", "v''"}, dom, cod, lhs, rhs,
      Composite<S>(x.f, dom).then(1, E).then(0, R1).then(1, E).then(0, muA).then(2, muC).map(),
      Composite<S>(x.f, dom).then(0, E).then(2, R2).then(1, E).then(0, muA).then(2, muC).map());
}

template <class S>
ConditionResult<S> evaluate(const Ctx<S>& x, std::string_view label) {
  const auto& d = x.d;
  const Field& f = x.f;
  const auto &uA = d.A().unit(), &uV = d.V().unit(), &uC = d.C().unit();
  if (label == "twR31")
    return unit_pair<S>(f, "twR31", d.R3(), uC, embed<S>(f, x.na, 0, {uC}), "a", "R3(1_C (x) a) = a (x) 1_C", uA,
                        embed<S>(f, x.nc, 1, {uA}), "c", "R3(c (x) 1_A) = 1_A (x) c");
  if (label == "twR32") return twR32(x);
  if (label == "twR33") return twR33(x);
  if (label == "unit-R1")
    return unit_pair<S>(f, "unit-R1", d.R1(), uV, embed<S>(f, x.na, 0, {uV}), "a", "R1(1_V (x) a) = a (x) 1_V",
                        uA, embed<S>(f, x.nv, 1, {uA}), "v", "R1(v (x) 1_A) = 1_A (x) v");
  if (label == "unit-R2")
    return unit_pair<S>(f, "unit-R2", d.R2(), uC, embed<S>(f, x.nv, 0, {uC}), "v", "R2(1_C (x) v) = v (x) 1_C",
                        uV, embed<S>(f, x.nc, 1, {uV}), "c", "R2(c (x) 1_V) = 1_V (x) c");
  if (label == "unit-E")
    return unit_pair<S>(f, "unit-E", d.E(), uV, embed<S>(f, x.nv, 1, {uA, uC}), "v",
                        "E(1_V (x) v) = 1_A (x) v (x) 1_C", uV, embed<S>(f, x.nv, 1, {uA, uC}), "v",
                        "E(v (x) 1_V) = 1_A (x) v (x) 1_C");
  if (label == "equiv1") return equiv1(x);
  if (label == "equiv2") return equiv2(x);
  if (label == "equiv3") return equiv3(x);
  if (label == "equiv4") return equiv4(x);
  if (label == "equiv5") return equiv5(x);
  if (label == "equiv6") return equiv6(x);
  throw Error(ErrorKind::Precondition, "unknown condition \"" + std::string(label) + "\"");
}

template <class S>
void require_same(const TensorMap<S>& a, const TensorMap<S>& b, const std::string& what) {
  if (a.matrix() != b.matrix())
    throw Error(ErrorKind::InternalMismatch, "elementwise and composite forms of " + what + " disagree");
}

}  // namespace

template <class S>
Report<S> check_twosided(const TwoSidedData<S>& d) {
  const Ctx<S> x(d);
  Report<S> report;
  for (const auto& label : twosided_labels()) report.add(evaluate(x, label));
  return report;
}

template <class S>
ConditionResult<S> check_twosided_condition(const TwoSidedData<S>& d, std::string_view label) {
  const Ctx<S> x(d);
  return evaluate(x, label);
}

template <class S>
DerivedMaps<S> derive_maps(const TwoSidedData<S>& d) {
  const Ctx<S> x(d);
  const Field& f = x.f;
  const std::size_t na = x.na, nv = x.nv, nc = x.nc;
  const Shape avc{na, nv, nc};
  const auto &R1 = d.R1(), &R2 = d.R2(), &R3 = d.R3(), &E = d.E();
  const auto &muA = d.A().mul(), &muC = d.C().mul();

  // R((v (x) c) (x) a) = (a_R3)_R1 (x) v_R1 (x) c_R3
  auto R = tabulate<S>(f, Shape{nv, nc, na}, avc, [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r3(m[1], m[2]))
      for (const auto& u : x.r1(m[0], t.idx[0])) acc(x.avc(u.idx[0], u.idx[1], t.idx[1])) += t.coef * u.coef;
  });
  require_same(R, Composite<S>(f, Shape{nv, nc, na}).then(1, R3).then(0, R1).map(), "R");

  // P(c (x) (a (x) v)) = a_R3 (x) v_R2 (x) (c_R3)_R2
  auto P = tabulate<S>(f, Shape{nc, na, nv}, avc, [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r3(m[0], m[1]))
      for (const auto& u : x.r2(t.idx[1], m[2])) acc(x.avc(t.idx[0], u.idx[0], u.idx[1])) += t.coef * u.coef;
  });
  require_same(P, Composite<S>(f, Shape{nc, na, nv}).then(0, R3).then(1, R2).map(), "P");

  // sigma((v (x) c) (x) (v' (x) c')) = E_A(v, v'_R2) (x) E_V(v, v'_R2) (x) E_C(v, v'_R2) c_R2 c'
  auto sigma = tabulate<S>(f, Shape{nv, nc, nv, nc}, avc, [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r2(m[1], m[2]))
      for (const auto& g : x.e(m[0], t.idx[0]))
        for (const auto& p : x.mC(t.idx[1], m[3]))
          for (const auto& q : x.mC(g.idx[2], p.idx[0]))
            acc(x.avc(g.idx[0], g.idx[1], q.idx[0])) += t.coef * g.coef * p.coef * q.coef;
  });
  require_same(sigma,
               Composite<S>(f, Shape{nv, nc, nv, nc}).then(1, R2).then(2, muC).then(0, E).then(2, muC).map(),
               "sigma");

  // nu((a (x) v) (x) (a' (x) v')) = a a'_R1 E_A(v_R1, v') (x) E_V(v_R1, v') (x) E_C(v_R1, v')
  auto nu = tabulate<S>(f, Shape{na, nv, na, nv}, avc, [&](const Multi& m, Vector<S>& acc) {
    for (const auto& t : x.r1(m[1], m[2]))
      for (const auto& g : x.e(t.idx[1], m[3]))
        for (const auto& p : x.mA(m[0], t.idx[0]))
          for (const auto& q : x.mA(p.idx[0], g.idx[0]))
            acc(x.avc(q.idx[0], g.idx[1], g.idx[2])) += t.coef * g.coef * p.coef * q.coef;
  });
  require_same(nu, Composite<S>(f, Shape{na, nv, na, nv}).then(1, R1).then(2, E).then(0, muA).then(0, muA).map(),
               "nu");

  return {std::move(R), std::move(P), std::move(sigma), std::move(nu)};
}

template <class S>
TensorMap<S> twosided_product(const TwoSidedData<S>& d) {
  const Ctx<S> x(d);
  const Field& f = x.f;
  const std::size_t na = x.na, nv = x.nv, nc = x.nc;
  const Shape avc{na, nv, nc};
  const Shape six{na, nv, nc, na, nv, nc};
  auto mul = tabulate<S>(f, six, avc, [&](const Multi& m, Vector<S>& acc) {
    const std::size_t a = m[0], v = m[1], c = m[2], a2 = m[3], v2 = m[4], c2 = m[5];
    for (const auto& t : x.r3(c, a2))              // a'_R3 (x) c_R3
      for (const auto& u : x.r1(v, t.idx[0]))      // (a'_R3)_R1 (x) v_R1
        for (const auto& s : x.r2(t.idx[1], v2))   // v'_R2 (x) (c_R3)_R2
          for (const auto& g : x.e(u.idx[1], s.idx[0])) {
            const S coef = t.coef * u.coef * s.coef * g.coef;
            for (const auto& p : x.mA(a, u.idx[0]))
              for (const auto& p2 : x.mA(p.idx[0], g.idx[0]))
                for (const auto& q : x.mC(g.idx[2], s.idx[1]))
                  for (const auto& q2 : x.mC(q.idx[0], c2))
                    acc(x.avc(p2.idx[0], g.idx[1], q2.idx[0])) += coef * p.coef * p2.coef * q.coef * q2.coef;
          }
  });
  const auto composite = Composite<S>(f, six)
                             .then(2, d.R3())
                             .then(1, d.R1())
                             .then(3, d.R2())
                             .then(2, d.E())
                             .then(0, d.A().mul())
                             .then(0, d.A().mul())
                             .then(2, d.C().mul())
                             .then(2, d.C().mul())
                             .map();
  require_same(mul, composite, "the two-sided product");
  const std::size_t n = avc.total();
  return mul.reshaped(Shape{n, n}, Shape{n});
}

namespace {

template <class S>
Vector<S> twosided_unit(const TwoSidedData<S>& d) {
  return kron(kron(d.A().unit(), d.V().unit()), d.C().unit());
}

}  // namespace

template <class S>
FinAlgebra<S> build_twosided(const TwoSidedData<S>& d) {
  const auto report = check_twosided(d);
  if (!report.all_pass()) throw axiom_failure(report, "two-sided crossed product");
  return revalidate(d.field(), twosided_product(d), twosided_unit(d), "two-sided crossed product");
}

template <class S>
ForcedBuild<S> build_twosided_forced(const TwoSidedData<S>& d) {
  auto mul = twosided_product(d);
  auto unit = twosided_unit(d);
  auto failure = validate_algebra(d.field(), mul, unit);
  return {std::move(mul), std::move(unit), std::move(failure)};
}

template <class S>
BrzData<S> as_brzezinski(const TwoSidedData<S>& d) {
  const auto maps = derive_maps(d);
  const std::size_t na = d.A().dim(), w = d.V().dim() * d.C().dim();
  return {d.A(), PointedSpace<S>::make(d.field(), kron(d.V().unit(), d.C().unit())),
          maps.R.reshaped(Shape{w, na}, Shape{na, w}), maps.sigma.reshaped(Shape{w, w}, Shape{na, w})};
}

template <class S>
MirrorData<S> as_mirror(const TwoSidedData<S>& d) {
  const auto maps = derive_maps(d);
  const std::size_t nc = d.C().dim(), w = d.A().dim() * d.V().dim();
  return {PointedSpace<S>::make(d.field(), kron(d.A().unit(), d.V().unit())), d.C(),
          maps.P.reshaped(Shape{nc, w}, Shape{w, nc}), maps.nu.reshaped(Shape{w, w}, Shape{w, nc})};
}

template <class S>
Report<S> presentations_agree(const TwoSidedData<S>& d) {
  const auto algebra = build_twosided(d);
  const Shape avc = d.shape();
  const Shape six = concat(avc, avc);
  const std::vector<std::string> slots{"a", "v", "c", "a'", "v'", "c'"};
  const auto as_six = [&](const TensorMap<S>& m) { return m.reshaped(six, avc); };

  auto presentation = [&](const char* label, auto&& build) {
    try {
      const FinAlgebra<S> other = build();
      return compare_maps<S>(label, slots, as_six(other.mul()), as_six(algebra.mul()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AxiomFailure) throw;
      throw Error(ErrorKind::InternalMismatch,
                  std::string(label) + " fails its own conditions although every condition holds: " + e.what(),
                  e.label(), e.witness());
    }
  };
  Report<S> report;
  report.add(presentation("crossed-product", [&] { return build_brzezinski(as_brzezinski(d)); }));
  report.add(presentation("mirror-product", [&] { return build_mirror(as_mirror(d)); }));
  return report;
}

namespace {

/// (id (x) Q^-1 (x) id) at factor `pos`, where Q completes `u` to a basis
/// with u as its first vector. A vector lies in ... (x) span(u) (x) ... iff
/// its image has zero coordinates off index 0 at that factor.
template <class S>
TensorMap<S> unit_coordinates(const Field& f, const Shape& shape, std::size_t pos, const Vector<S>& u) {
  const Matrix<S> cols = u;
  const auto [basis, kept] = complete_to_basis<S>(f, cols);
  (void)kept;
  const auto inv = inverse<S>(f, basis);
  if (!inv) throw Error(ErrorKind::InternalMismatch, "basis completion is singular");
  const std::size_t n = shape[pos];
  return Composite<S>(f, shape).then(pos, TensorMap<S>(Shape{n}, Shape{n}, *inv)).map();
}

}  // namespace

template <class S>
TwoSidedData<S> extract(const FinAlgebra<S>& M, const FinAlgebra<S>& A, const PointedSpace<S>& V,
                        const FinAlgebra<S>& C) {
  const Field& f = A.field();
  const std::size_t na = A.dim(), nv = V.dim(), nc = C.dim();
  const Shape avc{na, nv, nc};
  const std::size_t n = avc.total();
  if (M.dim() != n)
    throw Error(ErrorKind::ShapeMismatch, "algebra of dimension " + std::to_string(M.dim()) + " is not on " +
                                              avc.to_string());
  const auto &uA = A.unit(), &uV = V.unit(), &uC = C.unit();
  if (M.unit() != kron(kron(uA, uV), uC))
    throw Error(ErrorKind::UnitMismatch, "unit is not 1_A (x) 1_V (x) 1_C");

  const auto iA = embed<S>(f, na, 0, {uV, uC}).reshaped(Shape{na}, Shape{n});
  const auto iV = embed<S>(f, nv, 1, {uA, uC}).reshaped(Shape{nv}, Shape{n});
  const auto iC = embed<S>(f, nc, 2, {uA, uV}).reshaped(Shape{nc}, Shape{n});
  for (const auto& [label, map, alg] : {std::tuple{"embed-A", &iA, &A}, std::tuple{"embed-C", &iC, &C}}) {
    const auto report = is_algebra_map(*map, *alg, M);
    if (!report.all_pass()) {
      const auto& bad = report.at(report.failing().front());
      throw Error(ErrorKind::NotAlgebraMap, std::string(label) + " fails " + bad.label, label,
                  bad.witness ? bad.witness->indices : std::vector<std::size_t>{});
    }
  }

  const auto prod = [&](const Vector<S>& x, const Vector<S>& y) { return apply(M.mul(), kron(x, y)); };
  const auto a_ = [&](std::size_t i) { return iA.column(i); };
  const auto v_ = [&](std::size_t i) { return iV.column(i); };
  const auto c_ = [&](std::size_t i) { return iC.column(i); };

  // Coordinates relative to bases that start with the unit, one factor at a time.
  const auto offC = unit_coordinates<S>(f, avc, 2, uC);
  const auto offA = unit_coordinates<S>(f, avc, 0, uA);
  const auto offV = unit_coordinates<S>(f, avc, 1, uV);

  const auto split_fail = [&](const char* label, const std::string& what, std::vector<std::size_t> w) {
    return Error(ErrorKind::SplitFail, std::string(label) + ": " + what, label, std::move(w));
  };

  Matrix<S> r1 = zero_matrix<S>(f, na * nv, nv * na);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t a = 0; a < na; ++a) {
      const Vector<S> y = apply(offC, prod(v_(v), a_(a)));
      for (std::size_t i = 0; i < n; ++i) {
        const auto mi = unflatten(avc, i);
        if (mi[2] != 0 && !ScalarTraits<S>::is_zero(y(i)))
          throw split_fail("ajut1", "(1 (x) v (x) 1)(a (x) 1 (x) 1) leaves A (x) V (x) 1_C", {v, a});
        if (mi[2] == 0) r1(mi[0] * nv + mi[1], v * na + a) = y(i);
      }
    }

  Matrix<S> r2 = zero_matrix<S>(f, nv * nc, nc * nv);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t v = 0; v < nv; ++v) {
      const Vector<S> y = apply(offA, prod(c_(c), v_(v)));
      for (std::size_t i = 0; i < n; ++i) {
        const auto mi = unflatten(avc, i);
        if (mi[0] != 0 && !ScalarTraits<S>::is_zero(y(i)))
          throw split_fail("ajut2", "(1 (x) 1 (x) c)(1 (x) v (x) 1) leaves 1_A (x) V (x) C", {c, v});
        if (mi[0] == 0) r2(mi[1] * nc + mi[2], c * nv + v) = y(i);
      }
    }

  Matrix<S> r3 = zero_matrix<S>(f, na * nc, nc * na);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t a = 0; a < na; ++a) {
      const Vector<S> y = apply(offV, prod(c_(c), a_(a)));
      for (std::size_t i = 0; i < n; ++i) {
        const auto mi = unflatten(avc, i);
        if (mi[1] != 0 && !ScalarTraits<S>::is_zero(y(i)))
          throw split_fail("ajut3", "(1 (x) 1 (x) c)(a (x) 1 (x) 1) leaves A (x) 1_V (x) C", {c, a});
        if (mi[1] == 0) r3(mi[0] * nc + mi[2], c * na + a) = y(i);
      }
    }

  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t c = 0; c < nc; ++c)
        if (prod(prod(a_(a), v_(v)), c_(c)) != basis_vector<S>(f, n, (a * nv + v) * nc + c))
          throw split_fail("ajut4", "(a (x) 1 (x) 1)(1 (x) v (x) 1)(1 (x) 1 (x) c) != a (x) v (x) c", {a, v, c});

  Matrix<S> e = zero_matrix<S>(f, n, nv * nv);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = 0; w < nv; ++w) e.col(static_cast<Eigen::Index>(v * nv + w)) = prod(v_(v), v_(w));

  TwoSidedData<S> d(A, V, C, TensorMap<S>(Shape{nv, na}, Shape{na, nv}, std::move(r1)),
                    TensorMap<S>(Shape{nc, nv}, Shape{nv, nc}, std::move(r2)),
                    TensorMap<S>(Shape{nc, na}, Shape{na, nc}, std::move(r3)),
                    TensorMap<S>(Shape{nv, nv}, avc, std::move(e)));

  const auto report = check_twosided(d);
  if (!report.all_pass()) {
    const auto& bad = report.at(report.failing().front());
    throw Error(ErrorKind::RoundTripMismatch, "extracted maps fail " + bad.label, bad.label,
                bad.witness ? bad.witness->indices : std::vector<std::size_t>{});
  }
  if (twosided_product(d).matrix() != M.mul().matrix())
    throw Error(ErrorKind::RoundTripMismatch, "rebuilt product differs from the input algebra");
  return d;
}

template <class S>
TensorMap<S> universal_map(const TwoSidedData<S>& d, const FinAlgebra<S>& X, const TensorMap<S>& fA_,
                           const TensorMap<S>& fV_, const TensorMap<S>& fC_) {
  const Field& f = d.field();
  const std::size_t na = d.A().dim(), nv = d.V().dim(), nc = d.C().dim(), nx = X.dim();
  const auto shaped = [&](const TensorMap<S>& m, std::size_t n, const char* what) {
    if (m.domain().total() != n || m.codomain().total() != nx)
      throw Error(ErrorKind::ShapeMismatch, std::string(what) + " has the wrong shape");
    return m.reshaped(Shape{n}, Shape{nx});
  };
  const auto fA = shaped(fA_, na, "fA");
  const auto fV = shaped(fV_, nv, "fV");
  const auto fC = shaped(fC_, nc, "fC");
  const auto& mu = X.mul();

  const auto premise_fail = [](const ConditionResult<S>& r, const std::string& label) {
    return Error(ErrorKind::PremiseFail, "premise " + label + " fails", label,
                 r.witness ? r.witness->indices : std::vector<std::size_t>{});
  };
  for (const auto& [label, map, alg] : {std::tuple{"fA", &fA, &d.A()}, std::tuple{"fC", &fC, &d.C()}}) {
    const auto report = is_algebra_map(*map, *alg, X);
    if (!report.all_pass()) throw premise_fail(report.at(report.failing().front()), label);
  }
  if (apply(fV, d.V().unit()) != X.unit())
    throw Error(ErrorKind::PremiseFail, "premise fV-unit fails: fV(1_V) != 1_X", "fV-unit");

  {
    const Shape dom{nc, nv, na};
    const auto lhs = Composite<S>(f, dom).then(0, fC).then(1, fV).then(2, fA).then(0, mu).then(0, mu).map();
    const auto rhs = Composite<S>(f, dom)
                         .then(1, d.R1())
                         .then(0, d.R3())
                         .then(1, d.R2())
                         .then(0, fA)
                         .then(1, fV)
                         .then(2, fC)
                         .then(0, mu)
                         .then(0, mu)
                         .map();
    const auto r = compare_maps<S>("1", {"c", "v", "a"}, lhs, rhs);
    if (!r.pass) throw premise_fail(r, "1");
  }
  {
    const Shape dom{nv, nv};
    const auto lhs = Composite<S>(f, dom).then(0, d.E()).then(0, fA).then(1, fV).then(2, fC).then(0, mu).then(0, mu).map();
    const auto rhs = Composite<S>(f, dom).then(0, fV).then(1, fV).then(0, mu).map();
    const auto r = compare_maps<S>("2", {"v", "v'"}, lhs, rhs);
    if (!r.pass) throw premise_fail(r, "2");
  }

  const auto result = Composite<S>(f, d.shape())
                          .then(0, fA)
                          .then(1, fV)
                          .then(2, fC)
                          .then(0, mu)
                          .then(0, mu)
                          .map()
                          .reshaped(Shape{na * nv * nc}, Shape{nx});
  const auto report = is_algebra_map(result, build_twosided(d), X);
  if (!report.all_pass()) {
    const auto& bad = report.at(report.failing().front());
    throw Error(ErrorKind::NotAlgebraMapResult, "induced map fails " + bad.label, bad.label,
                bad.witness ? bad.witness->indices : std::vector<std::size_t>{});
  }
  return result;
}

#define XPROD_INSTANTIATE_TWOSIDED(S)                                                                              \
  template class TwoSidedData<S>;                                                                                  \
  template Report<S> check_twosided<S>(const TwoSidedData<S>&);                                                    \
  template ConditionResult<S> check_twosided_condition<S>(const TwoSidedData<S>&, std::string_view);               \
  template DerivedMaps<S> derive_maps<S>(const TwoSidedData<S>&);                                                  \
  template TensorMap<S> twosided_product<S>(const TwoSidedData<S>&);                                               \
  template FinAlgebra<S> build_twosided<S>(const TwoSidedData<S>&);                                                \
  template ForcedBuild<S> build_twosided_forced<S>(const TwoSidedData<S>&);                                        \
  template BrzData<S> as_brzezinski<S>(const TwoSidedData<S>&);                                                    \
  template MirrorData<S> as_mirror<S>(const TwoSidedData<S>&);                                                     \
  template Report<S> presentations_agree<S>(const TwoSidedData<S>&);                                               \
  template TwoSidedData<S> extract<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const PointedSpace<S>&,          \
                                      const FinAlgebra<S>&);                                                       \
  template TensorMap<S> universal_map<S>(const TwoSidedData<S>&, const FinAlgebra<S>&, const TensorMap<S>&,        \
                                         const TensorMap<S>&, const TensorMap<S>&);

XPROD_INSTANTIATE_TWOSIDED(Rational)
XPROD_INSTANTIATE_TWOSIDED(Zp)

}  // namespace xprod
