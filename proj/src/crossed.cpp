#include "xprod/crossed.hpp"

#include "checks.hpp"

namespace xprod {

using detail::two_factor;
using detail::unit_pair;
using detail::revalidate;

template <class S>
Report<S> check_twisting(const TensorMap<S>& R_, const FinAlgebra<S>& A, const FinAlgebra<S>& B) {
  const Field& f = A.field();
  const std::size_t na = A.dim(), nb = B.dim();
  const auto R = two_factor(R_, nb, na, na, nb, "twisting map");
  Report<S> report;
  report.add(compare_maps<S>("twisting-unit-left", {"a"}, fix_slot(f, R, 0, B.unit()),
                             embed<S>(f, na, 0, {B.unit()}), "R(1 (x) a) = a (x) 1"));
  report.add(compare_maps<S>("twisting-unit-right", {"b"}, fix_slot(f, R, 1, A.unit()),
                             embed<S>(f, nb, 1, {A.unit()}), "R(b (x) 1) = 1 (x) b"));
  {
    const Shape dom{nb, na, na};
    const auto lhs = Composite<S>(f, dom).then(1, A.mul()).then(0, R).map();
    const auto rhs = Composite<S>(f, dom).then(0, R).then(1, R).then(0, A.mul()).map();
    report.add(compare_maps<S>("twisting-mult-left", {"b", "a", "a'"}, lhs, rhs));
  }
  {
    const Shape dom{nb, nb, na};
    const auto lhs = Composite<S>(f, dom).then(0, B.mul()).then(0, R).map();
    const auto rhs = Composite<S>(f, dom).then(1, R).then(0, R).then(1, B.mul()).map();
    report.add(compare_maps<S>("twisting-mult-right", {"b", "b'", "a"}, lhs, rhs));
  }
  return report;
}

template <class S>
TensorMap<S> ttp_product(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R_) {
  const Field& f = A.field();
  const std::size_t na = A.dim(), nb = B.dim();
  const auto R = two_factor(R_, nb, na, na, nb, "twisting map");
  return Composite<S>(f, Shape{na, nb, na, nb})
      .then(1, R)
      .then(0, A.mul())
      .then(1, B.mul())
      .map()
      .reshaped(Shape{na * nb, na * nb}, Shape{na * nb});
}

template <class S>
FinAlgebra<S> build_ttp(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R) {
  const auto report = check_twisting(R, A, B);
  if (!report.all_pass()) throw axiom_failure(report, "twisted tensor product");
  return revalidate(A.field(), ttp_product(A, B, R), kron(A.unit(), B.unit()), "twisted tensor product");
}

template <class S>
Report<S> check_brzezinski(const BrzData<S>& d) {
  const Field& f = d.A.field();
  const std::size_t na = d.A.dim(), nv = d.V.dim();
  const auto R = two_factor(d.R, nv, na, na, nv, "R");
  const auto sigma = two_factor(d.sigma, nv, nv, na, nv, "sigma");
  const auto& mu = d.A.mul();
  const auto& uA = d.A.unit();
  const auto& uV = d.V.unit();

  Report<S> report;
  report.add(unit_pair<S>(f, "brz1", R, uV, embed<S>(f, na, 0, {uV}), "a", "R(1_V (x) a) = a (x) 1_V", uA,
                          embed<S>(f, nv, 1, {uA}), "v", "R(v (x) 1_A) = 1_A (x) v"));
  report.add(unit_pair<S>(f, "brz2", sigma, uV, embed<S>(f, nv, 1, {uA}), "v", "sigma(1_V (x) v) = 1_A (x) v", uV,
                          embed<S>(f, nv, 1, {uA}), "v", "sigma(v (x) 1_V) = 1_A (x) v"));
  {
    const Shape dom{nv, na, na};
    const auto lhs = Composite<S>(f, dom).then(1, mu).then(0, R).map();
    const auto rhs = Composite<S>(f, dom).then(0, R).then(1, R).then(0, mu).map();
    report.add(compare_maps<S>("brz3", {"v", "a", "a'"}, lhs, rhs));
  }
  {
    const Shape dom{nv, nv, nv};
    const auto lhs = Composite<S>(f, dom).then(1, sigma).then(0, R).then(1, sigma).then(0, mu).map();
    const auto rhs = Composite<S>(f, dom).then(0, sigma).then(1, sigma).then(0, mu).map();
    report.add(compare_maps<S>("brz4", {"v", "v'", "v''"}, lhs, rhs));
  }
  {
    const Shape dom{nv, nv, na};
    const auto lhs = Composite<S>(f, dom).then(1, R).then(0, R).then(1, sigma).then(0, mu).map();
    const auto rhs = Composite<S>(f, dom).then(0, sigma).then(1, R).then(0, mu).map();
    report.add(compare_maps<S>("brz5", {"v", "v'", "a"}, lhs, rhs));
  }
  return report;
}

template <class S>
TensorMap<S> brzezinski_product(const BrzData<S>& d) {
  const Field& f = d.A.field();
  const std::size_t na = d.A.dim(), nv = d.V.dim();
  const auto R = two_factor(d.R, nv, na, na, nv, "R");
  const auto sigma = two_factor(d.sigma, nv, nv, na, nv, "sigma");
  const std::size_t n = na * nv;
  return Composite<S>(f, Shape{na, nv, na, nv})
      .then(1, R)
      .then(2, sigma)
      .then(0, d.A.mul())
      .then(0, d.A.mul())
      .map()
      .reshaped(Shape{n, n}, Shape{n});
}

template <class S>
FinAlgebra<S> build_brzezinski(const BrzData<S>& d) {
  const auto report = check_brzezinski(d);
  if (!report.all_pass()) throw axiom_failure(report, "crossed product");
  return revalidate(d.A.field(), brzezinski_product(d), kron(d.A.unit(), d.V.unit()), "crossed product");
}

template <class S>
Report<S> check_mirror(const MirrorData<S>& d) {
  const Field& f = d.B.field();
  const std::size_t nw = d.W.dim(), nb = d.B.dim();
  const auto P = two_factor(d.P, nb, nw, nw, nb, "P");
  const auto nu = two_factor(d.nu, nw, nw, nw, nb, "nu");
  const auto& mu = d.B.mul();
  const auto& uB = d.B.unit();
  const auto& uW = d.W.unit();

  Report<S> report;
  report.add(unit_pair<S>(f, "mirtwunit", P, uB, embed<S>(f, nw, 0, {uB}), "w", "P(1_B (x) w) = w (x) 1_B", uW,
                          embed<S>(f, nb, 1, {uW}), "b", "P(b (x) 1_W) = 1_W (x) b"));
  report.add(unit_pair<S>(f, "mircocunit", nu, uW, embed<S>(f, nw, 0, {uB}), "w", "nu(1_W (x) w) = w (x) 1_B", uW,
                          embed<S>(f, nw, 0, {uB}), "w", "nu(w (x) 1_W) = w (x) 1_B"));
  {
    const Shape dom{nb, nb, nw};
    const auto lhs = Composite<S>(f, dom).then(0, mu).then(0, P).map();
    const auto rhs = Composite<S>(f, dom).then(1, P).then(0, P).then(1, mu).map();
    report.add(compare_maps<S>("mirtwmap", {"b", "b'", "w"}, lhs, rhs));
  }
  {
    const Shape dom{nw, nw, nw};
    const auto lhs = Composite<S>(f, dom).then(0, nu).then(1, P).then(0, nu).then(1, mu).map();
    const auto rhs = Composite<S>(f, dom).then(1, nu).then(0, nu).then(1, mu).map();
    report.add(compare_maps<S>("mir1", {"w", "w'", "w''"}, lhs, rhs));
  }
  {
    const Shape dom{nb, nw, nw};
    const auto lhs = Composite<S>(f, dom).then(0, P).then(1, P).then(0, nu).then(1, mu).map();
    const auto rhs = Composite<S>(f, dom).then(1, nu).then(0, P).then(1, mu).map();
    report.add(compare_maps<S>("mir2", {"b", "w", "w'"}, lhs, rhs));
  }
  return report;
}

template <class S>
TensorMap<S> mirror_product(const MirrorData<S>& d) {
  const Field& f = d.B.field();
  const std::size_t nw = d.W.dim(), nb = d.B.dim();
  const auto P = two_factor(d.P, nb, nw, nw, nb, "P");
  const auto nu = two_factor(d.nu, nw, nw, nw, nb, "nu");
  const std::size_t n = nw * nb;
  return Composite<S>(f, Shape{nw, nb, nw, nb})
      .then(1, P)
      .then(0, nu)
      .then(1, d.B.mul())
      .then(1, d.B.mul())
      .map()
      .reshaped(Shape{n, n}, Shape{n});
}

template <class S>
FinAlgebra<S> build_mirror(const MirrorData<S>& d) {
  const auto report = check_mirror(d);
  if (!report.all_pass()) throw axiom_failure(report, "mirror crossed product");
  return revalidate(d.B.field(), mirror_product(d), kron(d.W.unit(), d.B.unit()), "mirror crossed product");
}

template <class S>
BrzData<S> brzezinski_from_twisting(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R) {
  const Field& f = A.field();
  const std::size_t na = A.dim(), nb = B.dim();
  const auto sigma = Composite<S>(f, B.mul()).then(0, embed<S>(f, nb, 1, {A.unit()})).map();
  return {A, PointedSpace<S>::of(B), two_factor(R, nb, na, na, nb, "twisting map"),
          sigma.reshaped(Shape{nb, nb}, Shape{na, nb})};
}

template <class S>
MirrorData<S> mirror_from_twisting(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R) {
  const Field& f = A.field();
  const std::size_t na = A.dim(), nb = B.dim();
  const auto nu = Composite<S>(f, A.mul()).then(0, embed<S>(f, na, 0, {B.unit()})).map();
  return {PointedSpace<S>::of(A), B, two_factor(R, nb, na, na, nb, "twisting map"),
          nu.reshaped(Shape{na, na}, Shape{na, nb})};
}

#define XPROD_INSTANTIATE_CROSSED(S)                                                                            \
  template Report<S> check_twisting<S>(const TensorMap<S>&, const FinAlgebra<S>&, const FinAlgebra<S>&);      \
  template TensorMap<S> ttp_product<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const TensorMap<S>&);      \
  template FinAlgebra<S> build_ttp<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const TensorMap<S>&);       \
  template Report<S> check_brzezinski<S>(const BrzData<S>&);                                                    \
  template TensorMap<S> brzezinski_product<S>(const BrzData<S>&);                                               \
  template FinAlgebra<S> build_brzezinski<S>(const BrzData<S>&);                                                \
  template Report<S> check_mirror<S>(const MirrorData<S>&);                                                     \
  template TensorMap<S> mirror_product<S>(const MirrorData<S>&);                                                \
  template FinAlgebra<S> build_mirror<S>(const MirrorData<S>&);                                                 \
  template BrzData<S> brzezinski_from_twisting<S>(const FinAlgebra<S>&, const FinAlgebra<S>&,                  \
                                                  const TensorMap<S>&);                                         \
  template MirrorData<S> mirror_from_twisting<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const TensorMap<S>&);

XPROD_INSTANTIATE_CROSSED(Rational)
XPROD_INSTANTIATE_CROSSED(Zp)

}  // namespace xprod
