#include "xprod/constructions.hpp"

#include <array>

#include "checks.hpp"
#include "xprod/sweedler.hpp"

namespace xprod {

using detail::two_factor;

template <class S>
TwoSidedData<S> iterated_data(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C,
                              const TensorMap<S>& R1, const TensorMap<S>& R2, const TensorMap<S>& R3) {
  const Field& f = A.field();
  const std::size_t na = A.dim(), nb = B.dim(), nc = C.dim();
  const auto E = Composite<S>(f, B.mul()).then(0, embed<S>(f, nb, 1, {A.unit(), C.unit()})).map();
  return TwoSidedData<S>(A, PointedSpace<S>::of(B), C, R1, R2, R3,
                         E.reshaped(Shape{nb, nb}, Shape{na, nb, nc}));
}

template <class S>
Report<S> check_iterated(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C,
                         const TensorMap<S>& R1, const TensorMap<S>& R2, const TensorMap<S>& R3) {
  Report<S> report;
  const auto prefixed = [&](const char* name, Report<S> sub) {
    for (auto& r : sub.entries) {
      r.label = std::string(name) + ":" + r.label;
      report.add(std::move(r));
    }
  };
  prefixed("R1", check_twisting(R1, A, B));
  prefixed("R2", check_twisting(R2, B, C));
  prefixed("R3", check_twisting(R3, A, C));
  auto braid = check_twosided_condition(iterated_data(A, B, C, R1, R2, R3), "equiv3");
  braid.label = "braid";
  report.add(std::move(braid));
  return report;
}

template <class S>
FinAlgebra<S> iterated_ttp(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C,
                           const TensorMap<S>& R1, const TensorMap<S>& R2, const TensorMap<S>& R3) {
  const auto report = check_iterated(A, B, C, R1, R2, R3);
  if (!report.all_pass()) throw axiom_failure(report, "iterated twisted tensor product");
  return build_twosided(iterated_data(A, B, C, R1, R2, R3));
}

template <class S>
TwoSidedData<S> ma_assemble(const MaData<S>& d) {
  const Field& f = d.A.field();
  const std::size_t h = d.H.dim(), na = d.A.dim(), nb = d.B.dim();
  const auto G = two_factor(d.G, h, h, na, h, "G");
  if (d.tau.domain().total() != h * h || d.tau.codomain().total() != nb)
    throw Error(ErrorKind::ShapeMismatch, "tau has the wrong shape");
  const auto tau = d.tau.reshaped(Shape{h, h}, Shape{nb});
  // (h_1 (x) h_2) (x) (h'_1 (x) h'_2) -> h_1 (x) h'_1 (x) h_2 (x) h'_2 -> G (x) tau
  const auto E = Composite<S>(f, Shape{h, h})
                     .then(0, d.H.comul())
                     .then(2, d.H.comul())
                     .then(1, flip<S>(f, h, h))
                     .then(0, G)
                     .then(2, tau)
                     .map();
  return TwoSidedData<S>(d.A, PointedSpace<S>::make(f, d.H.unit()), d.B, d.R, d.T, flip<S>(f, nb, na), E);
}

template <class S>
TwoSidedData<S> ma_build(const MaData<S>& d) {
  auto data = ma_assemble(d);
  const auto report = check_twosided(data);
  if (!report.all_pass()) throw axiom_failure(report, "coalgebra two-sided crossed product");
  return data;
}

namespace {

/// The two-sided product moved along A (x) V (x) C -> V (x) A (x) C.
template <class S>
FinAlgebra<S> to_vac(const FinAlgebra<S>& M, const TwoSidedData<S>& d) {
  const std::array<std::size_t, 3> perm{1, 0, 2};
  return transport(M, permute<S>(d.field(), d.shape(), perm));
}

template <class S>
FinAlgebra<S> checked_build(const TwoSidedData<S>& d) {
  const auto report = check_twosided(d);
  if (!report.all_pass()) throw axiom_failure(report, "two-sided crossed product");
  return build_twosided(d);
}

}  // namespace

template <class S>
Remark1Result<S> remark1_transport(const TwoSidedData<S>& d) {
  const Field& f = d.field();
  const std::size_t na = d.A().dim(), nv = d.V().dim(), nc = d.C().dim();
  if (d.R1().matrix() != flip<S>(f, nv, na).matrix())
    throw Error(ErrorKind::Precondition, "R1 is not the flip map");
  const auto M = to_vac(checked_build(d), d);

  const auto Bp = build_ttp(d.A(), d.C(), d.R3());
  const std::size_t nb = na * nc;
  const auto flipAV = flip<S>(f, na, nv);
  const auto P = Composite<S>(f, Shape{na, nc, nv}).then(1, d.R2()).then(0, flipAV).map();
  const auto nu = Composite<S>(f, d.E()).then(0, flipAV).map();
  MirrorData<S> mirror{d.V(), Bp, P.reshaped(Shape{nb, nv}, Shape{nv, nb}), nu.reshaped(Shape{nv, nv}, Shape{nv, nb})};

  FinAlgebra<S> built = [&] {
    try {
      return build_mirror(mirror);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AxiomFailure) throw;
      throw Error(ErrorKind::InternalMismatch, std::string("mirror data fails its conditions: ") + e.what(),
                  e.label(), e.witness());
    }
  }();
  const Shape vac{nv, na, nc};
  const Shape six = concat(vac, vac);
  Report<S> report;
  report.add(compare_maps<S>("mirror-equals-twosided", {"v", "a", "c", "v'", "a'", "c'"},
                             built.mul().reshaped(six, vac), M.mul().reshaped(six, vac)));
  return {std::move(mirror), std::move(report)};
}

template <class S>
Remark2Result<S> remark2_lr(const TwoSidedData<S>& d) {
  const Field& f = d.field();
  const std::size_t na = d.A().dim(), nv = d.V().dim(), nc = d.C().dim();
  const std::size_t nac = na * nc;
  if (d.R3().matrix() != flip<S>(f, nc, na).matrix())
    throw Error(ErrorKind::Precondition, "R3 is not the flip map");
  const auto M = to_vac(checked_build(d), d);
  const auto AC = ordinary_tensor(d.A(), d.C());
  const auto flipAV = flip<S>(f, na, nv);
  const auto uAC = AC.unit();

  LRData<S> lr{
      Composite<S>(f, Shape{na, nc, nv}).then(1, d.R2()).then(0, flipAV).map().reshaped(Shape{nac, nv},
                                                                                        Shape{nv, nac}),
      Composite<S>(f, Shape{nv, na, nc}).then(0, d.R1()).then(0, flipAV).map().reshaped(Shape{nv, nac},
                                                                                        Shape{nv, nac}),
      embed<S>(f, nv * nv, 0, {uAC}).reshaped(Shape{nv, nv}, Shape{nv, nv, nac}),
      // E_A (x) E_V (x) E_C -> E_V (x) (1 (x) E_C) (x) (E_A (x) 1)
      [&] {
        const std::array<std::size_t, 3> perm{1, 2, 0};  // [A,V,C] -> [V,C,A]
        const auto unitA = point<S>(d.A().unit(), Shape{na});
        const auto unitC = point<S>(d.C().unit(), Shape{nc});
        const auto mid = tensor(unitA, identity<S>(f, Shape{nc}));  // c -> 1 (x) c
        const auto last = tensor(identity<S>(f, Shape{na}), unitC);  // a -> a (x) 1
        return Composite<S>(f, d.E())
            .then(0, permute<S>(f, d.shape(), perm))
            .then(1, mid.reshaped(Shape{nc}, Shape{na, nc}))
            .then(3, last.reshaped(Shape{na}, Shape{na, nc}))
            .map()
            .reshaped(Shape{nv, nv}, Shape{nv, nac, nac});
      }()};

  const Expansion<S> mAC(AC.mul()), J(lr.J), T(lr.T), gamma(lr.gamma), eta(lr.eta);
  const auto times = [&](const Vector<S>& x, const Vector<S>& y) {
    Vector<S> out = zero_vector<S>(f, nac);
    for (std::size_t i = 0; i < nac; ++i) {
      if (ScalarTraits<S>::is_zero(x(i))) continue;
      for (std::size_t j = 0; j < nac; ++j) {
        if (ScalarTraits<S>::is_zero(y(j))) continue;
        for (const auto& t : mAC(i, j)) out(t.idx[0]) += x(i) * y(j) * t.coef;
      }
    }
    return out;
  };
  const auto ac = [&](std::size_t i) { return basis_vector<S>(f, nac, i); };

  const Shape lr_shape{nv, nac};
  const Shape vac{nv, na, nc};
  Matrix<S> general = zero_matrix<S>(f, nv * nac, nv * nac * nv * nac);
  for (std::size_t col = 0; col < static_cast<std::size_t>(general.cols()); ++col) {
    const auto m = unflatten(Shape{nv, nac, nv, nac}, col);
    const std::size_t v = m[0], X = m[1], v2 = m[2], X2 = m[3];
    for (const auto& g : gamma(v, v2))
      for (const auto& j : J(X, g.idx[1]))
        for (const auto& t : T(g.idx[0], X2))
          for (const auto& h : eta(t.idx[0], j.idx[0])) {
            const Vector<S> p =
                times(times(times(times(ac(h.idx[1]), ac(j.idx[1])), ac(g.idx[2])), ac(t.idx[1])), ac(h.idx[2]));
            const S coef = g.coef * j.coef * t.coef * h.coef;
            for (std::size_t k = 0; k < nac; ++k)
              if (!ScalarTraits<S>::is_zero(p(k))) general(h.idx[0] * nac + k, col) += coef * p(k);
          }
  }

  const Expansion<S> r1(d.R1()), r2(d.R2()), e(d.E()), mA(d.A().mul()), mC(d.C().mul());
  Matrix<S> expanded = zero_matrix<S>(f, nv * nac, nv * nac * nv * nac);
  for (std::size_t col = 0; col < static_cast<std::size_t>(expanded.cols()); ++col) {
    const auto m = unflatten(concat(vac, vac), col);
    const std::size_t v = m[0], a = m[1], c = m[2], v2 = m[3], a2 = m[4], c2 = m[5];
    for (const auto& r : r1(v, a2))        // a'_R1 (x) v_R1
      for (const auto& s : r2(c, v2))      // v'_R2 (x) c_R2
        for (const auto& g : e(r.idx[1], s.idx[0]))
          for (const auto& p : mA(a, r.idx[0]))
            for (const auto& p2 : mA(p.idx[0], g.idx[0]))
              for (const auto& q : mC(g.idx[2], s.idx[1]))
                for (const auto& q2 : mC(q.idx[0], c2))
                  expanded((g.idx[1] * na + p2.idx[0]) * nc + q2.idx[0], col) +=
                      r.coef * s.coef * g.coef * p.coef * p2.coef * q.coef * q2.coef;
  }

  const Shape six = concat(vac, vac);
  const auto target = M.mul().reshaped(six, vac);
  const std::vector<std::string> slots{"v", "a", "c", "v'", "a'", "c'"};
  Report<S> report;
  report.add(compare_maps<S>("lr-general", slots, TensorMap<S>(six, vac, general), target));
  report.add(compare_maps<S>("lr-expanded", slots, TensorMap<S>(six, vac, expanded), target));

  // (v (x) (a (x) c)) . (1_V (x) (a' (x) c')) against v (x) (aa' (x) cc')
  const Vector<S>& uV = d.V().unit();
  auto mirror_form = scan_tuples<S>(
      "mirror-form", {"v", "a", "c", "a'", "c'"}, f, Shape{nv, na, nc, na, nc}, vac,
      [&](const std::vector<std::size_t>& m, Vector<S>& acc) {
        const Vector<S> x = kron(kron(basis_vector<S>(f, nv, m[0]), basis_vector<S>(f, na, m[1])),
                                 basis_vector<S>(f, nc, m[2]));
        const Vector<S> y = kron(kron(uV, basis_vector<S>(f, na, m[3])), basis_vector<S>(f, nc, m[4]));
        acc += apply(M.mul(), kron(x, y));
      },
      [&](const std::vector<std::size_t>& m, Vector<S>& acc) {
        acc += kron(basis_vector<S>(f, nv, m[0]), times(ac(m[1] * nc + m[2]), ac(m[3] * nc + m[4])));
      },
      "(v (x) (a (x) c)) . (1 (x) (a' (x) c')) = v (x) (a (x) c)(a' (x) c')");

  return {std::move(lr), M, std::move(report), std::move(mirror_form)};
}

#define XPROD_INSTANTIATE_CONSTRUCTIONS(S)                                                                      \
  template Report<S> check_iterated<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const FinAlgebra<S>&,       \
                                       const TensorMap<S>&, const TensorMap<S>&, const TensorMap<S>&);         \
  template TwoSidedData<S> iterated_data<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const FinAlgebra<S>&,  \
                                            const TensorMap<S>&, const TensorMap<S>&, const TensorMap<S>&);    \
  template FinAlgebra<S> iterated_ttp<S>(const FinAlgebra<S>&, const FinAlgebra<S>&, const FinAlgebra<S>&,     \
                                         const TensorMap<S>&, const TensorMap<S>&, const TensorMap<S>&);       \
  template TwoSidedData<S> ma_assemble<S>(const MaData<S>&);                                                    \
  template TwoSidedData<S> ma_build<S>(const MaData<S>&);                                                       \
  template Remark1Result<S> remark1_transport<S>(const TwoSidedData<S>&);                                       \
  template Remark2Result<S> remark2_lr<S>(const TwoSidedData<S>&);

XPROD_INSTANTIATE_CONSTRUCTIONS(Rational)
XPROD_INSTANTIATE_CONSTRUCTIONS(Zp)

}  // namespace xprod
