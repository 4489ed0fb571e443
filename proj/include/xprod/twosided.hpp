#ifndef XPROD_TWOSIDED_HPP
#define XPROD_TWOSIDED_HPP

#include <optional>
#include <string>
#include <string_view>

#include "xprod/algebra.hpp"
#include "xprod/crossed.hpp"

namespace xprod {

/// Input of a two-sided crossed product A >< V >< C:
///   R1: V (x) A -> A (x) V,   R1(v (x) a)  = a_R1 (x) v_R1
///   R2: C (x) V -> V (x) C,   R2(c (x) v)  = v_R2 (x) c_R2
///   R3: C (x) A -> A (x) C,   R3(c (x) a)  = a_R3 (x) c_R3
///   E:  V (x) V -> A (x) V (x) C
/// The constructor checks shapes and stores every map with its factored
/// domain and codomain.
template <class S>
class TwoSidedData {
 public:
  TwoSidedData(FinAlgebra<S> A, PointedSpace<S> V, FinAlgebra<S> C, TensorMap<S> R1, TensorMap<S> R2,
               TensorMap<S> R3, TensorMap<S> E);

  const Field& field() const noexcept { return A_.field(); }
  const FinAlgebra<S>& A() const noexcept { return A_; }
  const PointedSpace<S>& V() const noexcept { return V_; }
  const FinAlgebra<S>& C() const noexcept { return C_; }
  const TensorMap<S>& R1() const noexcept { return R1_; }
  const TensorMap<S>& R2() const noexcept { return R2_; }
  const TensorMap<S>& R3() const noexcept { return R3_; }
  const TensorMap<S>& E() const noexcept { return E_; }

  /// [A, V, C]
  Shape shape() const { return Shape{A_.dim(), V_.dim(), C_.dim()}; }

  friend bool operator==(const TwoSidedData& x, const TwoSidedData& y) {
    return x.A_ == y.A_ && x.V_ == y.V_ && x.C_ == y.C_ && x.R1_ == y.R1_ && x.R2_ == y.R2_ && x.R3_ == y.R3_ &&
           x.E_ == y.E_;
  }

 private:
  FinAlgebra<S> A_;
  PointedSpace<S> V_;
  FinAlgebra<S> C_;
  TensorMap<S> R1_, R2_, R3_, E_;
};

template <class S>
struct DerivedMaps {
  TensorMap<S> R;      // [V,C,A] -> [A,V,C]
  TensorMap<S> P;      // [C,A,V] -> [A,V,C]
  TensorMap<S> sigma;  // [V,C,V,C] -> [A,V,C]
  TensorMap<S> nu;     // [A,V,A,V] -> [A,V,C]
};

/// The twelve condition labels in report order.
const std::vector<std::string>& twosided_labels();

/// Checks every condition on all basis tuples. The elementwise forms give the
/// verdict and witness; each is cross-checked against its composite-map form
/// and a disagreement throws InternalMismatch.
template <class S>
Report<S> check_twosided(const TwoSidedData<S>& d);

/// One condition by label; throws Precondition for an unknown label.
template <class S>
ConditionResult<S> check_twosided_condition(const TwoSidedData<S>& d, std::string_view label);

template <class S>
DerivedMaps<S> derive_maps(const TwoSidedData<S>& d);

/// Multiplication of A (x) V (x) C from the explicit formula
///   (a (x) v (x) c)(a' (x) v' (x) c')
///     = a (a'_R3)_R1 E_A(v_R1, v'_R2) (x) E_V(v_R1, v'_R2) (x) E_C(v_R1, v'_R2) (c_R3)_R2 c'
/// with no axiom check. Domain [n, n], codomain [n], n = dimA dimV dimC.
template <class S>
TensorMap<S> twosided_product(const TwoSidedData<S>& d);

/// Throws AxiomFailure unless every condition passes.
template <class S>
FinAlgebra<S> build_twosided(const TwoSidedData<S>& d);

/// Result of building without checking the conditions first.
template <class S>
struct ForcedBuild {
  TensorMap<S> mul;
  Vector<S> unit;
  std::optional<Error> failure;  // NotAssociative / NotUnital when the result is not an algebra
};

template <class S>
ForcedBuild<S> build_twosided_forced(const TwoSidedData<S>& d);

/// The crossed product A (x)_{R,sigma} (V (x) C) as Brzezinski data.
template <class S>
BrzData<S> as_brzezinski(const TwoSidedData<S>& d);

/// The mirror crossed product (A (x) V) (x)_{P,nu} C as mirror data.
template <class S>
MirrorData<S> as_mirror(const TwoSidedData<S>& d);

/// Labels "crossed-product" and "mirror-product": each presentation has the
/// same structure constants as build_twosided(d). Throws AxiomFailure when d
/// fails its conditions and InternalMismatch when a presentation fails its own.
template <class S>
Report<S> presentations_agree(const TwoSidedData<S>& d);

/// Recovers R1, R2, R3, E from an algebra on A (x) V (x) C.
/// Errors: UnitMismatch; NotAlgebraMap (label "embed-A" / "embed-C");
/// SplitFail (label ajut1 ... ajut4); RoundTripMismatch.
template <class S>
TwoSidedData<S> extract(const FinAlgebra<S>& M, const FinAlgebra<S>& A, const PointedSpace<S>& V,
                        const FinAlgebra<S>& C);

/// f(a (x) v (x) c) = fA(a) fV(v) fC(c), checked to be an algebra map from
/// build_twosided(d) to X. Premise labels, checked in this order:
/// "fA", "fC" (algebra maps), "fV-unit" (fV(1_V) = 1_X), "1", "2".
template <class S>
TensorMap<S> universal_map(const TwoSidedData<S>& d, const FinAlgebra<S>& X, const TensorMap<S>& fA,
                           const TensorMap<S>& fV, const TensorMap<S>& fC);

}  // namespace xprod

#endif  // XPROD_TWOSIDED_HPP
