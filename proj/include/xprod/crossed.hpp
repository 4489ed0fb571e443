#ifndef XPROD_CROSSED_HPP
#define XPROD_CROSSED_HPP

#include "xprod/algebra.hpp"

namespace xprod {

/// Data for a crossed product A (x)_{R,sigma} V.
/// R: V (x) A -> A (x) V, sigma: V (x) V -> A (x) V.
template <class S>
struct BrzData {
  FinAlgebra<S> A;
  PointedSpace<S> V;
  TensorMap<S> R;
  TensorMap<S> sigma;
};

/// Data for a mirror crossed product W (x)_{P,nu} B.
/// P: B (x) W -> W (x) B, nu: W (x) W -> W (x) B.
template <class S>
struct MirrorData {
  PointedSpace<S> W;
  FinAlgebra<S> B;
  TensorMap<S> P;
  TensorMap<S> nu;
};

// Twisting maps R: B (x) A -> A (x) B, written R(b (x) a) = a_R (x) b_R.
// Labels: twisting-unit-left   R(1_B (x) a) = a (x) 1_B
//         twisting-unit-right  R(b (x) 1_A) = 1_A (x) b
//         twisting-mult-left   (aa')_R (x) b_R = a_R a'_r (x) b_Rr
//         twisting-mult-right  a_R (x) (bb')_R = a_Rr (x) b_r b'_R
template <class S>
Report<S> check_twisting(const TensorMap<S>& R, const FinAlgebra<S>& A, const FinAlgebra<S>& B);

/// (a (x) b)(a' (x) b') = a a'_R (x) b_R b', no axiom check. Domain [AB, AB].
template <class S>
TensorMap<S> ttp_product(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R);

/// Twisted tensor product A (x)_R B. Throws AxiomFailure if R is not a
/// twisting map.
template <class S>
FinAlgebra<S> build_ttp(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R);

/// Labels brz1 ... brz5.
template <class S>
Report<S> check_brzezinski(const BrzData<S>& d);

/// mu = (mu_2 (x) id_V) o (id_A (x) id_A (x) sigma) o (id_A (x) R (x) id_V), no axiom check.
template <class S>
TensorMap<S> brzezinski_product(const BrzData<S>& d);

template <class S>
FinAlgebra<S> build_brzezinski(const BrzData<S>& d);

/// Labels mirtwunit, mircocunit, mirtwmap, mir1, mir2.
template <class S>
Report<S> check_mirror(const MirrorData<S>& d);

/// mu = (id_W (x) mu_2) o (nu (x) id_B (x) id_B) o (id_W (x) P (x) id_B), no axiom check.
template <class S>
TensorMap<S> mirror_product(const MirrorData<S>& d);

template <class S>
FinAlgebra<S> build_mirror(const MirrorData<S>& d);

/// A twisted tensor product as a crossed product: sigma(b (x) b') = 1_A (x) bb'.
template <class S>
BrzData<S> brzezinski_from_twisting(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R);

/// A twisted tensor product as a mirror crossed product: nu(a (x) a') = aa' (x) 1_B.
template <class S>
MirrorData<S> mirror_from_twisting(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const TensorMap<S>& R);

}  // namespace xprod

#endif  // XPROD_CROSSED_HPP
