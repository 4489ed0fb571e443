#ifndef XPROD_CONSTRUCTIONS_HPP
#define XPROD_CONSTRUCTIONS_HPP

#include <optional>

#include "xprod/twosided.hpp"

namespace xprod {

/// Three twisting maps R1: B (x) A -> A (x) B, R2: C (x) B -> B (x) C,
/// R3: C (x) A -> A (x) C. Labels "R1:<twisting label>", "R2:...", "R3:..."
/// and "braid".
template <class S>
Report<S> check_iterated(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C,
                         const TensorMap<S>& R1, const TensorMap<S>& R2, const TensorMap<S>& R3);

/// The same maps with E(b (x) b') = 1_A (x) bb' (x) 1_C.
template <class S>
TwoSidedData<S> iterated_data(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C,
                              const TensorMap<S>& R1, const TensorMap<S>& R2, const TensorMap<S>& R3);

/// (a (x) b (x) c)(a' (x) b' (x) c') = a(a'_R3)_R1 (x) b_R1 b'_R2 (x) (c_R3)_R2 c'.
/// Throws AxiomFailure when check_iterated fails.
template <class S>
FinAlgebra<S> iterated_ttp(const FinAlgebra<S>& A, const FinAlgebra<S>& B, const FinAlgebra<S>& C,
                           const TensorMap<S>& R1, const TensorMap<S>& R2, const TensorMap<S>& R3);

/// Coalgebra-based data: G: H (x) H -> A (x) H, R: H (x) A -> A (x) H,
/// T: B (x) H -> H (x) B, tau: H (x) H -> B.
template <class S>
struct MaData {
  Coalgebra<S> H;
  FinAlgebra<S> A;
  FinAlgebra<S> B;
  TensorMap<S> G;
  TensorMap<S> R;
  TensorMap<S> T;
  TensorMap<S> tau;
};

/// R1 = R, R2 = T, R3 = flip and E(h (x) h') = (h_1)^G (x) (h'_1)_G (x) tau(h_2, h'_2),
/// without checking any condition.
template <class S>
TwoSidedData<S> ma_assemble(const MaData<S>& d);

/// ma_assemble followed by check_twosided; throws AxiomFailure on failure.
template <class S>
TwoSidedData<S> ma_build(const MaData<S>& d);

template <class S>
struct Remark1Result {
  MirrorData<S> mirror;  // W = V, B = A (x)_{R3} C
  Report<S> report;      // "mirror-equals-twosided"
};

/// Requires R1 = flip. Rewrites A >< V >< C on V (x) (A (x) C) as a mirror
/// crossed product over the twisted tensor product A (x)_{R3} C with
///   P((a (x) c) (x) v) = v_R2 (x) (a (x) c_R2),  nu(v (x) v') = E_V (x) (E_A (x) E_C).
template <class S>
Remark1Result<S> remark1_transport(const TwoSidedData<S>& d);

/// Maps of the L-R presentation on V (x) (A (x) C); A (x) C is one factor.
template <class S>
struct LRData {
  TensorMap<S> J;      // [AC, V] -> [V, AC], (a (x) c) (x) v -> v_R2 (x) (a (x) c_R2)
  TensorMap<S> T;      // [V, AC] -> [V, AC], v (x) (a (x) c) -> v_R1 (x) (a_R1 (x) c)
  TensorMap<S> gamma;  // [V, V] -> [V, V, AC], v (x) v' -> v (x) v' (x) (1 (x) 1)
  TensorMap<S> eta;    // [V, V] -> [V, AC, AC], E_V (x) (1 (x) E_C) (x) (E_A (x) 1)
};

template <class S>
struct Remark2Result {
  LRData<S> lr;
  FinAlgebra<S> algebra;  // the two-sided product moved to V (x) A (x) C
  Report<S> report;       // "lr-general", "lr-expanded"
  /// Informational: first (v, a, c, a', c') with
  /// (v (x) (a (x) c)) . (1_V (x) (a' (x) c')) != v (x) (a (x) c)(a' (x) c'). Passes when none exists.
  ConditionResult<S> mirror_form;
};

/// Requires R3 = flip.
template <class S>
Remark2Result<S> remark2_lr(const TwoSidedData<S>& d);

}  // namespace xprod

#endif  // XPROD_CONSTRUCTIONS_HPP
