#ifndef XPROD_SWEEDLER_HPP
#define XPROD_SWEEDLER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "xprod/tensor.hpp"

namespace xprod {

/// One summand of a map's value on a basis tensor: coef * e_idx[0] (x) e_idx[1] (x) ...
template <class S>
struct Term {
  S coef;
  std::array<std::uint32_t, 4> idx{};
};

/// Explicit Sweedler-style expansion of a map: for every basis tensor of the
/// domain, the list of nonzero summands of its image. Writing
/// R(v (x) a) = a_R (x) v_R becomes a loop over `expansion(v, a)`.
template <class S>
class Expansion {
 public:
  explicit Expansion(const TensorMap<S>& m)
      : inner_(m.domain().rank() >= 2 ? m.domain()[m.domain().rank() - 1] : 1), cols_(m.domain().total()) {
    const Shape& cod = m.codomain();
    if (cod.rank() > 4) throw Error(ErrorKind::ShapeMismatch, "expansion supports at most four output factors");
    if (m.domain().rank() > 2) throw Error(ErrorKind::ShapeMismatch, "expansion supports at most two input factors");
    for (std::size_t col = 0; col < m.domain().total(); ++col)
      for (std::size_t row = 0; row < cod.total(); ++row) {
        const S& c = m(row, col);
        if (ScalarTraits<S>::is_zero(c)) continue;
        Term<S> t{c, {}};
        std::size_t rest = row;
        for (std::size_t k = cod.rank(); k-- > 0;) {
          t.idx[k] = static_cast<std::uint32_t>(rest % cod[k]);
          rest /= cod[k];
        }
        cols_[col].push_back(std::move(t));
      }
  }

  std::span<const Term<S>> operator()(std::size_t col) const { return cols_[col]; }
  std::span<const Term<S>> operator()(std::size_t i, std::size_t j) const { return cols_[i * inner_ + j]; }

 private:
  std::size_t inner_;
  std::vector<std::vector<Term<S>>> cols_;
};

}  // namespace xprod

#endif  // XPROD_SWEEDLER_HPP
