#ifndef XPROD_SEARCH_HPP
#define XPROD_SEARCH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xprod/twosided.hpp"

namespace xprod {

enum class SearchMode { Exhaustive, Randomized };

struct SearchSpec {
  SearchMode mode = SearchMode::Exhaustive;
  /// Exhaustive: the largest admissible number of candidate tuples.
  /// Randomized: the number of sampled tuples.
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t seed = 0;
  /// Maps held fixed, keyed "R1", "R2", "R3" or "E".
  std::map<std::string, TensorMap<Zp>> frozen;
};

struct SearchResult {
  std::vector<TwoSidedData<Zp>> solutions;  // sorted by matrix entries, no duplicates
  std::uint64_t space = 0;                  // candidate tuples after unit normalization (saturating)
};

/// Candidate maps satisfy the unit conditions by construction: each map is
/// X = [Y | Z] Q^-1 where Q completes the constrained domain vectors to a
/// basis, Y holds their prescribed images and Z ranges over F_p. Candidates
/// are filtered condition by condition (R3, R1, R2, the braid, then E).
/// `threads` workers split the final stage; the result does not depend on it.
/// Errors: FieldMismatch unless A, V, C are over one prime field;
/// SearchSpaceTooLarge in exhaustive mode when the space exceeds the budget.
SearchResult search_fp(const SearchSpec& spec, const FinAlgebra<Zp>& A, const PointedSpace<Zp>& V,
                       const FinAlgebra<Zp>& C, unsigned threads = 1);

}  // namespace xprod

#endif  // XPROD_SEARCH_HPP
