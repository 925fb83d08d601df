#pragma once

// Fewest-term search for t = Σ c_h a_h with c_h ∈ N, where the a_h and t are
// nonnegative integer vectors (scaled generator coefficients). Subsets are
// tried by increasing size, lexicographically within a size.

#include "icr/matrix.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace icr::detail {

struct SearchOutcome {
  enum class Status { Found, NotFound, BudgetExhausted };
  Status status = Status::NotFound;
  std::vector<std::pair<std::size_t, Int>> picks;  // (element index, coefficient >= 1)
  std::uint64_t nodes = 0;
};

SearchOutcome search_min_terms(const std::vector<IntVector>& elements, const IntVector& target,
                               std::size_t max_terms, std::uint64_t budget);

}  // namespace icr::detail
