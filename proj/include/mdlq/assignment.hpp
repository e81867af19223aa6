#pragma once

#include <cstdint>
#include <vector>

namespace mdlq {

struct Assignment {
  std::vector<int> row_to_col;
  std::int64_t cost = 0;
};

// Exact minimum-cost perfect matching on a square matrix (Hungarian
// method with potentials, O(n³)). Deterministic for a given matrix.
Assignment solve_assignment(const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace mdlq
