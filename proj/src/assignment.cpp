#include "mdlq/assignment.hpp"

#include <algorithm>
#include <limits>

#include "mdlq/error.hpp"

namespace mdlq {

Assignment solve_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
  const int n = static_cast<int>(cost.size());
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::SizeMismatch, "cost matrix is not square");
  Assignment out;
  if (n == 0) return out;

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based arrays; column 0 is the virtual start.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.row_to_col[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) out.cost += cost[i][out.row_to_col[i]];
  return out;
}

}  // namespace mdlq
