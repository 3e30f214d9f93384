#include "panelcheck/assignment.hpp"

#include <cassert>
#include <limits>

namespace panelcheck {

std::vector<int> min_cost_assignment(int n_rows, int n_cols,
                                     const std::vector<std::int64_t>& cost) {
  assert(n_rows <= n_cols);
  assert(static_cast<int>(cost.size()) == n_rows * n_cols);
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  // 1-indexed potentials over rows (u) and columns (v); way[j] is the column
  // preceding j on the shortest augmenting path
  std::vector<std::int64_t> u(n_rows + 1, 0), v(n_cols + 1, 0);
  std::vector<int> match(n_cols + 1, 0);  // column -> row
  std::vector<int> way(n_cols + 1, 0);

  for (int i = 1; i <= n_rows; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(n_cols + 1, kInf);
    std::vector<char> used(n_cols + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n_cols; ++j) {
        if (used[j]) continue;
        const std::int64_t cur =
            cost[(i0 - 1) * n_cols + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n_cols; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n_rows, -1);
  for (int j = 1; j <= n_cols; ++j) {
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace panelcheck
