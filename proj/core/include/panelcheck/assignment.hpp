#pragma once

#include <cstdint>
#include <vector>

namespace panelcheck {

/// Minimum-cost assignment of n_rows rows to distinct columns, n_rows <=
/// n_cols. `cost` is row-major n_rows x n_cols with non-negative entries.
/// Returns the assigned column per row. Standard potentials method, O(n^2 m).
std::vector<int> min_cost_assignment(int n_rows, int n_cols,
                                     const std::vector<std::int64_t>& cost);

}  // namespace panelcheck
