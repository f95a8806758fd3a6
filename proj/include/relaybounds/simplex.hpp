// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace relaybounds {

struct SimplexResult {
  std::vector<double> x;
  std::vector<double> dual;  // one per constraint row
  double objective = 0.0;
  long iterations = 0;
};

/// Dense tableau simplex (Dantzig pricing, Bland fallback) for
///   maximize c^T x  subject to  A x <= b,  x >= 0,
/// with b >= 0 so the slack basis is feasible. Throws std::runtime_error if
/// the problem is unbounded or the iteration budget is exceeded.
SimplexResult simplex_max(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b, const std::vector<double>& c,
                          long max_iterations = 200000, double eps = 1e-9);

}  // namespace relaybounds
