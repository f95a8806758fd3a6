// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace relaybounds {

SimplexResult simplex_max(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b, const std::vector<double>& c,
                          long max_iterations, double eps) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("simplex: row count mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("simplex: column count mismatch");
  for (double v : b)
    if (!(v >= 0.0)) throw std::invalid_argument("simplex: right-hand side must be >= 0");

  // Columns: n structural, m slack, then the right-hand side.
  const std::size_t cols = n + m + 1;
  std::vector<double> T((m + 1) * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t k) -> double& { return T[r * cols + k]; };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = A[i][j];
    at(i, n + i) = 1.0;
    at(i, cols - 1) = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Dantzig pricing, switching to Bland's rule after a run of degenerate pivots.
  constexpr int kDegenerateLimit = 50;
  int degenerate_run = 0;
  SimplexResult res;
  for (;;) {
    const bool bland = degenerate_run >= kDegenerateLimit;
    std::size_t enter = cols;
    double most_negative = -eps;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (at(m, j) < most_negative) {
        enter = j;
        if (bland) break;
        most_negative = at(m, j);
      }
    if (enter == cols) break;
    if (++res.iterations > max_iterations)
      throw std::runtime_error("simplex: iteration budget exceeded");

    std::size_t leave = m;
    double best_ratio = HUGE_VAL;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= eps) continue;
      const double ratio = at(i, cols - 1) / a;
      if (ratio < best_ratio - eps ||
          (std::abs(ratio - best_ratio) <= eps && leave < m && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == m) throw std::runtime_error("simplex: problem is unbounded");
    degenerate_run = best_ratio <= eps ? degenerate_run + 1 : 0;

    const double piv = at(leave, enter);
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < cols; ++k) {
      at(leave, k) /= piv;
      if (at(leave, k) != 0.0) nz.push_back(k);
    }
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t k : nz) {
        double& v = at(r, k);
        v -= f * at(leave, k);
        if (std::abs(v) < 1e-14) v = 0.0;
      }
      if (r < m && at(r, cols - 1) < 0.0) at(r, cols - 1) = 0.0;
    }
    basis[leave] = enter;
  }

  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = at(i, cols - 1);
  res.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) res.dual[i] = at(m, n + i);
  res.objective = at(m, cols - 1);
  return res;
}

}  // namespace relaybounds
