// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/multirelay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "json.hpp"
#include "relaybounds/simplex.hpp"
#include "relaybounds/single_relay.hpp"

namespace relaybounds {

namespace {

constexpr double kLpTol = 1e-9;
constexpr int kExhaustiveLimit = 6;

struct CutSides {
  std::vector<int> rx;  // node indices, destination first
  std::vector<int> tx;  // node indices, source first
};

CutSides cut_sides(const NetworkExponents& net, RelayMask cut, RelayMask state) {
  const int R = net.relays();
  const RelayMask full = R >= 32 ? ~RelayMask{0} : (RelayMask{1} << R) - 1;
  if ((cut & ~full) != 0 || (state & ~full) != 0)
    throw std::invalid_argument("relay mask has bits beyond the relay count");
  CutSides s;
  s.rx.push_back(net.destination());
  s.tx.push_back(net.source());
  for (int r = 0; r < R; ++r) {
    const int node = r + 1;
    const bool in_cut = relay_selected(cut, r, R);
    const bool on = relay_selected(state, r, R);
    if (in_cut && on) s.tx.push_back(node);
    if (!in_cut && !on) s.rx.push_back(node);
  }
  return s;
}

double exhaustive_matching(const std::vector<std::vector<double>>& w, std::size_t row,
                           std::uint32_t used) {
  if (row == w.size()) return 0.0;
  double best = exhaustive_matching(w, row + 1, used);
  for (std::size_t j = 0; j < w[row].size(); ++j) {
    if (used & (1u << j)) continue;
    best = std::max(best, w[row][j] + exhaustive_matching(w, row + 1, used | (1u << j)));
  }
  return best;
}

// Square assignment by the Hungarian method (minimization of max - w).
double hungarian_max(const std::vector<std::vector<double>>& w) {
  const std::size_t rows = w.size(), cols = w.front().size();
  const std::size_t n = std::max(rows, cols);
  double wmax = 0.0;
  for (const auto& r : w)
    for (double v : r) wmax = std::max(wmax, v);
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols) ? wmax - w[i][j] : wmax;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
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
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j)
    if (p[j] - 1 < rows && j - 1 < cols) total += w[p[j] - 1][j - 1];
  return total;
}

}  // namespace

bool relay_selected(RelayMask mask, int relay, int relays) {
  return ((mask >> (relays - 1 - relay)) & 1u) != 0;
}

std::string mask_bits(RelayMask mask, int relays) {
  std::string s;
  for (int r = 0; r < relays; ++r) s.push_back(relay_selected(mask, r, relays) ? '1' : '0');
  return s;
}

std::vector<int> mask_nodes(RelayMask mask, int relays) {
  std::vector<int> nodes;
  for (int r = 0; r < relays; ++r)
    if (relay_selected(mask, r, relays)) nodes.push_back(r + 2);
  return nodes;
}

double max_weight_matching(const std::vector<std::vector<double>>& w) {
  if (w.empty() || w.front().empty()) return 0.0;
  for (const auto& r : w) {
    if (r.size() != w.front().size()) throw std::invalid_argument("ragged weight matrix");
    for (double v : r)
      if (!(v >= 0.0)) throw std::invalid_argument("matching weights must be >= 0");
  }
  std::vector<std::vector<double>> m = w;
  if (m.size() > m.front().size()) {
    std::vector<std::vector<double>> t(m.front().size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    m.swap(t);
  }
  if (m.size() <= static_cast<std::size_t>(kExhaustiveLimit) && m.front().size() <= 32)
    return exhaustive_matching(m, 0, 0);
  return hungarian_max(m);
}

double cut_exponent(const NetworkExponents& net, RelayMask cut, RelayMask state) {
  const CutSides s = cut_sides(net, cut, state);
  std::vector<std::vector<double>> w(s.rx.size(), std::vector<double>(s.tx.size()));
  for (std::size_t i = 0; i < s.rx.size(); ++i)
    for (std::size_t j = 0; j < s.tx.size(); ++j) w[i][j] = net.alpha(s.rx[i], s.tx[j]);
  return max_weight_matching(w);
}

double cut_slope_numeric(const NetworkExponents& net, RelayMask cut, RelayMask state,
                         double snr_lo, double snr_hi, std::uint64_t seed) {
  if (!(snr_lo > 1.0) || !(snr_hi > snr_lo)) throw std::invalid_argument("need 1 < snr_lo < snr_hi");
  using Real = boost::multiprecision::cpp_bin_float_50;
  const int K = net.K();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> theta(static_cast<std::size_t>(K * K));
  for (auto& t : theta) t = phase(rng);

  const CutSides s = cut_sides(net, cut, state);
  const std::size_t nr = s.rx.size(), nt = s.tx.size();

  auto log2det = [&](double snr) {
    // M = I + H H^H, embedded as the real matrix [[Re, -Im], [Im, Re]] whose
    // determinant is |det M|^2.
    std::vector<Real> hr(nr * nt), hi(nr * nt);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nt; ++j) {
        const Real mag = boost::multiprecision::pow(Real(snr), Real(net.alpha(s.rx[i], s.tx[j]) / 2.0));
        const double th = theta[static_cast<std::size_t>(s.rx[i] * K + s.tx[j])];
        hr[i * nt + j] = mag * std::cos(th);
        hi[i * nt + j] = mag * std::sin(th);
      }
    const std::size_t n2 = 2 * nr;
    std::vector<Real> M(n2 * n2, Real(0));
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t k = 0; k < nr; ++k) {
        Real re = (i == k) ? Real(1) : Real(0), im = 0;
        for (std::size_t j = 0; j < nt; ++j) {
          re += hr[i * nt + j] * hr[k * nt + j] + hi[i * nt + j] * hi[k * nt + j];
          im += hi[i * nt + j] * hr[k * nt + j] - hr[i * nt + j] * hi[k * nt + j];
        }
        M[i * n2 + k] = re;
        M[(i + nr) * n2 + (k + nr)] = re;
        M[i * n2 + (k + nr)] = -im;
        M[(i + nr) * n2 + k] = im;
      }
    Real logdet = 0;
    for (std::size_t c = 0; c < n2; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n2; ++r)
        if (abs(M[r * n2 + c]) > abs(M[piv * n2 + c])) piv = r;
      if (piv != c)
        for (std::size_t k = 0; k < n2; ++k) std::swap(M[c * n2 + k], M[piv * n2 + k]);
      const Real d = M[c * n2 + c];
      logdet += log(abs(d));
      for (std::size_t r = c + 1; r < n2; ++r) {
        const Real f = M[r * n2 + c] / d;
        if (f == 0) continue;
        for (std::size_t k = c; k < n2; ++k) M[r * n2 + k] -= f * M[c * n2 + k];
      }
    }
    return static_cast<double>(logdet / 2) / std::log(2.0);
  };
  return (log2det(snr_hi) - log2det(snr_lo)) / (std::log2(snr_hi) - std::log2(snr_lo));
}

std::vector<std::vector<double>> cut_table(const NetworkExponents& net) {
  const RelayMask count = RelayMask{1} << net.relays();
  std::vector<std::vector<double>> D(count, std::vector<double>(count));
  for (RelayMask a = 0; a < count; ++a)
    for (RelayMask s = 0; s < count; ++s) D[a][s] = cut_exponent(net, a, s);
  return D;
}

namespace {

// Max-min schedule over the given states as a matrix game. With D' = D + 1 > 0,
// max 1'y s.t. D'^T y <= 1 has value 1/v' and its row duals scaled by v' give
// the schedule.
std::vector<double> game_schedule(const std::vector<std::vector<double>>& D,
                                  const std::vector<std::size_t>& states, long& iterations) {
  const std::size_t M = D.size(), n = states.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(M));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < M; ++a) A[k][a] = D[a][states[k]] + 1.0;
  const SimplexResult res =
      simplex_max(A, std::vector<double>(n, 1.0), std::vector<double>(M, 1.0));
  iterations = res.iterations;
  std::vector<double> lambda(n);
  for (std::size_t k = 0; k < n; ++k) lambda[k] = std::max(0.0, res.dual[k]) / res.objective;
  return lambda;
}

double schedule_value(const std::vector<std::vector<double>>& D,
                      const std::vector<std::size_t>& states, const std::vector<double>& lambda) {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& row : D) {
    double v = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) v += lambda[k] * row[states[k]];
    t = std::min(t, v);
  }
  return t;
}

double restricted_lp_value(const std::vector<std::vector<double>>& D,
                           const std::vector<std::size_t>& states) {
  long it = 0;
  return schedule_value(D, states, game_schedule(D, states, it));
}

}  // namespace

LpSolution gdof_lp(const NetworkExponents& net) {
  const auto D = cut_table(net);
  const std::size_t M = D.size();
  std::vector<std::size_t> all(M);
  for (std::size_t s = 0; s < M; ++s) all[s] = s;
  LpSolution sol;
  sol.schedule.K = net.K();
  sol.schedule.lambda = game_schedule(D, all, sol.iterations);
  double mass = 0.0;
  for (double l : sol.schedule.lambda) mass += l;
  if (mass < 1.0) {
    // Exponents are nonnegative, so extra weight on any state keeps every cut.
    const auto top = std::max_element(sol.schedule.lambda.begin(), sol.schedule.lambda.end());
    *top += 1.0 - mass;
  } else {
    for (double& l : sol.schedule.lambda) l /= mass;
  }
  double t = std::numeric_limits<double>::infinity();
  std::vector<double> cut_values(M, 0.0);
  for (std::size_t a = 0; a < M; ++a) {
    for (std::size_t s = 0; s < M; ++s) cut_values[a] += sol.schedule.lambda[s] * D[a][s];
    t = std::min(t, cut_values[a]);
  }
  sol.gdof = t;
  for (std::size_t a = 0; a < M; ++a)
    if (cut_values[a] <= t + kLpTol) sol.tight_cuts.push_back(static_cast<RelayMask>(a));
  for (double l : sol.schedule.lambda)
    if (l > kLpTol) ++sol.active_states;
  return sol;
}

std::string to_json(const LpSolution& sol) {
  const int R = sol.schedule.K - 2;
  nlohmann::ordered_json j;
  j["gdof"] = sol.gdof;
  nlohmann::ordered_json lam = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < sol.schedule.lambda.size(); ++s)
    lam[mask_bits(static_cast<RelayMask>(s), R)] = sol.schedule.lambda[s];
  j["lambda"] = lam;
  auto cuts = nlohmann::ordered_json::array();
  for (RelayMask a : sol.tight_cuts) cuts.push_back(mask_nodes(a, R));
  j["tight_cuts"] = cuts;
  j["active_states"] = sol.active_states;
  return j.dump(2);
}

double gdof_fd_network(const NetworkExponents& net) {
  const RelayMask count = RelayMask{1} << net.relays();
  double best = std::numeric_limits<double>::infinity();
  for (RelayMask a = 0; a < count; ++a) {
    std::vector<int> rx{net.destination()}, tx{net.source()};
    for (int r = 0; r < net.relays(); ++r)
      (relay_selected(a, r, net.relays()) ? tx : rx).push_back(r + 1);
    std::vector<std::vector<double>> w(rx.size(), std::vector<double>(tx.size()));
    for (std::size_t i = 0; i < rx.size(); ++i)
      for (std::size_t k = 0; k < tx.size(); ++k) w[i][k] = net.alpha(rx[i], tx[k]);
    best = std::min(best, max_weight_matching(w));
  }
  return best;
}

double best_relay_gdof(const NetworkExponents& net, DuplexMode mode) {
  const double direct = net.alpha(net.destination(), net.source());
  double best = direct;
  for (int r = 0; r < net.relays(); ++r) {
    const int node = r + 1;
    const ExponentTriple e{direct, net.alpha(net.destination(), node),
                           net.alpha(node, net.source())};
    const double d = mode == DuplexMode::HalfDuplex ? gdof_hd(e).value : gdof_fd(e).value;
    best = std::max(best, d);
  }
  return best;
}

double gap_bound(int K) {
  if (K < 3) throw std::invalid_argument("gap_bound needs K >= 3");
  double best = -1.0;
  for (int l = 0; l <= K - 2; ++l) {
    const double v = std::min(1 + l, K - 1 - l) * std::log2(1.0 + l) +
                     std::min(1 + 3 * l, l + K - 1);
    best = std::max(best, v);
  }
  return best;
}

double gap_asymptotic(int K) {
  if (K < 3) throw std::invalid_argument("gap_asymptotic needs K >= 3");
  return 0.5 * K * std::log2(4.0 * K);
}

double diamond_gap(int K, bool assume_conjecture) {
  if (K < 3) throw std::invalid_argument("diamond_gap needs K >= 3");
  const double tail = 2.0 * std::log2(std::numbers::e / 2.0);
  if (assume_conjecture) return 5.0 * std::log2(K) + tail;
  return (K - 2) + 4.0 * std::log2(K) + tail;
}

int diamond_state_sparsity(const NetworkExponents& net) {
  const int K = net.K();
  for (int i = 1; i < K; ++i)
    for (int j = 0; j < K - 1; ++j) {
      if (i == j) continue;
      const bool src_to_relay = j == 0 && i < K - 1;
      const bool relay_to_dst = i == K - 1 && j > 0;
      if (!src_to_relay && !relay_to_dst && net.alpha(i, j) != 0.0)
        throw std::domain_error("network is not a diamond: link " + std::to_string(j + 1) +
                                " -> " + std::to_string(i + 1) + " is active");
    }
  const LpSolution sol = gdof_lp(net);
  std::vector<std::size_t> support;
  for (std::size_t s = 0; s < sol.schedule.lambda.size(); ++s)
    if (sol.schedule.lambda[s] > kLpTol) support.push_back(s);
  std::sort(support.begin(), support.end(), [&](std::size_t x, std::size_t y) {
    return sol.schedule.lambda[x] < sol.schedule.lambda[y];
  });
  // Greedy pruning toward a sparser optimal schedule.
  const auto D = cut_table(net);
  for (std::size_t k = 0; k < support.size() && support.size() > 1;) {
    std::vector<std::size_t> trial = support;
    trial.erase(trial.begin() + static_cast<long>(k));
    if (restricted_lp_value(D, trial) >= sol.gdof - kLpTol)
      support = std::move(trial);
    else
      ++k;
  }
  return static_cast<int>(support.size());
}

}  // namespace relaybounds
