// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaybounds {

double log2p(double x) { return std::log1p(x) / kLn2; }

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double scaled_log2(double w, double x) {
  if (w <= 0.0) return 0.0;
  return w * log2p(x / w);
}

Max1d golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Max1d{c, fc} : Max1d{d, fd};
}

Max1d grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                      int points, double tol) {
  if (hi < lo) throw std::invalid_argument("empty interval");
  if (hi == lo || points < 2) return {lo, f(lo)};
  const double h = (hi - lo) / (points - 1);
  int best = 0;
  double best_val = -HUGE_VAL;
  for (int i = 0; i < points; ++i) {
    const double x = i == points - 1 ? hi : lo + i * h;
    const double v = f(x);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  Max1d out{best == points - 1 ? hi : lo + best * h, best_val};
  const double a = std::max(lo, lo + (best - 1) * h);
  const double b = std::min(hi, lo + (best + 1) * h);
  if (b - a > tol) {
    const Max1d g = golden_section_max(f, a, b, tol);
    if (g.value > out.value) out = g;
  }
  return out;
}

namespace {

struct Candidate {
  std::vector<double> x;
  double value;
};

void clamp_into(std::vector<double>& x, const std::vector<Interval>& box) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
}

}  // namespace

BoxResult pattern_search_max(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<Interval>& box, const BoxSearchOptions& opts,
                             const std::vector<std::vector<double>>& seeds) {
  const std::size_t dim = box.size();
  for (const auto& iv : box)
    if (!(iv.hi >= iv.lo)) throw std::invalid_argument("empty search interval");

  long evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<Candidate> cands;
  std::vector<int> counts(dim);
  long total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    counts[i] = box[i].hi > box[i].lo ? std::max(2, opts.grid_points) : 1;
    total *= counts[i];
  }
  std::vector<double> x(dim);
  for (long idx = 0; idx < total; ++idx) {
    long r = idx;
    for (std::size_t k = dim; k-- > 0;) {
      const int j = static_cast<int>(r % counts[k]);
      r /= counts[k];
      x[k] = counts[k] == 1 ? box[k].lo
                            : box[k].lo + (box[k].hi - box[k].lo) * j / (counts[k] - 1);
    }
    cands.push_back({x, eval(x)});
  }
  for (auto s : seeds) {
    if (s.size() != dim) throw std::invalid_argument("seed dimension mismatch");
    clamp_into(s, box);
    cands.push_back({s, eval(s)});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

  BoxResult best{cands.front().x, cands.front().value, true, 0};
  const int starts = std::min<int>(opts.restarts, static_cast<int>(cands.size()));
  for (int c = 0; c < starts; ++c) {
    std::vector<double> cur = cands[c].x;
    double val = cands[c].value;
    double step = opts.initial_step;
    bool stalled = false;
    while (step > opts.tol) {
      if (evals > opts.max_evals) {
        stalled = true;
        break;
      }
      bool moved = false;
      for (std::size_t k = 0; k < dim; ++k) {
        const double w = box[k].hi - box[k].lo;
        if (w <= 0.0) continue;
        for (int sgn : {1, -1}) {
          std::vector<double> y = cur;
          y[k] = std::clamp(cur[k] + sgn * step * w, box[k].lo, box[k].hi);
          if (y[k] == cur[k]) continue;
          const double v = eval(y);
          if (v > val) {
            val = v;
            cur = std::move(y);
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    if (val > best.value) {
      best.x = cur;
      best.value = val;
    }
    if (stalled && c == 0) best.converged = false;
  }
  best.evals = evals;
  return best;
}

}  // namespace relaybounds
