// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "relaybounds/channel.hpp"
#include "relaybounds/single_relay.hpp"

namespace relaybounds {

Scheme parse_scheme(const std::string& name) {
  if (name == "pdf-det") return Scheme::PdfDeterministic;
  if (name == "pdf-rand") return Scheme::PdfRandom;
  if (name == "nnc-det") return Scheme::NncDeterministic;
  if (name == "lda") return Scheme::Lda;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected pdf-det, pdf-rand, nnc-det or lda)");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::PdfDeterministic: return "pdf-det";
    case Scheme::PdfRandom: return "pdf-rand";
    case Scheme::NncDeterministic: return "nnc-det";
    case Scheme::Lda: return "lda";
  }
  return "unknown";
}

GridAxis GridAxis::parse(const std::string& text) {
  GridAxis g;
  std::size_t used = 0;
  try {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
      g.start = g.stop = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      g.step = 1.0;
      return g;
    }
    const auto c2 = text.find(':', c1 + 1);
    g.start = std::stod(text.substr(0, c1));
    if (c2 == std::string::npos) {
      g.stop = std::stod(text.substr(c1 + 1));
      g.step = 1.0;
    } else {
      g.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
      g.step = std::stod(text.substr(c2 + 1));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be 'start:stop[:step]' or a number, got '" + text + "'");
  }
  if (!(g.step > 0.0) || !(g.stop >= g.start))
    throw std::invalid_argument("grid needs step > 0 and stop >= start: '" + text + "'");
  return g;
}

std::vector<double> GridAxis::values() const {
  if (!(step > 0.0) || !(stop >= start)) throw std::invalid_argument("invalid grid axis");
  std::vector<double> v;
  const long n = std::lround(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(start + static_cast<double>(i) * step);
  return v;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs > 0 ? jobs : 1, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

double scheme_rate(const ChannelGains& g, Scheme s) {
  switch (s) {
    case Scheme::PdfDeterministic: return pdf_lower(g, SwitchMode::Deterministic).value;
    case Scheme::PdfRandom: return pdf_lower(g, SwitchMode::Random).value;
    case Scheme::NncDeterministic: return nnc_lower_det(g).value;
    case Scheme::Lda: return lda_rate(g).value;
  }
  return 0.0;
}

}  // namespace

SweepGrid gap_sweep(const std::vector<double>& snr_db, const std::vector<double>& beta_grid,
                    Scheme scheme, double beta_sd, int jobs) {
  if (snr_db.empty() || beta_grid.empty()) throw std::invalid_argument("empty sweep grid");
  SweepGrid out;
  out.scheme = scheme;
  out.beta_sd = beta_sd;
  out.snr_db = snr_db;
  out.beta_grid = beta_grid;
  const std::size_t nb = beta_grid.size();
  out.points.resize(snr_db.size() * nb * nb);
  parallel_for(out.points.size(), jobs, [&](std::size_t idx) {
    const std::size_t k = idx / (nb * nb);
    const std::size_t i = (idx / nb) % nb;
    const std::size_t j = idx % nb;
    SweepPoint& p = out.points[idx];
    p.snr_db = snr_db[k];
    p.beta_rd = beta_grid[i];
    p.beta_sr = beta_grid[j];
    const ChannelGains g =
        exponents_to_gains({beta_sd, p.beta_rd, p.beta_sr}, db_to_linear(snr_db[k]));
    p.upper = cutset_upper(g).value;
    p.lower = scheme_rate(g, scheme);
    p.gap = p.upper - p.lower;
  });
  for (std::size_t k = 0; k < snr_db.size(); ++k) {
    SweepRow row{snr_db[k], -HUGE_VAL, 0.0, 0.0};
    for (std::size_t q = 0; q < nb * nb; ++q) {
      const SweepPoint& p = out.points[k * nb * nb + q];
      if (p.gap > row.max_gap) row = {p.snr_db, p.gap, p.beta_rd, p.beta_sr};
    }
    out.rows.push_back(row);
  }
  return out;
}

std::vector<DeltaPoint> switch_gain_map(double snr_db, const std::vector<double>& beta_grid,
                                        double beta_sd, int jobs) {
  const std::size_t nb = beta_grid.size();
  std::vector<DeltaPoint> out(nb * nb);
  parallel_for(out.size(), jobs, [&](std::size_t idx) {
    DeltaPoint& p = out[idx];
    p.beta_rd = beta_grid[idx / nb];
    p.beta_sr = beta_grid[idx % nb];
    const ChannelGains g =
        exponents_to_gains({beta_sd, p.beta_rd, p.beta_sr}, db_to_linear(snr_db));
    p.pdf_deterministic = pdf_lower(g, SwitchMode::Deterministic).value;
    p.pdf_random = pdf_lower(g, SwitchMode::Random).value;
    p.delta = p.pdf_random - p.pdf_deterministic;
  });
  return out;
}

std::vector<RateCurvePoint> rate_curve(const ChannelGains& g, const std::vector<double>& gammas,
                                       int jobs) {
  g.validate();
  std::vector<RateCurvePoint> out(gammas.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    const double gamma = gammas[i];
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
    RateCurvePoint& p = out[i];
    p.gamma = gamma;
    p.cutset = cutset_upper(g, gamma).value;
    p.pdf_random = pdf_lower(g, SwitchMode::Random, gamma).value;
    p.pdf_deterministic = pdf_lower(g, SwitchMode::Deterministic, gamma).value;
    const RateBound nr = nnc_lower_random(g, gamma);
    p.nnc_random = nr.value;
    p.converged = nr.converged;
    p.nnc_deterministic = nnc_lower_det(g, gamma).value;
    p.lda = lda_rate(g, gamma).value;
  });
  return out;
}

}  // namespace relaybounds
