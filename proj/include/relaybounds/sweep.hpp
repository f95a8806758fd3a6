// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "relaybounds/channel.hpp"

namespace relaybounds {

enum class Scheme { PdfDeterministic, PdfRandom, NncDeterministic, Lda };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

/// Inclusive arithmetic grid start, start + step, ..., stop.
struct GridAxis {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// Parses "start:stop:step", "start:stop" (unit step) or a single number.
  static GridAxis parse(const std::string& text);
  std::vector<double> values() const;
};

struct SweepPoint {
  double snr_db = 0.0;
  double beta_rd = 0.0;
  double beta_sr = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;
};

struct SweepRow {
  double snr_db = 0.0;
  double max_gap = 0.0;
  double beta_rd_at_max = 0.0;
  double beta_sr_at_max = 0.0;
};

struct SweepGrid {
  Scheme scheme = Scheme::PdfDeterministic;
  double beta_sd = 1.0;
  std::vector<double> snr_db;
  std::vector<double> beta_grid;
  std::vector<SweepPoint> points;  ///< SNR-major, then beta_rd, then beta_sr
  std::vector<SweepRow> rows;      ///< one per SNR
};

/// Runs fn(0) .. fn(n-1) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// Cut-set bound minus the scheme's lower bound over a (beta_rd, beta_sr)
/// grid at each SNR; rows hold the per-SNR maximum (first maximizer wins).
SweepGrid gap_sweep(const std::vector<double>& snr_db, const std::vector<double>& beta_grid,
                    Scheme scheme, double beta_sd = 1.0, int jobs = 1);

struct DeltaPoint {
  double beta_rd = 0.0;
  double beta_sr = 0.0;
  double pdf_random = 0.0;
  double pdf_deterministic = 0.0;
  double delta = 0.0;
};

/// Gain of the random switch over the deterministic one for PDF at one SNR.
std::vector<DeltaPoint> switch_gain_map(double snr_db, const std::vector<double>& beta_grid,
                                        double beta_sd = 1.0, int jobs = 1);

struct RateCurvePoint {
  double gamma = 0.0;
  double cutset = 0.0;
  double pdf_random = 0.0;
  double pdf_deterministic = 0.0;
  double nnc_random = 0.0;
  double nnc_deterministic = 0.0;
  double lda = 0.0;
  bool converged = true;
};

/// Every bound with the listen fraction held at each value of `gammas`.
std::vector<RateCurvePoint> rate_curve(const ChannelGains& g, const std::vector<double>& gammas,
                                       int jobs = 1);

}  // namespace relaybounds
