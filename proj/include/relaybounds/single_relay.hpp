// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>

#include "relaybounds/channel.hpp"

namespace relaybounds {

/// Listen fraction, source power fraction spent while the relay listens, and
/// source/relay correlation magnitude.
struct PowerSplit {
  double gamma = 0.5;
  double beta = 0.5;
  double alpha1 = 0.0;

  void validate() const;
  double ps0() const { return beta / gamma; }
  double ps1() const { return (1.0 - beta) / (1.0 - gamma); }
  double pr1() const { return 1.0 / (1.0 - gamma); }
};

enum class SwitchMode { Deterministic, Random };

GdofValue gdof_hd(const ExponentTriple& e);
GdofValue gdof_fd(const ExponentTriple& e);

/// The two arguments of a max-min bound at one operating point.
struct CutPair {
  double broadcast = 0.0;  ///< destination-side cut (carries the switch term)
  double relay = 0.0;      ///< relay-side cut
  double value() const { return broadcast < relay ? broadcast : relay; }
};

CutPair cutset_objective(const ChannelGains& g, const PowerSplit& p);
CutPair pdf_objective(const ChannelGains& g, const PowerSplit& p, SwitchMode mode);

/// Point of the Q = S_r noisy network coding family; sigma2 is the
/// quantization noise that equalizes the two cuts.
struct NncDetPoint {
  double value = 0.0;
  std::optional<double> sigma2;
};
NncDetPoint nnc_det_objective(const ChannelGains& g, double gamma, double beta);

/// Operating point of the general noisy network coding family. probs holds
/// P[Q=i, S_r=j] as (g00, g01, g10, g11); ps is the share of source energy
/// spent when Q = 0 and pr the share of relay energy spent when Q = 0.
struct NncPoint {
  std::array<double, 4> probs{0.25, 0.25, 0.25, 0.25};
  double ps = 0.5;
  double pr = 0.5;
};
double nnc_random_objective(const ChannelGains& g, const NncPoint& p,
                            bool with_switch_info = true);

// Bounds. A fixed gamma restricts the search to that listen fraction, which
// yields rate-versus-gamma curves.
RateBound cutset_upper(const ChannelGains& g, std::optional<double> gamma = std::nullopt);
RateBound cutset_upper_analytic(const ChannelGains& g);
RateBound fd_cutset_s0(const ChannelGains& g);
RateBound pdf_lower(const ChannelGains& g, SwitchMode mode,
                    std::optional<double> gamma = std::nullopt);
RateBound pdf_lower_analytic(const ChannelGains& g);
RateBound lda_rate(const ChannelGains& g, std::optional<double> gamma = std::nullopt);
RateBound nnc_lower_det(const ChannelGains& g, std::optional<double> gamma = std::nullopt);
RateBound nnc_lower_random(const ChannelGains& g, std::optional<double> gamma = std::nullopt);
RateBound nnc_lower_noQ(const ChannelGains& g, std::optional<double> gamma = std::nullopt);
RateBound nnc_lower_analytic(const ChannelGains& g);

struct GapConstants {
  double lda_s0_gap = 0.0;
  double lda_s0_gamma = 0.0;
  double nnc_gap = 0.0;
  double nnc_gamma = 0.0;
  double lda_gap_sup = 0.0;
};
GapConstants analytic_gap_constants();

}  // namespace relaybounds
