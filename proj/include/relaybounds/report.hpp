// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "relaybounds/channel.hpp"
#include "relaybounds/lda.hpp"
#include "relaybounds/multirelay.hpp"
#include "relaybounds/sweep.hpp"

namespace relaybounds {

/// Shortest round-trip-safe decimal ("%.10g"), locale independent.
std::string format_number(double x);
std::string format_number(const std::optional<double>& x);

/// Parses "30dB", "-3.5 dB" or a plain linear value.
double parse_gain(const std::string& text);

std::string rates_csv_header();
std::string rates_csv_row(const RateBound& b, const ChannelGains& g);

std::string rate_curve_csv(const std::vector<RateCurvePoint>& curve);
std::string sweep_rows_csv(const std::vector<SweepGrid>& grids);
std::string sweep_points_csv(const std::vector<SweepGrid>& grids);
std::string delta_map_csv(double snr_db, const std::vector<DeltaPoint>& map);
std::string lda_curve_csv(const std::vector<LdaCurvePoint>& curve);
std::string gap_formula_csv(const std::vector<int>& ks);

struct NetworkSummary {
  std::string name;
  int K = 0;
  double best_relay_fd = 0.0;
  double gdof_fd = 0.0;
  double best_relay_hd = 0.0;
  double gdof_hd = 0.0;
  int active_states = 0;
};

NetworkSummary summarize_network(const std::string& name, const NetworkExponents& net);
std::string network_csv(const std::vector<NetworkSummary>& rows);

/// The four two-relay parameter rows (a_s1, a_s2, a_1d, a_2d, b1, b2) whose
/// half-duplex gDoF improves on the best single relay.
std::vector<std::array<double, 6>> two_relay_reference_rows();

}  // namespace relaybounds
