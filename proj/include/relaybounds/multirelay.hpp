// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaybounds/channel.hpp"

namespace relaybounds {

// Relay subsets and relay states are bit masks over the K-2 relays written
// most significant bit first: for K = 5, mask 4 = 0b100 selects the first
// relay (node 2 in 1-based numbering) only.
using RelayMask = std::uint32_t;

bool relay_selected(RelayMask mask, int relay, int relays);
std::string mask_bits(RelayMask mask, int relays);
/// 1-based node numbers of the relays in a mask.
std::vector<int> mask_nodes(RelayMask mask, int relays);

struct StateSchedule {
  int K = 3;
  std::vector<double> lambda;  ///< indexed by state mask
};

struct LpSolution {
  double gdof = 0.0;
  StateSchedule schedule;
  std::vector<RelayMask> tight_cuts;
  int active_states = 0;
  long iterations = 0;
};

/// Maximum-weight matching of a nonnegative weight matrix (rows need not
/// equal columns).
double max_weight_matching(const std::vector<std::vector<double>>& w);

/// High-SNR exponent of the cut whose source side holds the relays in `cut`,
/// when relays with a set bit in `state` transmit and the others listen.
double cut_exponent(const NetworkExponents& net, RelayMask cut, RelayMask state);

/// Slope of log2 det(I + H H^H) for the same cut between two SNRs, with unit
/// magnitude prefactors and seeded random phases.
double cut_slope_numeric(const NetworkExponents& net, RelayMask cut, RelayMask state,
                         double snr_lo, double snr_hi, std::uint64_t seed);

/// D[cut][state] for all 2^(K-2) cuts and states.
std::vector<std::vector<double>> cut_table(const NetworkExponents& net);

LpSolution gdof_lp(const NetworkExponents& net);
std::string to_json(const LpSolution& sol);

double gdof_fd_network(const NetworkExponents& net);

enum class DuplexMode { HalfDuplex, FullDuplex };
double best_relay_gdof(const NetworkExponents& net, DuplexMode mode);

double gap_bound(int K);
double gap_asymptotic(int K);
double diamond_gap(int K, bool assume_conjecture);

/// Active-state count of the LP schedule of a diamond network.
int diamond_state_sparsity(const NetworkExponents& net);

}  // namespace relaybounds
