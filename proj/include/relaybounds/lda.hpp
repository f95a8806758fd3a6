// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace relaybounds {

/// Bit-level link widths of the linear deterministic relay channel.
struct LdaChannel {
  int beta_sd = 0;
  int beta_rd = 0;
  int beta_sr = 0;

  void validate() const;
  int n() const;
};

struct LdaSchedule {
  double gamma = 0.5;
  double p0 = 0.0;  ///< probability of the all-zero upper relay word
};

double lda_capacity_hd(const LdaChannel& ch);
double lda_capacity_fd(const LdaChannel& ch);

/// Optimal listen fraction and zero-word probability of the capacity formula.
LdaSchedule lda_optimal_schedule(const LdaChannel& ch);

/// Entropy in bits of gamma * delta_0 + (1 - gamma) * Bernoulli(q)^width over
/// width-bit words. width <= 16.
double lda_word_entropy(double gamma, double q, int width);

struct LdaCurvePoint {
  double gamma = 0.0;
  double rate_iid_det = 0.0;
  double rate_iid_rand = 0.0;
  double rate_iidq_rand = 0.0;
  double q_opt = 0.5;
  double rate_optimal = 0.0;
};

/// Rates of the four relay strategies at each listen fraction in `gammas`.
std::vector<LdaCurvePoint> lda_achievable_variants(const LdaChannel& ch,
                                                   const std::vector<double>& gammas);
/// Same on the uniform grid 0, step, ..., 1.
std::vector<LdaCurvePoint> lda_achievable_variants(const LdaChannel& ch, double step = 0.01);

struct LdaSimulationReport {
  bool decoded_ok = false;
  double achieved_rate = 0.0;
  double target_rate = 0.0;  ///< beta_sd + gamma* (beta_sr - beta_sd)
  double rate_loss = 0.0;    ///< target minus achieved, from slot rounding
  std::size_t slots = 0;
  std::size_t listen_slots = 0;
  std::size_t transmit_slots = 0;
  std::size_t capacity_bits = 0;
  std::vector<std::uint8_t> decoded;
};

/// Largest payload the two-phase scheme carries in `slots` channel uses.
std::size_t lda_scheme_capacity(const LdaChannel& ch, std::size_t slots);

/// Runs the two-phase scheme bit-exactly over the shift channel. Requires
/// beta_sr > beta_sd and beta_rd > beta_sd. Payload bits are 0/1 values and
/// must fit lda_scheme_capacity(ch, slots).
LdaSimulationReport simulate_lda_scheme(const LdaChannel& ch, std::size_t slots,
                                        const std::vector<std::uint8_t>& payload);
/// Same with a full-capacity payload drawn from a seeded generator.
LdaSimulationReport simulate_lda_scheme(const LdaChannel& ch, std::size_t slots,
                                        std::uint64_t seed);

}  // namespace relaybounds
