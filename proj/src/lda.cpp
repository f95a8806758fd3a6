// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/lda.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

#include "relaybounds/numeric.hpp"

namespace relaybounds {

namespace {

constexpr int kMaxWordWidth = 16;

int pos(int x) { return x > 0 ? x : 0; }

// Entropy bound of the upper destination word when the relay listens a
// fraction gamma of the time and otherwise sends one of L = 2^width words.
double upper_word_bound(double gamma, int width) {
  if (width <= 0) return 0.0;
  const double inv_L = std::exp2(-width);
  const double theta = 1.0 - std::max(inv_L, gamma);
  if (theta <= 0.0) return 0.0;
  const double log_Lm1 = width + std::log2(1.0 - inv_L);
  return -(1.0 - theta) * std::log2(1.0 - theta) + theta * (log_Lm1 - std::log2(theta));
}

using BitVec = std::vector<std::uint8_t>;

// Receiver sees the top `beta` levels of the transmitted vector at its
// bottom `beta` levels.
BitVec shift_channel(const BitVec& x, int n, int beta) {
  BitVec y(static_cast<std::size_t>(n), 0);
  const int k = n - beta;
  for (int i = k; i < n; ++i) y[i] = x[i - k];
  return y;
}

void xor_into(BitVec& y, const BitVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] ^= x[i];
}

}  // namespace

void LdaChannel::validate() const {
  if (beta_sd < 0 || beta_rd < 0 || beta_sr < 0)
    throw std::invalid_argument("bit widths must be >= 0");
  if (n() < 1) throw std::invalid_argument("at least one link width must be >= 1");
}

int LdaChannel::n() const { return std::max({beta_sd, beta_rd, beta_sr}); }

double lda_capacity_fd(const LdaChannel& ch) {
  ch.validate();
  return ch.beta_sd + std::min(pos(ch.beta_rd - ch.beta_sd), pos(ch.beta_sr - ch.beta_sd));
}

LdaSchedule lda_optimal_schedule(const LdaChannel& ch) {
  ch.validate();
  const int drd = ch.beta_rd - ch.beta_sd;
  const int dsr = ch.beta_sr - ch.beta_sd;
  if (drd <= 0 || dsr <= 0) return {1.0, 1.0};
  // The entropy bound decreases in gamma and the relay cut grows, so the
  // max-min is unimodal.
  const Max1d best = grid_golden_max(
      [&](double g) { return std::min(upper_word_bound(g, drd), g * dsr); }, 0.0, 1.0, 101,
      1e-12);
  const double inv_L = std::exp2(-drd);
  const double p0 = best.x < 1.0 ? std::max(inv_L - best.x, 0.0) / (1.0 - best.x) : 0.0;
  return {best.x, p0};
}

double lda_capacity_hd(const LdaChannel& ch) {
  ch.validate();
  const int drd = ch.beta_rd - ch.beta_sd;
  const int dsr = ch.beta_sr - ch.beta_sd;
  if (drd <= 0 || dsr <= 0) return ch.beta_sd;
  const double g = lda_optimal_schedule(ch).gamma;
  return ch.beta_sd + std::min(upper_word_bound(g, drd), g * dsr);
}

double lda_word_entropy(double gamma, double q, int width) {
  if (width < 0 || width > kMaxWordWidth)
    throw std::invalid_argument("word width must lie in [0, 16]");
  if (!(gamma >= 0.0 && gamma <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("gamma and q must lie in [0, 1]");
  if (width == 0) return 0.0;
  auto plogp = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  double h = plogp(gamma + (1.0 - gamma) * std::pow(1.0 - q, width));
  double binom = 1.0;
  for (int k = 1; k <= width; ++k) {
    binom = binom * (width - k + 1) / k;
    const double p = (1.0 - gamma) * std::pow(q, k) * std::pow(1.0 - q, width - k);
    h += binom * plogp(p);
  }
  return h;
}

std::vector<LdaCurvePoint> lda_achievable_variants(const LdaChannel& ch,
                                                   const std::vector<double>& gammas) {
  ch.validate();
  const int drd = pos(ch.beta_rd - ch.beta_sd);
  const int dsr = pos(ch.beta_sr - ch.beta_sd);
  if (drd > kMaxWordWidth)
    throw std::invalid_argument("relay word width above 16 bits is unsupported");
  std::vector<LdaCurvePoint> out;
  out.reserve(gammas.size());
  for (double g : gammas) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
    LdaCurvePoint p;
    p.gamma = g;
    const double relay_cut = g * dsr;
    p.rate_iid_det = ch.beta_sd + std::min(relay_cut, (1.0 - g) * drd);
    p.rate_iid_rand = ch.beta_sd + std::min(lda_word_entropy(g, 0.5, drd), relay_cut);
    double best = -1.0;
    for (int k = 0; k <= 1000; ++k) {
      const double q = k / 1000.0;
      const double v = std::min(lda_word_entropy(g, q, drd), relay_cut);
      if (v > best) {
        best = v;
        p.q_opt = q;
      }
    }
    p.rate_iidq_rand = ch.beta_sd + best;
    p.rate_optimal = ch.beta_sd + std::min(upper_word_bound(g, drd), relay_cut);
    out.push_back(p);
  }
  return out;
}

std::vector<LdaCurvePoint> lda_achievable_variants(const LdaChannel& ch, double step) {
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("step must lie in (0, 1]");
  const int n = static_cast<int>(std::llround(1.0 / step));
  std::vector<double> gammas;
  for (int i = 0; i <= n; ++i) gammas.push_back(std::min(1.0, i * step));
  if (gammas.back() < 1.0) gammas.push_back(1.0);
  return lda_achievable_variants(ch, gammas);
}

namespace {

struct Phases {
  std::size_t listen;
  std::size_t transmit;
  double gamma;
};

Phases scheme_phases(const LdaChannel& ch, std::size_t slots) {
  ch.validate();
  const int dsr = ch.beta_sr - ch.beta_sd;
  const int drd = ch.beta_rd - ch.beta_sd;
  if (dsr <= 0 || drd <= 0)
    throw std::invalid_argument("two-phase scheme needs beta_sr > beta_sd and beta_rd > beta_sd");
  if (slots == 0) throw std::invalid_argument("slots must be >= 1");
  const double gamma = static_cast<double>(drd) / (drd + dsr);
  const auto listen =
      static_cast<std::size_t>(std::floor(gamma * static_cast<double>(slots)));
  return {listen, slots - listen, gamma};
}

}  // namespace

std::size_t lda_scheme_capacity(const LdaChannel& ch, std::size_t slots) {
  const Phases ph = scheme_phases(ch, slots);
  return slots * static_cast<std::size_t>(ch.beta_sd) +
         ph.listen * static_cast<std::size_t>(ch.beta_sr - ch.beta_sd);
}

LdaSimulationReport simulate_lda_scheme(const LdaChannel& ch, std::size_t slots,
                                        const std::vector<std::uint8_t>& payload) {
  const Phases ph = scheme_phases(ch, slots);
  const std::size_t cap = lda_scheme_capacity(ch, slots);
  if (payload.size() > cap) throw std::invalid_argument("payload exceeds scheme capacity");
  for (auto b : payload)
    if (b > 1) throw std::invalid_argument("payload entries must be 0 or 1");

  const int n = ch.n();
  const int sd = ch.beta_sd, dsr = ch.beta_sr - sd, drd = ch.beta_rd - sd;
  const std::size_t direct_len = std::min(payload.size(), slots * static_cast<std::size_t>(sd));
  std::size_t next_direct = 0, next_relayed = direct_len;
  auto take_direct = [&] { return next_direct < direct_len ? payload[next_direct++] : 0; };
  auto take_relayed = [&] {
    return next_relayed < payload.size() ? payload[next_relayed++] : std::uint8_t{0};
  };

  std::deque<std::uint8_t> relay_fifo;
  BitVec direct_rx, relayed_rx;

  for (std::size_t t = 0; t < slots; ++t) {
    const bool listening = t < ph.listen;
    BitVec xs(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < sd; ++i) xs[i] = take_direct();
    if (listening) {
      for (int i = 0; i < dsr; ++i) xs[sd + i] = take_relayed();
      const BitVec yr = shift_channel(xs, n, ch.beta_sr);
      const int top = n - ch.beta_sr;
      for (int i = 0; i < dsr; ++i) relay_fifo.push_back(yr[top + sd + i]);
      const BitVec yd = shift_channel(xs, n, sd);
      for (int i = 0; i < sd; ++i) direct_rx.push_back(yd[n - sd + i]);
    } else {
      BitVec xr(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < drd && !relay_fifo.empty(); ++i) {
        xr[i] = relay_fifo.front();
        relay_fifo.pop_front();
      }
      BitVec yd = shift_channel(xs, n, sd);
      xor_into(yd, shift_channel(xr, n, ch.beta_rd));
      // Decode the relay word from the levels the source does not reach,
      // then cancel the relay signal before reading the direct bits.
      BitVec xr_hat(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < drd; ++i) {
        xr_hat[i] = yd[n - ch.beta_rd + i];
        relayed_rx.push_back(xr_hat[i]);
      }
      xor_into(yd, shift_channel(xr_hat, n, ch.beta_rd));
      for (int i = 0; i < sd; ++i) direct_rx.push_back(yd[n - sd + i]);
    }
  }

  LdaSimulationReport rep;
  rep.slots = slots;
  rep.listen_slots = ph.listen;
  rep.transmit_slots = ph.transmit;
  rep.capacity_bits = cap;
  rep.decoded.assign(direct_rx.begin(), direct_rx.begin() + static_cast<long>(direct_len));
  const std::size_t relayed_len = payload.size() - direct_len;
  if (relayed_rx.size() < relayed_len)
    throw std::logic_error("relay phase delivered fewer bits than were buffered");
  rep.decoded.insert(rep.decoded.end(), relayed_rx.begin(),
                     relayed_rx.begin() + static_cast<long>(relayed_len));
  if (rep.decoded != payload) throw std::logic_error("LDA scheme decoded a different payload");
  rep.decoded_ok = true;
  rep.achieved_rate = static_cast<double>(payload.size()) / static_cast<double>(slots);
  rep.target_rate = sd + ph.gamma * dsr;
  rep.rate_loss = rep.target_rate - rep.achieved_rate;
  return rep;
}

LdaSimulationReport simulate_lda_scheme(const LdaChannel& ch, std::size_t slots,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> payload(lda_scheme_capacity(ch, slots));
  for (auto& b : payload) b = coin(rng) ? 1 : 0;
  return simulate_lda_scheme(ch, slots, payload);
}

}  // namespace relaybounds
