// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/single_relay.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "relaybounds/mixture.hpp"
#include "relaybounds/numeric.hpp"

namespace relaybounds {

namespace {

constexpr int kGridPoints = 21;
constexpr double kTol = 1e-9;
constexpr int kRandomGridPoints = 11;
constexpr double kRandomTol = 1e-6;

double pos(double x) { return x > 0.0 ? x : 0.0; }

// Signal energy reaching the destination per unit of (1 - gamma) while the
// relay transmits, for a given correlation magnitude.
double coherent_sum(double u, double I, double alpha) {
  return u + I + 2.0 * alpha * std::sqrt(u * I);
}

struct AlphaTerms {
  double w;  // 1 - gamma
  double u;  // S (1 - beta)
  double I;
};

double f_dest(double c1, const AlphaTerms& t, double a) {
  return c1 + scaled_log2(t.w, coherent_sum(t.u, t.I, a));
}

double f_relay(double c2, const AlphaTerms& t, double a) {
  return c2 + scaled_log2(t.w, (1.0 - a * a) * t.u);
}

// max over alpha of min{f_dest, f_relay}; the first grows and the second
// shrinks with alpha, so the optimum is the crossing or an endpoint.
double best_alpha_fixed(double c1, double c2, const AlphaTerms& t) {
  if (t.w <= 0.0 || t.u <= 0.0) return 0.0;
  if (f_dest(c1, t, 0.0) >= f_relay(c2, t, 0.0)) return 0.0;
  if (f_dest(c1, t, 1.0) <= f_relay(c2, t, 1.0)) return 1.0;
  const double R = std::exp2((c2 - c1) / t.w);
  if (std::isfinite(R)) {
    const double a = R * t.u;
    const double b = 2.0 * std::sqrt(t.u * t.I);
    const double c = t.w + t.u + t.I - R * (t.w + t.u);
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    const double root = -2.0 * c / (b + std::sqrt(disc));
    if (std::isfinite(root)) return std::clamp(root, 0.0, 1.0);
  }
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f_dest(c1, t, mid) < f_relay(c2, t, mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double pdf_switch_info(const ChannelGains& g, double gamma, double beta, double alpha) {
  if (gamma <= 0.0 || gamma >= 1.0) return 0.0;
  const double w = 1.0 - gamma;
  const double v0 = 1.0 + g.S * beta / gamma;
  const double v1 = 1.0 + coherent_sum(g.S * (1.0 - beta), g.I, alpha) / w;
  return switch_info_mixture({gamma, v0, v1});
}

struct Eval2 {
  double value;
  double alpha;
};

using Eval2Fn = std::function<Eval2(double, double)>;

struct Argmax2 {
  double gamma = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  double value = -HUGE_VAL;
};

// Nested search: gamma outside, beta inside, each a grid followed by golden
// section around the best grid cell.
Argmax2 maximize_gamma_beta(const Eval2Fn& eval, std::optional<double> fixed_gamma,
                            int points, double tol) {
  auto inner = [&](double gamma) {
    return grid_golden_max([&](double b) { return eval(gamma, b).value; }, 0.0, 1.0, points,
                           tol);
  };
  Max1d outer;
  if (fixed_gamma) {
    outer = {*fixed_gamma, inner(*fixed_gamma).value};
  } else {
    outer = grid_golden_max([&](double gm) { return inner(gm).value; }, 0.0, 1.0, points, tol);
  }
  const Max1d in = inner(outer.x);
  const Eval2 e = eval(outer.x, in.x);
  return {outer.x, in.x, e.alpha, e.value};
}

void check_gamma(std::optional<double> gamma) {
  if (gamma && !(*gamma >= 0.0 && *gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1]");
}

RateBound make_bound(BoundKind kind, double value, double gamma, std::optional<double> beta,
                     std::optional<double> alpha) {
  RateBound r;
  r.kind = kind;
  r.value = std::max(0.0, value);
  r.optimizer.gamma = gamma;
  r.optimizer.beta = beta;
  r.optimizer.alpha1 = alpha;
  return r;
}

Eval2 cutset_eval(const ChannelGains& g, double gamma, double beta) {
  const AlphaTerms t{1.0 - gamma, g.S * (1.0 - beta), g.I};
  const double c1 = binary_entropy(gamma) + scaled_log2(gamma, g.S * beta);
  const double c2 = scaled_log2(gamma, (g.C + g.S) * beta);
  const double a = best_alpha_fixed(c1, c2, t);
  return {std::min(f_dest(c1, t, a), f_relay(c2, t, a)), a};
}

Eval2 pdf_det_eval(const ChannelGains& g, double gamma, double beta) {
  const AlphaTerms t{1.0 - gamma, g.S * (1.0 - beta), g.I};
  const double c1 = scaled_log2(gamma, g.S * beta);
  const double c2 = scaled_log2(gamma, std::max(g.C, g.S) * beta);
  const double a = best_alpha_fixed(c1, c2, t);
  return {std::min(f_dest(c1, t, a), f_relay(c2, t, a)), a};
}

Eval2 pdf_rand_eval(const ChannelGains& g, double gamma, double beta) {
  const AlphaTerms t{1.0 - gamma, g.S * (1.0 - beta), g.I};
  const double c1 = scaled_log2(gamma, g.S * beta);
  const double c2 = scaled_log2(gamma, std::max(g.C, g.S) * beta);
  auto f1 = [&](double a) { return pdf_switch_info(g, gamma, beta, a) + f_dest(c1, t, a); };
  auto f2 = [&](double a) { return f_relay(c2, t, a); };
  double a = 0.0;
  if (t.w > 0.0 && t.u > 0.0 && f1(0.0) < f2(0.0)) {
    if (f1(1.0) <= f2(1.0)) {
      a = 1.0;
    } else {
      std::uintmax_t iters = 60;
      const auto br = boost::math::tools::toms748_solve(
          [&](double x) { return f1(x) - f2(x); }, 0.0, 1.0,
          boost::math::tools::eps_tolerance<double>(40), iters);
      a = 0.5 * (br.first + br.second);
    }
  }
  return {std::min(f1(a), f2(a)), a};
}

}  // namespace

void PowerSplit::validate() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(gamma) || !unit(beta) || !unit(alpha1))
    throw std::invalid_argument("power split entries must lie in [0, 1]");
}

GdofValue gdof_hd(const ExponentTriple& e) {
  e.validate();
  const double a = e.beta_rd - e.beta_sd;
  const double b = e.beta_sr - e.beta_sd;
  if (a > 0.0 && b > 0.0) return {e.beta_sd + a * b / (a + b)};
  return {e.beta_sd};
}

GdofValue gdof_fd(const ExponentTriple& e) {
  e.validate();
  return {e.beta_sd + std::min(pos(e.beta_sr - e.beta_sd), pos(e.beta_rd - e.beta_sd))};
}

CutPair cutset_objective(const ChannelGains& g, const PowerSplit& p) {
  g.validate();
  p.validate();
  const AlphaTerms t{1.0 - p.gamma, g.S * (1.0 - p.beta), g.I};
  const double c1 = binary_entropy(p.gamma) + scaled_log2(p.gamma, g.S * p.beta);
  const double c2 = scaled_log2(p.gamma, (g.C + g.S) * p.beta);
  return {f_dest(c1, t, p.alpha1), f_relay(c2, t, p.alpha1)};
}

CutPair pdf_objective(const ChannelGains& g, const PowerSplit& p, SwitchMode mode) {
  g.validate();
  p.validate();
  const AlphaTerms t{1.0 - p.gamma, g.S * (1.0 - p.beta), g.I};
  double c1 = scaled_log2(p.gamma, g.S * p.beta);
  if (mode == SwitchMode::Random) c1 += pdf_switch_info(g, p.gamma, p.beta, p.alpha1);
  const double c2 = scaled_log2(p.gamma, std::max(g.C, g.S) * p.beta);
  return {f_dest(c1, t, p.alpha1), f_relay(c2, t, p.alpha1)};
}

NncDetPoint nnc_det_objective(const ChannelGains& g, double gamma, double beta) {
  if (!(gamma >= 0.0 && gamma <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("gamma and beta must lie in [0, 1]");
  const double w = 1.0 - gamma;
  const double direct_tx = scaled_log2(w, g.S * (1.0 - beta));
  if (gamma <= 0.0) return {direct_tx, std::nullopt};
  if (w <= 0.0) return {scaled_log2(gamma, g.S * beta), HUGE_VAL};
  const double A = g.I / (w + g.S * (1.0 - beta));
  const double B = g.C * beta / (gamma + g.S * beta);
  const double growth = std::expm1((w / gamma) * std::log1p(A));
  const double sigma2 = std::isfinite(growth) ? (B + 1.0) / growth : 0.0;
  const double heard = g.S * beta + g.C * beta / (1.0 + sigma2);
  return {scaled_log2(gamma, heard) + direct_tx, sigma2};
}

double nnc_random_objective(const ChannelGains& g, const NncPoint& p, bool with_switch_info) {
  const auto& gm = p.probs;
  double total = 0.0;
  for (double x : gm) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("state probabilities in [0,1]");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("state probabilities must sum to 1");
  if (!(p.ps >= 0.0 && p.ps <= 1.0) || !(p.pr >= 0.0 && p.pr <= 1.0))
    throw std::invalid_argument("power shares must lie in [0, 1]");

  // index k = 2 i + j for Q = i, S_r = j
  const double q[2] = {gm[0] + gm[1], gm[2] + gm[3]};
  const double src_share[2] = {p.ps, 1.0 - p.ps};
  const double rel_share[2] = {p.pr, 1.0 - p.pr};
  double Ps[2], Cq[2], base = 0.0, info = 0.0, logv = 0.0;
  for (int i = 0; i < 2; ++i) {
    Ps[i] = q[i] > 0.0 ? src_share[i] / q[i] : 0.0;
    Cq[i] = 1.0 + g.C * Ps[i] / (1.0 + g.S * Ps[i]);
    if (q[i] <= 0.0) continue;
    base += q[i] * log2p(g.S * Ps[i]);
    const double g0 = gm[2 * i], g1 = gm[2 * i + 1];
    const double v0 = 1.0 + g.S * Ps[i];
    if (g0 > 0.0) logv += g0 * std::log2(v0);
    if (g1 > 0.0) {
      const double v1 = v0 + g.I * rel_share[i] / g1;
      logv += g1 * std::log2(v1);
      if (with_switch_info && g0 > 0.0) info += q[i] * switch_info_mixture({g0 / q[i], v0, v1});
    }
  }
  const double excess = info + logv - base;
  bool usable = false;
  for (int i = 0; i < 2; ++i) usable = usable || (gm[2 * i] > 0.0 && Cq[i] > 1.0);
  if (excess <= 0.0 || !usable) return base;

  // Quantization levels x_i = [eta C_i - 1]^+ / ((1 - eta) C_i) fill the
  // compression budget `excess`; eta is found by bisection.
  auto level = [&](int i, double eta) {
    return std::max(eta * Cq[i] - 1.0, 0.0) / ((1.0 - eta) * Cq[i]);
  };
  auto spent = [&](double eta) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      if (gm[2 * i] > 0.0 && Cq[i] > 1.0) s += gm[2 * i] * log2p(level(i, eta) * Cq[i]);
    return s;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spent(mid) < excess ? lo : hi) = mid;
  }
  const double eta = lo;
  double penalty = 0.0;
  double used = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (gm[2 * i] <= 0.0 || Cq[i] <= 1.0) continue;
    const double x = level(i, eta);
    penalty += gm[2 * i] * log2p(x);
    used += gm[2 * i] * log2p(x * Cq[i]);
  }
  return base + std::min(excess, used) - penalty;
}

RateBound cutset_upper(const ChannelGains& g, std::optional<double> gamma) {
  g.validate();
  check_gamma(gamma);
  const auto best = maximize_gamma_beta(
      [&](double gm, double b) { return cutset_eval(g, gm, b); }, gamma, kGridPoints, kTol);
  return make_bound(BoundKind::CutsetNumeric, best.value, best.gamma, best.beta, best.alpha);
}

RateBound cutset_upper_analytic(const ChannelGains& g) {
  g.validate();
  const double l0 = log2p(g.S);
  const double root = std::sqrt(g.I) + std::sqrt(g.S);
  const double d1 = log2p(root * root) - l0;
  const double d2 = log2p(g.C + g.S) - l0;
  const double sum = d1 + d2;
  const double extra = sum > 0.0 ? d1 * d2 / sum : 0.0;
  return make_bound(BoundKind::CutsetAnalytic, 2.0 + l0 + extra, sum > 0.0 ? d1 / sum : 1.0,
                    std::nullopt, std::nullopt);
}

RateBound fd_cutset_s0(const ChannelGains& g) {
  g.validate();
  if (g.S != 0.0) throw std::domain_error("fd_cutset_s0 requires S = 0");
  RateBound r;
  r.kind = BoundKind::FdCutset;
  r.value = log2p(std::min(g.C, g.I));
  return r;
}

RateBound pdf_lower_analytic(const ChannelGains& g) {
  g.validate();
  const double l0 = log2p(g.S);
  const double e1 = log2p(g.I + g.S) - l0;
  const double e2 = log2p(std::max(g.C, g.S)) - l0;
  const double sum = e1 + e2;
  const double extra = sum > 0.0 ? e1 * e2 / sum : 0.0;
  const double gm = sum > 0.0 ? e1 / sum : 1.0;
  return make_bound(BoundKind::PdfAnalytic, l0 + extra, gm, gm, 0.0);
}

RateBound pdf_lower(const ChannelGains& g, SwitchMode mode, std::optional<double> gamma) {
  g.validate();
  check_gamma(gamma);
  Argmax2 det = maximize_gamma_beta([&](double gm, double b) { return pdf_det_eval(g, gm, b); },
                                    gamma, kGridPoints, kTol);
  if (!gamma) {
    // The closed-form operating point is always feasible.
    const auto an = pdf_lower_analytic(g);
    const double ga = *an.optimizer.gamma;
    const Eval2 e = pdf_det_eval(g, ga, ga);
    if (e.value > det.value) det = {ga, ga, e.alpha, e.value};
  }
  if (mode == SwitchMode::Deterministic)
    return make_bound(BoundKind::PdfDeterministic, det.value, det.gamma, det.beta, det.alpha);

  Argmax2 rnd = maximize_gamma_beta([&](double gm, double b) { return pdf_rand_eval(g, gm, b); },
                                    gamma, kRandomGridPoints, kRandomTol);
  const Eval2 at_det = pdf_rand_eval(g, det.gamma, det.beta);
  if (at_det.value > rnd.value) rnd = {det.gamma, det.beta, at_det.alpha, at_det.value};
  return make_bound(BoundKind::PdfRandom, rnd.value, rnd.gamma, rnd.beta, rnd.alpha);
}

RateBound lda_rate(const ChannelGains& g, std::optional<double> gamma) {
  g.validate();
  check_gamma(gamma);
  const double l0 = log2p(g.S);
  const double x = log2p(g.I / (1.0 + g.S));
  const double y = log2p(g.C / (1.0 + g.S)) - log2p(g.S / (1.0 + g.S));
  RateBound r;
  r.kind = BoundKind::Lda;
  if (gamma) {
    r.value = l0 + std::min(*gamma * pos(y), (1.0 - *gamma) * x);
    r.optimizer.gamma = *gamma;
  } else if (y <= 0.0) {
    r.value = l0;
    r.optimizer.gamma = 1.0;
  } else {
    r.value = l0 + x * y / (x + y);
    r.optimizer.gamma = x / (x + y);
  }
  return r;
}

RateBound nnc_lower_analytic(const ChannelGains& g) {
  g.validate();
  const double l0 = log2p(g.S);
  const double e5 = log2p(g.I + g.S) - l0;
  const double e6 = log2p(g.C / 2.0 + g.S) - l0;
  const double sum = e5 + e6;
  const double gm = sum > 0.0 ? e5 / sum : 1.0;
  RateBound r = make_bound(BoundKind::NncAnalytic, -1.0 + l0 + (sum > 0.0 ? e5 * e6 / sum : 0.0),
                           gm, gm, std::nullopt);
  r.optimizer.sigma2 = 1.0;
  return r;
}

RateBound nnc_lower_det(const ChannelGains& g, std::optional<double> gamma) {
  g.validate();
  check_gamma(gamma);
  Argmax2 best = maximize_gamma_beta(
      [&](double gm, double b) { return Eval2{nnc_det_objective(g, gm, b).value, 0.0}; }, gamma,
      kGridPoints, kTol);
  if (!gamma) {
    const double ga = *nnc_lower_analytic(g).optimizer.gamma;
    const double v = nnc_det_objective(g, ga, ga).value;
    if (v > best.value) best = {ga, ga, 0.0, v};
  }
  RateBound r = make_bound(BoundKind::NncDeterministic, best.value, best.gamma, best.beta,
                           std::nullopt);
  const auto s = nnc_det_objective(g, best.gamma, best.beta).sigma2;
  if (s && std::isfinite(*s)) r.optimizer.sigma2 = *s;
  return r;
}

namespace {

struct NoQPoint {
  double value;
  double sigma2;
};

NoQPoint nnc_noq_eval(const ChannelGains& g, double gamma) {
  const double l0 = log2p(g.S);
  if (gamma <= 0.0) return {l0, HUGE_VAL};
  const double w = 1.0 - gamma;
  const double listen = 1.0 + g.S;
  const double talk = listen + (w > 0.0 ? g.I / w : 0.0);
  const double info = w > 0.0 ? switch_info_mixture({gamma, listen, talk}) : 0.0;
  // Equating the cuts in u = 1 / (1 + sigma^2) gives a closed form.
  const double budget = info + gamma * l0 + w * std::log2(talk) - w * l0;
  const double E = std::exp2(budget / gamma);
  double u = std::isfinite(E) ? 1.0 - (g.C + 1.0 + g.S) / (g.C + E) : 1.0;
  u = std::clamp(u, 0.0, 1.0);
  const double value = gamma * log2p(g.S + g.C * u) + w * l0;
  return {value, u > 0.0 ? 1.0 / u - 1.0 : HUGE_VAL};
}

}  // namespace

RateBound nnc_lower_noQ(const ChannelGains& g, std::optional<double> gamma) {
  g.validate();
  check_gamma(gamma);
  Max1d best;
  if (gamma) {
    best = {*gamma, nnc_noq_eval(g, *gamma).value};
  } else {
    best = grid_golden_max([&](double gm) { return nnc_noq_eval(g, gm).value; }, 0.0, 1.0,
                           kGridPoints, kRandomTol);
  }
  RateBound r = make_bound(BoundKind::NncNoQ, best.value, best.x, std::nullopt, std::nullopt);
  const double s = nnc_noq_eval(g, best.x).sigma2;
  if (std::isfinite(s)) r.optimizer.sigma2 = s;
  r.optimizer.state_probs = std::array<double, 4>{0.0, 0.0, best.x, 1.0 - best.x};
  return r;
}

namespace {

// Search coordinates: gamma = P[S_r = 0], a = P[Q = 0 | S_r = 0],
// b = P[Q = 0 | S_r = 1], and the two power shares.
NncPoint nnc_point(const std::vector<double>& x) {
  const double gm = x[0], a = x[1], b = x[2];
  NncPoint p;
  p.probs = {gm * a, (1.0 - gm) * b, gm * (1.0 - a), (1.0 - gm) * (1.0 - b)};
  double s = p.probs[0] + p.probs[1] + p.probs[2];
  p.probs[3] = std::max(0.0, 1.0 - s);
  p.ps = x[3];
  p.pr = x[4];
  return p;
}

}  // namespace

RateBound nnc_lower_random(const ChannelGains& g, std::optional<double> gamma) {
  g.validate();
  check_gamma(gamma);
  const RateBound det = nnc_lower_det(g, gamma);
  const RateBound noq = nnc_lower_noQ(g, gamma);
  std::vector<Interval> box(5, Interval{0.0, 1.0});
  if (gamma) box[0] = {*gamma, *gamma};
  const std::vector<std::vector<double>> seeds = {
      {*det.optimizer.gamma, 1.0, 0.0, *det.optimizer.beta, 0.0},
      {*noq.optimizer.gamma, 0.0, 0.0, 0.0, 0.0}};
  BoxSearchOptions opts;
  opts.grid_points = 5;
  opts.restarts = 8;
  opts.initial_step = 0.1;
  opts.tol = 1e-6;
  opts.max_evals = 150000;
  const BoxResult res = pattern_search_max(
      [&](const std::vector<double>& x) { return nnc_random_objective(g, nnc_point(x)); }, box,
      opts, seeds);
  NncPoint p = nnc_point(res.x);
  // Report with Q = 0 labelling the state where the source sends less energy.
  const double q0 = p.probs[0] + p.probs[1], q1 = p.probs[2] + p.probs[3];
  if (p.ps * q1 > (1.0 - p.ps) * q0) {
    p.probs = {p.probs[2], p.probs[3], p.probs[0], p.probs[1]};
    p.ps = 1.0 - p.ps;
    p.pr = 1.0 - p.pr;
  }
  RateBound r = make_bound(BoundKind::NncRandom, res.value, p.probs[0] + p.probs[2], std::nullopt,
                           std::nullopt);
  r.optimizer.state_probs = p.probs;
  r.converged = res.converged;
  if (!res.converged) r.warning = "nnc_random: evaluation budget exhausted";
  return r;
}

GapConstants analytic_gap_constants() {
  GapConstants out;
  const auto s0 = grid_golden_max(
      [](double gm) { return binary_entropy(gm) - (1.0 - gm) * std::log2(1.0 - gm); }, 0.0,
      1.0 - 1e-12, 1001, 1e-12);
  out.lda_s0_gap = s0.value;
  out.lda_s0_gamma = s0.x;

  // sigma^2 = 2^t with t = (H + 1 - gamma) / gamma equalizes the two terms.
  auto nnc_term = [](double gm) {
    if (gm <= 0.0) return 1.0;
    const double t = (binary_entropy(gm) + 1.0 - gm) / gm;
    const double tail = log2p(std::exp2(-t));
    const double first = binary_entropy(gm) + (1.0 - gm) + gm * tail;
    const double second = gm * (t + tail);
    return std::max(first, second);
  };
  const auto nnc = grid_golden_max(nnc_term, 0.0, 1.0, 1001, 1e-12);
  out.nnc_gap = nnc.value;
  out.nnc_gamma = nnc.x;

  auto lda_term = [](double x, double y) {
    const double den = x * x + y * y + 2.0 * x * y + x + y;
    if (den <= 0.0) return 2.0;
    return 2.0 + (x * x + y * y + x * y + x) / den;
  };
  double sup = 0.0;
  const int n = 400;
  const double span = 20.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) sup = std::max(sup, lda_term(span * i / n, span * j / n));
  out.lda_gap_sup = sup;
  return out;
}

}  // namespace relaybounds
