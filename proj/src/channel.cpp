// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace relaybounds {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

ChannelGains ChannelGains::make(double S, double I, double C) {
  ChannelGains g{S, I, C};
  g.validate();
  return g;
}

void ChannelGains::validate() const {
  if (!finite_nonneg(S)) throw std::invalid_argument("S must be finite and >= 0");
  if (!finite_nonneg(I) || I <= 0.0) throw std::invalid_argument("I must be finite and > 0");
  if (!finite_nonneg(C) || C <= 0.0) throw std::invalid_argument("C must be finite and > 0");
}

ExponentTriple ExponentTriple::make(double beta_sd, double beta_rd, double beta_sr) {
  ExponentTriple e{beta_sd, beta_rd, beta_sr};
  e.validate();
  return e;
}

void ExponentTriple::validate() const {
  if (!finite_nonneg(beta_sd) || !finite_nonneg(beta_rd) || !finite_nonneg(beta_sr))
    throw std::invalid_argument("exponents must be finite and >= 0");
}

NetworkExponents::NetworkExponents(int K, std::vector<std::vector<double>> alpha,
                                   int max_nodes)
    : K_(K), alpha_(static_cast<std::size_t>(K > 0 ? K * K : 0), 0.0) {
  if (K < 3) throw std::invalid_argument("network needs K >= 3 nodes");
  if (K > max_nodes)
    throw std::invalid_argument("K = " + std::to_string(K) + " exceeds the maximum of " +
                                std::to_string(max_nodes));
  if (alpha.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("alpha must have K rows");
  for (int i = 0; i < K; ++i) {
    if (alpha[i].size() != static_cast<std::size_t>(K))
      throw std::invalid_argument("alpha must have K columns");
    for (int j = 0; j < K; ++j) {
      const bool masked = i == 0 || j == K - 1 || i == j;
      if (masked) continue;
      if (!finite_nonneg(alpha[i][j]))
        throw std::invalid_argument("exponents must be finite and >= 0");
      alpha_[static_cast<std::size_t>(i * K + j)] = alpha[i][j];
    }
  }
}

NetworkExponents NetworkExponents::two_relay(double a_s1, double a_s2, double a_1d,
                                             double a_2d, double b1, double b2,
                                             double direct) {
  std::vector<std::vector<double>> a(4, std::vector<double>(4, 0.0));
  a[1][0] = a_s1;
  a[2][0] = a_s2;
  a[3][1] = a_1d;
  a[3][2] = a_2d;
  a[1][2] = b1;
  a[2][1] = b2;
  a[3][0] = direct;
  return NetworkExponents(4, std::move(a));
}

NetworkExponents NetworkExponents::single_relay(const ExponentTriple& e) {
  e.validate();
  std::vector<std::vector<double>> a(3, std::vector<double>(3, 0.0));
  a[1][0] = e.beta_sr;
  a[2][1] = e.beta_rd;
  a[2][0] = e.beta_sd;
  return NetworkExponents(3, std::move(a));
}

NetworkExponents NetworkExponents::from_json(const std::string& text, int max_nodes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid network JSON: ") + e.what());
  }
  if (!j.contains("K") || !j.contains("alpha"))
    throw std::invalid_argument("network JSON needs \"K\" and \"alpha\"");
  const int K = j.at("K").get<int>();
  std::vector<std::vector<double>> alpha;
  for (const auto& row : j.at("alpha")) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.is_null() ? 0.0 : v.get<double>());
    alpha.push_back(std::move(r));
  }
  return NetworkExponents(K, std::move(alpha), max_nodes);
}

NetworkExponents NetworkExponents::from_json_file(const std::string& path, int max_nodes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str(), max_nodes);
}

std::string NetworkExponents::to_json() const {
  nlohmann::json j;
  j["K"] = K_;
  auto rows = nlohmann::json::array();
  for (int i = 0; i < K_; ++i) {
    auto r = nlohmann::json::array();
    for (int k = 0; k < K_; ++k) r.push_back(alpha(i, k));
    rows.push_back(r);
  }
  j["alpha"] = rows;
  return j.dump();
}

double NetworkExponents::alpha(int rx, int tx) const {
  if (rx < 0 || tx < 0 || rx >= K_ || tx >= K_) throw std::out_of_range("node index");
  return alpha_[static_cast<std::size_t>(rx * K_ + tx)];
}

double NetworkExponents::max_exponent() const {
  double m = 0.0;
  for (double a : alpha_) m = std::max(m, a);
  return m;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::CutsetNumeric: return "cutset";
    case BoundKind::CutsetAnalytic: return "cutset_analytic";
    case BoundKind::PdfRandom: return "pdf_random";
    case BoundKind::PdfDeterministic: return "pdf_deterministic";
    case BoundKind::PdfAnalytic: return "pdf_analytic";
    case BoundKind::Lda: return "lda";
    case BoundKind::NncDeterministic: return "nnc_deterministic";
    case BoundKind::NncRandom: return "nnc_random";
    case BoundKind::NncNoQ: return "nnc_noq";
    case BoundKind::NncAnalytic: return "nnc_analytic";
    case BoundKind::FdCutset: return "fd_cutset";
  }
  return "unknown";
}

double db_to_linear(double db) {
  if (!std::isfinite(db)) throw std::invalid_argument("dB value must be finite");
  return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
  if (!(linear >= 0.0) || !std::isfinite(linear))
    throw std::invalid_argument("linear value must be finite and >= 0");
  return 10.0 * std::log10(linear);
}

ChannelGains exponents_to_gains(const ExponentTriple& e, double snr) {
  e.validate();
  if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("snr must be > 0");
  const double S = std::pow(snr, e.beta_sd);
  const double I = std::pow(snr, e.beta_rd);
  const double C = std::pow(snr, e.beta_sr);
  if (!std::isfinite(S) || !std::isfinite(I) || !std::isfinite(C))
    throw std::overflow_error("exponent * log(snr) overflows double range");
  ChannelGains g{S, I, C};
  if (I <= 0.0 || C <= 0.0) throw std::underflow_error("gain underflows to zero");
  return g;
}

}  // namespace relaybounds
