// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace relaybounds {

/// Linear power gains of the single-relay channel.
struct ChannelGains {
  double S = 0.0;  ///< source -> destination
  double I = 1.0;  ///< relay -> destination
  double C = 1.0;  ///< source -> relay

  /// Throws std::invalid_argument unless S >= 0, I > 0, C > 0, all finite.
  static ChannelGains make(double S, double I, double C);
  void validate() const;
};

struct ExponentTriple {
  double beta_sd = 0.0;
  double beta_rd = 0.0;
  double beta_sr = 0.0;

  static ExponentTriple make(double beta_sd, double beta_rd, double beta_sr);
  void validate() const;
};

inline constexpr int kDefaultMaxNodes = 12;

/// Exponent matrix of a K-node network. Node 0 is the source, node K-1 the
/// destination. alpha(i, j) is the exponent of the link from j into i.
class NetworkExponents {
 public:
  NetworkExponents(int K, std::vector<std::vector<double>> alpha,
                   int max_nodes = kDefaultMaxNodes);

  /// Four-node network in the parameterization used for two-relay examples;
  /// the direct link has exponent `direct`.
  static NetworkExponents two_relay(double a_s1, double a_s2, double a_1d,
                                    double a_2d, double b1, double b2,
                                    double direct = 1.0);
  /// Three-node network carrying a single-relay triple.
  static NetworkExponents single_relay(const ExponentTriple& e);

  static NetworkExponents from_json(const std::string& text,
                                    int max_nodes = kDefaultMaxNodes);
  static NetworkExponents from_json_file(const std::string& path,
                                         int max_nodes = kDefaultMaxNodes);
  std::string to_json() const;

  int K() const { return K_; }
  int relays() const { return K_ - 2; }
  int source() const { return 0; }
  int destination() const { return K_ - 1; }

  /// Returns 0 for masked entries (source row, destination column, diagonal).
  double alpha(int rx, int tx) const;
  double max_exponent() const;

 private:
  int K_;
  std::vector<double> alpha_;
};

enum class BoundKind {
  CutsetNumeric,
  CutsetAnalytic,
  PdfRandom,
  PdfDeterministic,
  PdfAnalytic,
  Lda,
  NncDeterministic,
  NncRandom,
  NncNoQ,
  NncAnalytic,
  FdCutset
};

std::string to_string(BoundKind kind);

struct OptimizerPoint {
  std::optional<double> gamma;
  std::optional<double> beta;
  std::optional<double> alpha1;
  std::optional<double> sigma2;
  std::optional<std::array<double, 4>> state_probs;  ///< g00, g01, g10, g11
};

struct RateBound {
  double value = 0.0;
  BoundKind kind = BoundKind::CutsetNumeric;
  OptimizerPoint optimizer;
  bool converged = true;
  std::string warning;
};

struct GdofValue {
  double value = 0.0;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// S = snr^beta_sd, I = snr^beta_rd, C = snr^beta_sr.
ChannelGains exponents_to_gains(const ExponentTriple& e, double snr);

}  // namespace relaybounds
