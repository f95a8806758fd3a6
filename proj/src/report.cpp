// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/report.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "relaybounds/single_relay.hpp"

namespace relaybounds {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

std::string format_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

double parse_gain(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  bool db = false;
  if (t.size() > 2) {
    const std::string tail = t.substr(t.size() - 2);
    if ((tail[0] == 'd' || tail[0] == 'D') && (tail[1] == 'b' || tail[1] == 'B')) {
      db = true;
      t.resize(t.size() - 2);
    }
  }
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
    throw std::invalid_argument("cannot parse gain '" + text + "'");
  return db ? db_to_linear(v) : v;
}

namespace {

std::string db_field(double linear) {
  return linear > 0.0 ? format_number(linear_to_db(linear)) : std::string("-inf");
}

}  // namespace

std::string rates_csv_header() {
  return "kind,S_dB,I_dB,C_dB,value_bits,gamma,beta,alpha1,sigma2,g00,g01,g10,g11,warning\n";
}

std::string rates_csv_row(const RateBound& b, const ChannelGains& g) {
  std::ostringstream os;
  const auto& o = b.optimizer;
  os << to_string(b.kind) << ',' << db_field(g.S) << ',' << db_field(g.I) << ','
     << db_field(g.C) << ',' << format_number(b.value) << ',' << format_number(o.gamma) << ','
     << format_number(o.beta) << ',' << format_number(o.alpha1) << ','
     << format_number(o.sigma2);
  for (int i = 0; i < 4; ++i)
    os << ',' << (o.state_probs ? format_number((*o.state_probs)[i]) : std::string());
  os << ',' << b.warning << '\n';
  return os.str();
}

std::string rate_curve_csv(const std::vector<RateCurvePoint>& curve) {
  std::ostringstream os;
  os << "gamma,cutset,pdf_random,pdf_deterministic,nnc_random,nnc_deterministic,lda\n";
  for (const auto& p : curve)
    os << format_number(p.gamma) << ',' << format_number(p.cutset) << ','
       << format_number(p.pdf_random) << ',' << format_number(p.pdf_deterministic) << ','
       << format_number(p.nnc_random) << ',' << format_number(p.nnc_deterministic) << ','
       << format_number(p.lda) << '\n';
  return os.str();
}

std::string sweep_rows_csv(const std::vector<SweepGrid>& grids) {
  std::ostringstream os;
  os << "scheme,beta_sd,snr_db,beta_rd_at_max,beta_sr_at_max,max_gap\n";
  for (const auto& g : grids)
    for (const auto& r : g.rows)
      os << to_string(g.scheme) << ',' << format_number(g.beta_sd) << ','
         << format_number(r.snr_db) << ',' << format_number(r.beta_rd_at_max) << ','
         << format_number(r.beta_sr_at_max) << ',' << format_number(r.max_gap) << '\n';
  return os.str();
}

std::string sweep_points_csv(const std::vector<SweepGrid>& grids) {
  std::ostringstream os;
  os << "scheme,beta_sd,snr_db,beta_rd,beta_sr,upper,lower,gap\n";
  for (const auto& g : grids)
    for (const auto& p : g.points)
      os << to_string(g.scheme) << ',' << format_number(g.beta_sd) << ','
         << format_number(p.snr_db) << ',' << format_number(p.beta_rd) << ','
         << format_number(p.beta_sr) << ',' << format_number(p.upper) << ','
         << format_number(p.lower) << ',' << format_number(p.gap) << '\n';
  return os.str();
}

std::string delta_map_csv(double snr_db, const std::vector<DeltaPoint>& map) {
  std::ostringstream os;
  os << "snr_db,beta_rd,beta_sr,pdf_random,pdf_deterministic,delta\n";
  for (const auto& p : map)
    os << format_number(snr_db) << ',' << format_number(p.beta_rd) << ','
       << format_number(p.beta_sr) << ',' << format_number(p.pdf_random) << ','
       << format_number(p.pdf_deterministic) << ',' << format_number(p.delta) << '\n';
  return os.str();
}

std::string lda_curve_csv(const std::vector<LdaCurvePoint>& curve) {
  std::ostringstream os;
  os << "gamma,rate_iid_det,rate_iid_rand,rate_iidq_rand,q_opt,rate_optimal\n";
  for (const auto& p : curve)
    os << format_number(p.gamma) << ',' << format_number(p.rate_iid_det) << ','
       << format_number(p.rate_iid_rand) << ',' << format_number(p.rate_iidq_rand) << ','
       << format_number(p.q_opt) << ',' << format_number(p.rate_optimal) << '\n';
  return os.str();
}

std::string gap_formula_csv(const std::vector<int>& ks) {
  std::ostringstream os;
  os << "K,gap_bound,gap_asymptotic,diamond_gap,diamond_gap_conjecture\n";
  for (int k : ks)
    os << k << ',' << format_number(gap_bound(k)) << ',' << format_number(gap_asymptotic(k))
       << ',' << format_number(diamond_gap(k, false)) << ','
       << format_number(diamond_gap(k, true)) << '\n';
  return os.str();
}

NetworkSummary summarize_network(const std::string& name, const NetworkExponents& net) {
  NetworkSummary s;
  s.name = name;
  s.K = net.K();
  const LpSolution lp = gdof_lp(net);
  s.gdof_hd = lp.gdof;
  s.active_states = lp.active_states;
  s.gdof_fd = gdof_fd_network(net);
  s.best_relay_hd = best_relay_gdof(net, DuplexMode::HalfDuplex);
  s.best_relay_fd = best_relay_gdof(net, DuplexMode::FullDuplex);
  return s;
}

std::string network_csv(const std::vector<NetworkSummary>& rows) {
  std::ostringstream os;
  os << "name,K,fd_best_relay,fd_all_relays,hd_best_relay,hd_all_relays,active_states\n";
  for (const auto& r : rows)
    os << r.name << ',' << r.K << ',' << format_number(r.best_relay_fd) << ','
       << format_number(r.gdof_fd) << ',' << format_number(r.best_relay_hd) << ','
       << format_number(r.gdof_hd) << ',' << r.active_states << '\n';
  return os.str();
}

std::vector<std::array<double, 6>> two_relay_reference_rows() {
  return {{2.5, 1.4, 0.5, 1.8, 0.6, 0.8},
          {2.5, 0.3, 0.7, 1.3, 0.4, 0.8},
          {1.8, 1.2, 1.3, 2.0, 0.7, 1.2},
          {1.7, 1.1, 1.2, 1.4, 0.4, 1.5}};
}

}  // namespace relaybounds
