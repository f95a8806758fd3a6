// SPDX-License-Identifier: Apache-2.0
// Command-line front end for the relay bound library.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaybounds/channel.hpp"
#include "relaybounds/lda.hpp"
#include "relaybounds/multirelay.hpp"
#include "relaybounds/report.hpp"
#include "relaybounds/single_relay.hpp"
#include "relaybounds/sweep.hpp"

using namespace relaybounds;

namespace {

int default_jobs() {
  if (const char* env = std::getenv("RELAYBOUNDS_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j > 0) return j;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring RELAYBOUNDS_JOBS='" << env << "'\n";
  }
  return 1;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

std::vector<double> axis_values(const std::string& spec) { return GridAxis::parse(spec).values(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Common {
  std::string out;
  int jobs = default_jobs();
};

void add_common(CLI::App* cmd, Common& c, bool with_jobs) {
  cmd->add_option("-o,--out", c.out, "Output path (stdout when omitted)");
  if (with_jobs)
    cmd->add_option("-j,--jobs", c.jobs, "Worker threads (default RELAYBOUNDS_JOBS or 1)")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity bounds and gDoF for Gaussian half-duplex relay networks"};
  app.require_subcommand(1);
  Common common;
  int exit_code = 0;

  // gdof
  double bsd = 1.0, brd = 1.0, bsr = 1.0;
  auto* gdof = app.add_subcommand("gdof", "Half- and full-duplex gDoF of a single relay channel");
  gdof->add_option("--bsd", bsd, "Source-destination exponent")->required();
  gdof->add_option("--brd", brd, "Relay-destination exponent")->required();
  gdof->add_option("--bsr", bsr, "Source-relay exponent")->required();
  add_common(gdof, common, false);
  gdof->callback([&] {
    const ExponentTriple e = ExponentTriple::make(bsd, brd, bsr);
    std::ostringstream os;
    os << "beta_sd,beta_rd,beta_sr,hd,fd\n"
       << format_number(bsd) << ',' << format_number(brd) << ',' << format_number(bsr) << ','
       << format_number(gdof_hd(e).value) << ',' << format_number(gdof_fd(e).value) << '\n';
    emit(os.str(), common.out);
  });

  // rates
  std::string s_text, i_text, c_text, curve;
  std::string gamma_grid = "0:1:0.01";
  auto* rates = app.add_subcommand("rates", "All single-relay bounds at one gain triple");
  rates->add_option("--S", s_text, "Source-destination gain, linear or with dB suffix")->required();
  rates->add_option("--I", i_text, "Relay-destination gain, linear or with dB suffix")->required();
  rates->add_option("--C", c_text, "Source-relay gain, linear or with dB suffix")->required();
  rates->add_option("--curve", curve, "Emit rate curves instead, over 'gamma'")
      ->check(CLI::IsMember({"gamma"}));
  rates->add_option("--gamma", gamma_grid, "Listen-fraction grid for --curve");
  add_common(rates, common, true);
  rates->callback([&] {
    const ChannelGains g =
        ChannelGains::make(parse_gain(s_text), parse_gain(i_text), parse_gain(c_text));
    if (!curve.empty()) {
      const auto pts = rate_curve(g, axis_values(gamma_grid), common.jobs);
      for (const auto& p : pts)
        if (!p.converged) exit_code = 2;
      emit(rate_curve_csv(pts), common.out);
      return;
    }
    using Fn = std::function<RateBound()>;
    std::vector<Fn> fns = {
        [&] { return cutset_upper(g); },
        [&] { return cutset_upper_analytic(g); },
        [&] { return pdf_lower(g, SwitchMode::Random); },
        [&] { return pdf_lower(g, SwitchMode::Deterministic); },
        [&] { return pdf_lower_analytic(g); },
        [&] { return nnc_lower_random(g); },
        [&] { return nnc_lower_det(g); },
        [&] { return nnc_lower_noQ(g); },
        [&] { return nnc_lower_analytic(g); },
        [&] { return lda_rate(g); },
    };
    if (g.S == 0.0) fns.push_back([&] { return fd_cutset_s0(g); });
    std::vector<RateBound> out(fns.size());
    parallel_for(fns.size(), common.jobs, [&](std::size_t i) { out[i] = fns[i](); });
    std::string text = rates_csv_header();
    for (const auto& b : out) {
      text += rates_csv_row(b, g);
      if (!b.converged) exit_code = 2;
    }
    emit(text, common.out);
  });

  // gap-sweep
  std::string schemes = "pdf-det", snr_grid = "0:60:5", beta_grid = "0:2.4:0.1";
  double sweep_bsd = 1.0;
  bool dense = false;
  double delta_snr = NAN;
  auto* sweep = app.add_subcommand("gap-sweep", "Maximum cut-set gap over an exponent grid per SNR");
  sweep->add_option("--scheme", schemes, "Comma list of pdf-det, pdf-rand, nnc-det, lda");
  sweep->add_option("--snr", snr_grid, "SNR grid in dB, start:stop:step");
  sweep->add_option("--beta", beta_grid, "Grid for both relay exponents");
  sweep->add_option("--bsd", sweep_bsd, "Source-destination exponent");
  sweep->add_flag("--points", dense, "Emit every grid point instead of per-SNR maxima");
  sweep->add_option("--delta-map", delta_snr,
                    "Emit the random-minus-deterministic PDF map at this SNR (dB)");
  add_common(sweep, common, true);
  sweep->callback([&] {
    const auto betas = axis_values(beta_grid);
    if (!std::isnan(delta_snr)) {
      emit(delta_map_csv(delta_snr, switch_gain_map(delta_snr, betas, sweep_bsd, common.jobs)),
           common.out);
      return;
    }
    const auto snrs = axis_values(snr_grid);
    std::vector<SweepGrid> grids;
    for (const auto& name : split(schemes, ','))
      grids.push_back(gap_sweep(snrs, betas, parse_scheme(name), sweep_bsd, common.jobs));
    emit(dense ? sweep_points_csv(grids) : sweep_rows_csv(grids), common.out);
  });

  // lda
  int lsd = 0, lrd = 1, lsr = 1;
  double lda_step = 0.01;
  bool capacity_only = false;
  auto* lda = app.add_subcommand("lda", "Linear deterministic channel: capacity and strategy curves");
  auto add_widths = [](CLI::App* cmd, int& sd, int& rd, int& sr) {
    cmd->add_option("--bsd", sd, "Source-destination width")->check(CLI::NonNegativeNumber);
    cmd->add_option("--brd", rd, "Relay-destination width")->check(CLI::NonNegativeNumber);
    cmd->add_option("--bsr", sr, "Source-relay width")->check(CLI::NonNegativeNumber);
  };
  add_widths(lda, lsd, lrd, lsr);
  lda->add_option("--step", lda_step, "Listen-fraction step")->check(CLI::PositiveNumber);
  lda->add_flag("--capacity", capacity_only, "Emit capacities and the optimal schedule only");
  add_common(lda, common, false);
  lda->callback([&] {
    const LdaChannel ch{lsd, lrd, lsr};
    ch.validate();
    if (capacity_only) {
      const LdaSchedule s = lda_optimal_schedule(ch);
      std::ostringstream os;
      os << "beta_sd,beta_rd,beta_sr,capacity_hd,capacity_fd,gamma_opt,p0_opt\n"
         << lsd << ',' << lrd << ',' << lsr << ',' << format_number(lda_capacity_hd(ch)) << ','
         << format_number(lda_capacity_fd(ch)) << ',' << format_number(s.gamma) << ','
         << format_number(s.p0) << '\n';
      emit(os.str(), common.out);
      return;
    }
    emit(lda_curve_csv(lda_achievable_variants(ch, lda_step)), common.out);
  });

  // lda-sim
  std::size_t slots = 10000;
  std::uint64_t seed = 1;
  int runs = 1;
  auto* sim = app.add_subcommand("lda-sim", "Bit-exact run of the two-phase relaying scheme");
  int ssd = 1, srd = 2, ssr = 2;
  add_widths(sim, ssd, srd, ssr);
  sim->add_option("--slots", slots, "Channel uses per run")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Seed of the first run");
  sim->add_option("--runs", runs, "Runs with consecutive seeds")->check(CLI::PositiveNumber);
  add_common(sim, common, false);
  sim->callback([&] {
    const LdaChannel ch{ssd, srd, ssr};
    std::ostringstream os;
    os << "seed,slots,listen_slots,transmit_slots,decoded_ok,achieved_rate,target_rate,rate_loss\n";
    for (int r = 0; r < runs; ++r) {
      const auto rep = simulate_lda_scheme(ch, slots, seed + static_cast<std::uint64_t>(r));
      if (!rep.decoded_ok) exit_code = 2;
      os << seed + static_cast<std::uint64_t>(r) << ',' << rep.slots << ',' << rep.listen_slots
         << ',' << rep.transmit_slots << ',' << (rep.decoded_ok ? 1 : 0) << ','
         << format_number(rep.achieved_rate) << ',' << format_number(rep.target_rate) << ','
         << format_number(rep.rate_loss) << '\n';
    }
    emit(os.str(), common.out);
  });

  // multirelay
  std::vector<std::string> files;
  std::string format = "json";
  bool table = false, check_slope = false;
  auto* multi = app.add_subcommand("multirelay", "Half-duplex gDoF of a K-node network");
  multi->add_option("--file", files, "Network descriptor JSON (repeatable)");
  multi->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  multi->add_flag("--table1", table, "Summarize the built-in two-relay reference rows as CSV");
  multi->add_flag("--check-slope", check_slope,
                  "Warn where a cut exponent differs from the numeric log-det slope");
  add_common(multi, common, false);
  multi->callback([&] {
    std::vector<std::pair<std::string, NetworkExponents>> nets;
    if (table) {
      int row = 1;
      for (const auto& r : two_relay_reference_rows())
        nets.emplace_back("row" + std::to_string(row++),
                          NetworkExponents::two_relay(r[0], r[1], r[2], r[3], r[4], r[5]));
      format = "csv";
    }
    for (const auto& f : files) nets.emplace_back(f, NetworkExponents::from_json_file(f));
    if (nets.empty()) throw CLI::ValidationError("multirelay", "give --file or --table1");
    if (check_slope) {
      for (const auto& [name, net] : nets) {
        const RelayMask n = RelayMask{1} << net.relays();
        for (RelayMask cut = 0; cut < n; ++cut)
          for (RelayMask st = 0; st < n; ++st) {
            const double d = cut_exponent(net, cut, st);
            const double slope = cut_slope_numeric(net, cut, st, 1e10, 1e12, 1);
            if (std::abs(d - slope) > 0.05)
              std::cerr << "warning: " << name << " cut " << mask_bits(cut, net.relays())
                        << " state " << mask_bits(st, net.relays()) << " matching "
                        << format_number(d) << " slope " << format_number(slope) << '\n';
          }
      }
    }
    if (format == "json") {
      if (nets.size() != 1) throw CLI::ValidationError("multirelay", "json output takes one file");
      emit(to_json(gdof_lp(nets.front().second)) + "\n", common.out);
      return;
    }
    std::vector<NetworkSummary> rows;
    for (const auto& [name, net] : nets) rows.push_back(summarize_network(name, net));
    emit(network_csv(rows), common.out);
  });

  // gap-formula
  std::string k_grid = "3:200";
  auto* formula = app.add_subcommand("gap-formula", "Constant-gap formulas versus node count");
  formula->add_option("--k", k_grid, "Node-count range, start:stop[:step]");
  add_common(formula, common, false);
  formula->callback([&] {
    std::vector<int> ks;
    for (double k : axis_values(k_grid)) {
      if (k < 3 || k != std::floor(k)) throw std::invalid_argument("K values must be integers >= 3");
      ks.push_back(static_cast<int>(k));
    }
    emit(gap_formula_csv(ks), common.out);
  });

  // gap-constants
  auto* constants = app.add_subcommand("gap-constants", "Numerically maximized gap constants");
  add_common(constants, common, false);
  constants->callback([&] {
    const GapConstants c = analytic_gap_constants();
    std::ostringstream os;
    os << "name,value_bits,gamma\n"
       << "lda_s0_gap," << format_number(c.lda_s0_gap) << ',' << format_number(c.lda_s0_gamma) << '\n'
       << "nnc_gap," << format_number(c.nnc_gap) << ',' << format_number(c.nnc_gamma) << '\n'
       << "lda_gap_sup," << format_number(c.lda_gap_sup) << ",\n";
    emit(os.str(), common.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
