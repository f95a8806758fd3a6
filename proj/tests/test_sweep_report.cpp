#include <atomic>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "relaybounds/report.hpp"
#include "relaybounds/single_relay.hpp"
#include "relaybounds/sweep.hpp"

using namespace relaybounds;

TEST_CASE("grid axes") {
  const auto v = GridAxis::parse("0:2.4:0.1").values();
  REQUIRE(v.size() == 25);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == doctest::Approx(2.4));
  CHECK(GridAxis::parse("3:200").values().size() == 198);
  CHECK(GridAxis::parse("20").values() == std::vector<double>{20.0});
  CHECK_THROWS_AS(GridAxis::parse("1:0:1"), std::invalid_argument);
  CHECK_THROWS_AS(GridAxis::parse("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(GridAxis::parse("a:b:c"), std::invalid_argument);
  CHECK_THROWS_AS(GridAxis::parse("5x"), std::invalid_argument);
}

TEST_CASE("schemes") {
  for (auto s : {Scheme::PdfDeterministic, Scheme::PdfRandom, Scheme::NncDeterministic, Scheme::Lda})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("cf"), std::invalid_argument);
}

TEST_CASE("worker pool") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  std::atomic<int> n{0};
  parallel_for(0, 4, [&](std::size_t) { ++n; });
  CHECK(n == 0);
}

TEST_CASE("gap sweep") {
  const std::vector<double> snr{10, 30};
  const auto betas = GridAxis::parse("0:2.4:0.4").values();
  const auto one = gap_sweep(snr, betas, Scheme::PdfDeterministic, 1.0, 1);
  const auto four = gap_sweep(snr, betas, Scheme::PdfDeterministic, 1.0, 4);
  REQUIRE(one.points.size() == 2 * 49);
  CHECK(sweep_points_csv({one}) == sweep_points_csv({four}));
  CHECK(sweep_rows_csv({one}) == sweep_rows_csv({four}));
  for (std::size_t k = 0; k < snr.size(); ++k) {
    double m = -1.0;
    for (std::size_t q = 0; q < 49; ++q) {
      const auto& p = one.points[k * 49 + q];
      CHECK(p.gap == doctest::Approx(p.upper - p.lower));
      CHECK(p.gap >= -1e-9);
      CHECK(p.gap <= 1.0 + 1e-6);
      m = std::max(m, p.gap);
    }
    CHECK(one.rows[k].max_gap == m);
  }
  const auto& p = one.points[49 + 2 * 7 + 3];
  const auto g = exponents_to_gains({1.0, p.beta_rd, p.beta_sr}, db_to_linear(30));
  CHECK(p.lower == pdf_lower(g, SwitchMode::Deterministic).value);
  CHECK(p.upper == cutset_upper(g).value);
  CHECK_THROWS_AS(gap_sweep({}, betas, Scheme::Lda), std::invalid_argument);
}

TEST_CASE("random switch gain map") {
  const auto betas = GridAxis::parse("0:2.4:0.2").values();
  const auto map = switch_gain_map(20, betas, 1.0, 4);
  REQUIRE(map.size() == betas.size() * betas.size());
  double weak = 0.0, strong = 0.0;
  for (const auto& p : map) {
    CHECK(p.delta >= -1e-9);
    CHECK(p.delta == doctest::Approx(p.pdf_random - p.pdf_deterministic));
    if (p.beta_sr <= 1.0 + 1e-12) CHECK(std::abs(p.delta) <= 1e-9);
    if (std::min(p.beta_rd, p.beta_sr) <= 1.0 + 1e-12)
      weak = std::max(weak, p.delta);
    else
      strong = std::max(strong, p.delta);
  }
  CHECK(weak <= 0.2);
  CHECK(strong > weak);
}

TEST_CASE("rate curves") {
  const auto g = ChannelGains::make(0, 3, 15);
  const auto c = rate_curve(g, {0.2, 0.35, 0.5}, 3);
  REQUIRE(c.size() == 3);
  for (const auto& p : c) {
    CHECK(p.pdf_deterministic <= p.pdf_random + 1e-9);
    CHECK(p.pdf_random <= p.cutset + 1e-9);
    CHECK(p.nnc_deterministic <= p.nnc_random + 1e-6);
    CHECK(p.lda <= p.cutset + 1e-9);
    CHECK(p.cutset == cutset_upper(g, p.gamma).value);
  }
  CHECK_THROWS_AS(rate_curve(g, {1.5}), std::invalid_argument);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(format_number(std::optional<double>{}) == "");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("gain parsing") {
  CHECK(parse_gain("30dB") == doctest::Approx(1000.0));
  CHECK(parse_gain("-10 dB") == doctest::Approx(0.1));
  CHECK(parse_gain("15") == 15.0);
  CHECK_THROWS_AS(parse_gain("dB"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gain("3x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gain(""), std::invalid_argument);
}

TEST_CASE("csv layouts") {
  CHECK(rates_csv_header() ==
        "kind,S_dB,I_dB,C_dB,value_bits,gamma,beta,alpha1,sigma2,g00,g01,g10,g11,warning\n");
  const auto g = ChannelGains::make(1000, 1000, 1000);
  RateBound b;
  b.kind = BoundKind::Lda;
  b.value = 2.5;
  b.optimizer.gamma = 0.5;
  CHECK(rates_csv_row(b, g) == "lda,30,30,30,2.5,0.5,,,,,,,,\n");
  b.optimizer.state_probs = std::array<double, 4>{0, 0.25, 0.5, 0.25};
  b.warning = "not converged";
  CHECK(rates_csv_row(b, g) == "lda,30,30,30,2.5,0.5,,,,0,0.25,0.5,0.25,not converged\n");
  const auto csv = gap_formula_csv({3});
  CHECK(csv.rfind("K,gap_bound,gap_asymptotic,diamond_gap,diamond_gap_conjecture\n3,4,", 0) == 0);
  const auto lda = lda_curve_csv(lda_achievable_variants({1, 2, 2}, 0.5));
  CHECK(lda.rfind("gamma,rate_iid_det,rate_iid_rand,rate_iidq_rand,q_opt,rate_optimal\n0,1,", 0) ==
        0);
}

TEST_CASE("network summaries") {
  const auto rows = two_relay_reference_rows();
  REQUIRE(rows.size() == 4);
  const auto& r = rows[0];
  const auto s = summarize_network("row1", NetworkExponents::two_relay(r[0], r[1], r[2], r[3], r[4], r[5]));
  CHECK(s.gdof_hd == doctest::Approx(1.4235).epsilon(1e-4));
  CHECK(network_csv({s}) ==
        "name,K,fd_best_relay,fd_all_relays,hd_best_relay,hd_all_relays,active_states\n"
        "row1,4,1.4,1.8,1.266666667,1.423529412,2\n");
}
