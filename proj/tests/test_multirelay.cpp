#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "relaybounds/multirelay.hpp"
#include "relaybounds/single_relay.hpp"

using namespace relaybounds;

namespace {

struct TwoRelay {
  double as1, as2, a1d, a2d, b1, b2;
};

const TwoRelay kRows[4] = {{2.5, 1.4, 0.5, 1.8, 0.6, 0.8},
                           {2.5, 0.3, 0.7, 1.3, 0.4, 0.8},
                           {1.8, 1.2, 1.3, 2.0, 0.7, 1.2},
                           {1.7, 1.1, 1.2, 1.4, 0.4, 1.5}};
const double kHdBoth[4] = {1.4235, 1.2182, 1.5808, 1.3604};
const double kHdBest[4] = {1.267, 1.000, 1.218, 1.156};
const double kFdBoth[4] = {1.8, 1.3, 1.8, 1.4};
const double kFdBest[4] = {1.4, 1.0, 1.3, 1.2};

NetworkExponents make(const TwoRelay& t) {
  return NetworkExponents::two_relay(t.as1, t.as2, t.a1d, t.a2d, t.b1, t.b2);
}

// Hand-written two-relay cut table. Rows: cut with no relay, relay 1,
// relay 2, both relays on the source side. Columns: (S2, S3) = 00, 01, 10, 11.
double d_table(const TwoRelay& t, int cut, int state) {
  const double D[4][4] = {
      {std::max({1.0, t.as1, t.as2}), std::max(1.0, t.as1), std::max(1.0, t.as2), 1.0},
      {std::max(1.0, t.as2), 1.0, std::max(t.as2 + t.a1d, t.b2 + 1), std::max(1.0, t.a1d)},
      {std::max(1.0, t.as1), std::max(t.as1 + t.a2d, t.b1 + 1), 1.0, std::max(1.0, t.a2d)},
      {1.0, std::max(1.0, t.a2d), std::max(1.0, t.a1d), std::max({1.0, t.a1d, t.a2d})}};
  return D[cut][state];
}

const RelayMask kCutMask[4] = {0b00, 0b10, 0b01, 0b11};

double fd_two_relay(const TwoRelay& t) {
  return std::min({std::max({1.0, t.as1, t.as2}), std::max(t.as2 + t.a1d, t.b2 + 1),
                   std::max(t.as1 + t.a2d, t.b1 + 1), std::max({1.0, t.a1d, t.a2d})});
}

double matching_by_permutation(const std::vector<std::vector<double>>& w) {
  const std::size_t r = w.size(), c = w.empty() ? 0 : w[0].size();
  if (r == 0 || c == 0) return 0.0;
  // pad to a square matrix with zero weights
  const std::size_t n = std::max(r, c);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < r; ++i)
      if (std::size_t(perm[i]) < c) s += w[i][perm[i]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

NetworkExponents random_net(int K, std::mt19937_64& rng, double hi = 2.5) {
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<std::vector<double>> a(K, std::vector<double>(K, 0.0));
  for (int i = 1; i < K; ++i)
    for (int j = 0; j < K - 1; ++j)
      if (i != j) a[i][j] = u(rng);
  return NetworkExponents(K, a);
}

NetworkExponents random_diamond(int K, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.5);
  std::vector<std::vector<double>> a(K, std::vector<double>(K, 0.0));
  for (int r = 1; r < K - 1; ++r) {
    a[r][0] = u(rng);
    a[K - 1][r] = u(rng);
  }
  return NetworkExponents(K, a);
}

}  // namespace

TEST_CASE("relay masks") {
  CHECK(relay_selected(0b100, 0, 3));
  CHECK_FALSE(relay_selected(0b100, 2, 3));
  CHECK(mask_bits(0b100, 3) == "100");
  CHECK(mask_bits(0, 2) == "00");
  CHECK(mask_nodes(0b101, 3) == std::vector<int>{2, 4});
}

TEST_CASE("matching") {
  CHECK(max_weight_matching({}) == 0.0);
  CHECK(max_weight_matching({{2.5}}) == 2.5);
  CHECK(max_weight_matching({{1, 5}, {4, 1}}) == 9.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 3);
  for (auto [r, c] : {std::pair{3, 5}, {5, 3}, {6, 6}, {7, 7}, {8, 5}, {5, 8}, {8, 8}}) {
    for (int t = 0; t < 5; ++t) {
      std::vector<std::vector<double>> w(r, std::vector<double>(c));
      for (auto& row : w)
        for (auto& x : row) x = u(rng);
      CHECK(max_weight_matching(w) == doctest::Approx(matching_by_permutation(w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cut exponents against the two-relay table") {
  for (const auto& t : kRows) {
    const auto net = make(t);
    for (int c = 0; c < 4; ++c)
      for (int s = 0; s < 4; ++s)
        CHECK(cut_exponent(net, kCutMask[c], RelayMask(s)) == doctest::Approx(d_table(t, c, s)));
  }
  const auto row3 = make(kRows[2]);
  CHECK(cut_exponent(row3, 0b10, 0b10) == doctest::Approx(2.5));
  CHECK(std::abs(cut_slope_numeric(row3, 0b10, 0b10, 1e10, 1e12, 1) - 2.5) <= 0.05);
  const auto table = cut_table(row3);
  REQUIRE(table.size() == 4);
  CHECK(table[0b10][0b10] == doctest::Approx(2.5));
}

TEST_CASE("cut exponent degenerate cases") {
  std::vector<std::vector<double>> a(3, std::vector<double>(3, 0.0));
  a[2][0] = 1.7;
  const NetworkExponents only_direct(3, a);
  for (RelayMask c = 0; c < 2; ++c)
    for (RelayMask s = 0; s < 2; ++s) CHECK(cut_exponent(only_direct, c, s) == 1.7);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto net = random_net(5, rng);
    const int R = net.relays();
    for (RelayMask cut = 0; cut < (1u << R); ++cut) {
      // relays in the cut are silent, so only the source transmits
      double expect = net.alpha(net.destination(), 0);
      for (int r = 0; r < R; ++r)
        if (!relay_selected(cut, r, R)) expect = std::max(expect, net.alpha(r + 1, 0));
      CHECK(cut_exponent(net, cut, 0) == doctest::Approx(expect));
    }
  }
}

TEST_CASE("matching agrees with log-det slopes") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int k = 0; k < 10; ++k) {
    const auto net = random_net(4, rng);
    for (RelayMask c = 0; c < 4; ++c)
      for (RelayMask s = 0; s < 4; ++s) {
        CHECK(std::abs(cut_exponent(net, c, s) - cut_slope_numeric(net, c, s, 1e10, 1e12, k)) <=
              0.05);
        ++checked;
      }
  }
  CHECK(checked == 160);
}

TEST_CASE("half-duplex LP") {
  SUBCASE("two-relay reference rows") {
    for (int i = 0; i < 4; ++i) {
      const auto net = make(kRows[i]);
      const auto sol = gdof_lp(net);
      CHECK(std::abs(sol.gdof - kHdBoth[i]) <= 1e-3);
      CHECK(std::abs(best_relay_gdof(net, DuplexMode::HalfDuplex) - kHdBest[i]) <= 1e-3);
      CHECK(std::abs(gdof_fd_network(net) - kFdBoth[i]) <= 1e-3);
      CHECK(gdof_fd_network(net) == doctest::Approx(fd_two_relay(kRows[i])));
      CHECK(std::abs(best_relay_gdof(net, DuplexMode::FullDuplex) - kFdBest[i]) <= 1e-3);
      CHECK(sol.gdof > best_relay_gdof(net, DuplexMode::HalfDuplex));
      CHECK(gdof_fd_network(net) > sol.gdof);
      CHECK(best_relay_gdof(net, DuplexMode::FullDuplex) < gdof_fd_network(net));
    }
  }
  SUBCASE("single relay reduces to the closed form") {
    CHECK(gdof_lp(NetworkExponents::single_relay({1, 1.8, 1.4})).gdof ==
          doctest::Approx(1.2667).epsilon(1e-4));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 3);
    for (int k = 0; k < 100; ++k) {
      const ExponentTriple e{u(rng), u(rng), u(rng)};
      const auto net = NetworkExponents::single_relay(e);
      CHECK(std::abs(gdof_lp(net).gdof - gdof_hd(e).value) <= 1e-9);
      CHECK(gdof_fd_network(net) == doctest::Approx(gdof_fd(e).value));
    }
  }
  SUBCASE("certificate and ordering on random networks") {
    std::mt19937_64 rng(77);
    for (int K : {4, 5, 6}) {
      for (int k = 0; k < 15; ++k) {
        const auto net = random_net(K, rng);
        const auto sol = gdof_lp(net);
        const auto D = cut_table(net);
        double sum = 0.0;
        for (double l : sol.schedule.lambda) {
          CHECK(l >= 0.0);
          sum += l;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        int tight = 0;
        for (std::size_t c = 0; c < D.size(); ++c) {
          double v = 0.0;
          for (std::size_t s = 0; s < D.size(); ++s) v += sol.schedule.lambda[s] * D[c][s];
          CHECK(v >= sol.gdof - 1e-9);
          if (v <= sol.gdof + 1e-9) ++tight;
        }
        CHECK(tight >= 1);
        CHECK(tight == int(sol.tight_cuts.size()));
        CHECK(sol.gdof >= net.alpha(net.destination(), 0) - 1e-12);
        CHECK(sol.gdof <= net.max_exponent() + 1e-12);
        CHECK(best_relay_gdof(net, DuplexMode::HalfDuplex) <= sol.gdof + 1e-9);
        CHECK(sol.gdof <= gdof_fd_network(net) + 1e-9);
      }
    }
  }
  SUBCASE("largest supported network") {
    std::mt19937_64 rng(5);
    const auto sol = gdof_lp(random_net(12, rng));
    CHECK(sol.gdof > 0.0);
    CHECK(sol.schedule.lambda.size() == 1024);
  }
}

TEST_CASE("LP json") {
  const auto sol = gdof_lp(make(kRows[0]));
  const auto j = nlohmann::json::parse(to_json(sol));
  CHECK(j["gdof"].get<double>() == doctest::Approx(1.4235).epsilon(1e-4));
  CHECK(j["lambda"].size() == 4);
  CHECK(j["lambda"].contains("10"));
  CHECK(j["active_states"].get<int>() == sol.active_states);
  CHECK(j["tight_cuts"].size() == sol.tight_cuts.size());
}

TEST_CASE("best relay floor") {
  const auto net = NetworkExponents::two_relay(0.5, 0.4, 0.3, 0.2, 0.1, 0.1, 1.0);
  CHECK(best_relay_gdof(net, DuplexMode::HalfDuplex) == 1.0);
  CHECK(best_relay_gdof(net, DuplexMode::FullDuplex) == 1.0);
}

TEST_CASE("gap formulas") {
  CHECK(gap_bound(3) == 4.0);
  // l = 0, 1, 2 give 1, 2 + 4 and log2(3) + 5
  CHECK(std::abs(gap_bound(4) - std::max({1.0, 6.0, std::log2(3.0) + 5.0})) <= 1e-3);
  CHECK(gap_bound(4) == doctest::Approx(6.585).epsilon(1e-4));
  CHECK(std::abs(gap_bound(200) / gap_asymptotic(200) - 1.0) <= 0.1);
  CHECK(gap_asymptotic(4) == doctest::Approx(2.0 * std::log2(16.0)));
  const double c = 2.0 * std::log2(std::exp(1.0) / 2.0);
  CHECK(diamond_gap(10, false) == doctest::Approx(8 + 4 * std::log2(10.0) + c));
  CHECK(diamond_gap(10, true) == doctest::Approx(5 * std::log2(10.0) + c));
  CHECK_THROWS(gap_bound(2));
}

TEST_CASE("diamond sparsity") {
  std::mt19937_64 rng(100);
  for (int k = 0; k < 20; ++k) CHECK(diamond_state_sparsity(random_diamond(3, rng)) <= 2);
  for (int k = 0; k < 100; ++k) CHECK(diamond_state_sparsity(random_diamond(4, rng)) <= 3);
  for (int K = 5; K <= 9; ++K)
    for (int k = 0; k < 5; ++k) CHECK(diamond_state_sparsity(random_diamond(K, rng)) <= K - 1);
  std::vector<std::vector<double>> a(4, std::vector<double>(4, 0.0));
  a[1][0] = 2.0;
  a[3][1] = 1.5;
  CHECK(diamond_state_sparsity(NetworkExponents(4, a)) <= 2);
  CHECK_THROWS_AS(diamond_state_sparsity(make(kRows[0])), std::domain_error);
}
