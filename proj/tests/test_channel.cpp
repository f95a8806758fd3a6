#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "relaybounds/channel.hpp"

using namespace relaybounds;

TEST_CASE("gains validation") {
  CHECK_NOTHROW(ChannelGains::make(0.0, 1.0, 1.0));
  CHECK_THROWS_AS(ChannelGains::make(-1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelGains::make(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelGains::make(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelGains::make(NAN, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelGains::make(1.0, INFINITY, 1.0), std::invalid_argument);
}

TEST_CASE("exponent validation") {
  CHECK_NOTHROW(ExponentTriple::make(0.0, 0.0, 0.0));
  CHECK_THROWS_AS(ExponentTriple::make(-0.1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExponentTriple::make(1.0, NAN, 1.0), std::invalid_argument);
}

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(30.0) == doctest::Approx(1000.0).epsilon(1e-14));
  CHECK(db_to_linear(37.63) == doctest::Approx(std::pow(10.0, 3.763)).epsilon(1e-14));
  CHECK(db_to_linear(37.63) == doctest::Approx(5794.3).epsilon(1e-4));
  for (double x = -100.0; x <= 200.0; x += 0.37)
    CHECK(std::abs(linear_to_db(db_to_linear(x)) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
  CHECK(std::isinf(linear_to_db(0.0)));
  CHECK_THROWS_AS(linear_to_db(-1.0), std::invalid_argument);
}

TEST_CASE("exponents to gains") {
  auto g = exponents_to_gains({1, 1, 1}, 100.0);
  CHECK(g.S == doctest::Approx(100.0));
  CHECK(g.I == doctest::Approx(100.0));
  CHECK(g.C == doctest::Approx(100.0));
  g = exponents_to_gains({1, 2, 2}, 10.0);
  CHECK(g.S == doctest::Approx(10.0));
  CHECK(g.I == doctest::Approx(100.0));
  CHECK(g.C == doctest::Approx(100.0));
  g = exponents_to_gains({1, 1.8, 1.4}, 1e6);
  CHECK(std::log10(g.S) == doctest::Approx(6.0));
  CHECK(std::log10(g.I) == doctest::Approx(10.8));
  CHECK(std::log10(g.C) == doctest::Approx(8.4));
  CHECK_THROWS_AS(exponents_to_gains({1, 1, 1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(exponents_to_gains({400, 1, 1}, 1e10), std::overflow_error);
}

TEST_CASE("gains grow with snr") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 2.4);
  for (int k = 0; k < 50; ++k) {
    const ExponentTriple e{u(rng), u(rng), u(rng)};
    double prev = 0.0;
    for (double snr = 1.5; snr < 1e9; snr *= 3.0) {
      const auto g = exponents_to_gains(e, snr);
      CHECK(g.S > prev);
      prev = g.S;
    }
  }
}

TEST_CASE("network descriptor") {
  const auto net = NetworkExponents::two_relay(2.5, 1.4, 0.5, 1.8, 0.6, 0.8);
  CHECK(net.K() == 4);
  CHECK(net.relays() == 2);
  CHECK(net.alpha(1, 0) == 2.5);
  CHECK(net.alpha(2, 0) == 1.4);
  CHECK(net.alpha(3, 1) == 0.5);
  CHECK(net.alpha(3, 2) == 1.8);
  CHECK(net.alpha(1, 2) == 0.6);
  CHECK(net.alpha(2, 1) == 0.8);
  CHECK(net.alpha(3, 0) == 1.0);
  CHECK(net.max_exponent() == 2.5);

  SUBCASE("masked entries read as zero") {
    std::vector<std::vector<double>> a(3, std::vector<double>(3, 9.0));
    const NetworkExponents n3(3, a);
    CHECK(n3.alpha(0, 1) == 0.0);
    CHECK(n3.alpha(1, 2) == 0.0);
    CHECK(n3.alpha(1, 1) == 0.0);
    CHECK(n3.alpha(1, 0) == 9.0);
    CHECK(n3.max_exponent() == 9.0);
  }
  SUBCASE("json round trip") {
    const auto back = NetworkExponents::from_json(net.to_json());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(back.alpha(i, j) == net.alpha(i, j));
  }
  SUBCASE("invalid descriptors") {
    CHECK_THROWS(NetworkExponents::from_json("{\"K\": 2, \"alpha\": [[0,0],[0,0]]}"));
    CHECK_THROWS(NetworkExponents::from_json("{\"K\": 3, \"alpha\": [[0,0,0],[1,0,0]]}"));
    CHECK_THROWS(NetworkExponents::from_json("{\"K\": 3, \"alpha\": [[0,0,0],[-1,0,0],[1,1,0]]}"));
    CHECK_THROWS(NetworkExponents::from_json("not json"));
    CHECK_THROWS(NetworkExponents::from_json_file("/nonexistent/net.json"));
    std::vector<std::vector<double>> big(13, std::vector<double>(13, 1.0));
    CHECK_THROWS(NetworkExponents(13, big));
    CHECK_NOTHROW(NetworkExponents(13, big, 13));
  }
  SUBCASE("single relay embedding") {
    const auto n3 = NetworkExponents::single_relay({1.0, 1.8, 1.4});
    CHECK(n3.alpha(2, 0) == 1.0);
    CHECK(n3.alpha(2, 1) == 1.8);
    CHECK(n3.alpha(1, 0) == 1.4);
  }
}

TEST_CASE("bound kind names") {
  CHECK(to_string(BoundKind::PdfRandom) == "pdf_random");
  CHECK(to_string(BoundKind::NncNoQ) == "nnc_noq");
  CHECK(to_string(BoundKind::FdCutset) == "fd_cutset");
}
