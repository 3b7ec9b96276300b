#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcmi/channels.hpp"
#include "lcmi/rng.hpp"
#include "lcmi/scalar.hpp"
#include "support/oracles.hpp"

using namespace lcmi;

TEST_CASE("bms_from_bsc") {
  CHECK(bms_from_bsc(1.0).states() == std::vector<BmsState>{{1.0, 0.0}});
  CHECK(bms_from_bsc(0.0).states() == std::vector<BmsState>{{1.0, 0.5}});
  const auto ch = bms_from_bsc(0.5);
  REQUIRE(ch.states().size() == 1);
  CHECK(ch.states()[0].crossover == doctest::Approx(0.11002786443835955).epsilon(1e-11));
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    CHECK(std::fabs(bms_from_bsc(t).capacity() - t) < 1e-12);
  }
}

TEST_CASE("bms_from_bec") {
  CHECK(bms_from_bec(1.0).states().size() == 1);
  CHECK(bms_from_bec(0.0).states().size() == 1);
  const auto ch = bms_from_bec(0.3);
  REQUIRE(ch.states().size() == 2);
  CHECK(ch.states()[0].weight == 0.3);
  CHECK(ch.states()[0].crossover == 0.0);
  CHECK(ch.states()[1].weight == 0.7);
  CHECK(ch.states()[1].crossover == 0.5);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    CHECK(std::fabs(bms_from_bec(t).capacity() - t) < 1e-12);
  }
}

TEST_CASE("BmsChannel validation and canonicalization") {
  CHECK_THROWS_AS(BmsChannel({{0.5, 0.1}, {0.4, 0.2}}), std::invalid_argument);   // sum != 1
  CHECK_THROWS_AS(BmsChannel({{-0.1, 0.1}, {1.1, 0.2}}), std::invalid_argument);  // negative
  CHECK_THROWS_AS(BmsChannel({{1.0, 1.5}}), std::invalid_argument);               // crossover
  const BmsChannel mirror({{1.0, 0.9}});
  CHECK(mirror.states()[0].crossover == doctest::Approx(0.1));  // folded into [0,1/2]
  const BmsChannel dropped({{0.0, 0.3}, {1.0, 0.2}});
  CHECK(dropped.states().size() == 1);
}

TEST_CASE("capacity of a mixture and of a Dmc") {
  const BmsChannel mix({{0.5, 0.0}, {0.5, 0.11}});
  CHECK(capacity(mix) == doctest::Approx(0.75004202091773600).epsilon(1e-12));
  const Dmc bsc = dmc_bsc(0.11, 0.5);
  CHECK(capacity(bsc) == doctest::Approx(0.50008404183547200).epsilon(1e-12));
  // Independent evaluation from the explicit joint.
  CHECK(capacity(bsc) ==
        doctest::Approx(oracles::joint_mi({{0.5 * 0.89, 0.5 * 0.11}, {0.5 * 0.11, 0.5 * 0.89}}))
            .epsilon(1e-12));
}

TEST_CASE("Dmc validation") {
  CHECK_THROWS_AS(Dmc({{0.5, 0.4}, {0.5, 0.5}}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Dmc({{1.2, -0.2}, {0.5, 0.5}}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Dmc({{0.5, 0.5}}, {0.5, 0.5}), std::invalid_argument);  // shape mismatch
  CHECK_THROWS_AS(Dmc({{1.0}, {1.0}}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(Dmc({{0.5, 0.5}, {1.0}}, {0.5, 0.5}), std::invalid_argument);  // ragged
}

TEST_CASE("Dmc capacity never exceeds the alphabet limits") {
  CounterRng rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    const int nx = 2 + static_cast<int>(rng.next() % 3);
    const int ny = 2 + static_cast<int>(rng.next() % 4);
    std::vector<std::vector<double>> w(nx, std::vector<double>(ny));
    for (auto& row : w) {
      double sum = 0.0;
      for (double& v : row) sum += v = rng.next_unit() + 1e-3;
      for (double& v : row) v /= sum;
      double acc = 0.0;  // force an exact unit sum
      for (std::size_t y = 0; y + 1 < row.size(); ++y) acc += row[y];
      row.back() = 1.0 - acc;
    }
    std::vector<double> px(nx);
    double sum = 0.0;
    for (double& v : px) sum += v = rng.next_unit() + 1e-3;
    for (double& v : px) v /= sum;
    double acc = 0.0;
    for (int x = 0; x + 1 < nx; ++x) acc += px[x];
    px.back() = 1.0 - acc;

    const Dmc ch(w, px);
    const double c = capacity(ch);
    CHECK(c >= 0.0);
    CHECK(c <= std::log2(static_cast<double>(nx)) + 1e-12);
    CHECK(c <= std::log2(static_cast<double>(ny)) + 1e-12);
  }
}

TEST_CASE("erasure channel helpers") {
  const std::vector<double> uniform{0.5, 0.5};
  CHECK(erasure_upper_bound_mi(0.5, uniform, 3) == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(erasure_upper_bound_mi(0.0, uniform, 5) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> skew{0.2, 0.8};
  CHECK(erasure_upper_bound_mi(0.3, skew, 1) ==
        doctest::Approx(0.7 * shannon_entropy(skew)).epsilon(1e-14));
  CHECK_THROWS_AS(erasure_upper_bound_mi(1.5, uniform, 1), std::domain_error);
  CHECK_THROWS_AS(erasure_upper_bound_mi(0.5, uniform, 0), std::domain_error);

  const Dmc ec = dmc_erasure(0.3, {0.2, 0.8});
  CHECK(ec.output_size() == 3);
  CHECK(capacity(ec) == doctest::Approx(0.7 * shannon_entropy(skew)).epsilon(1e-12));
}

TEST_CASE("two-state mixtures hit requested capacities exactly") {
  for (double w : {0.25, 0.5, 0.75}) {
    for (double c : {0.3, 0.5, 0.7}) {
      const BmsChannel ch = bms_two_state(w, c);
      REQUIRE(ch.states().size() == 2);
      CHECK(std::fabs(ch.capacity() - c) < 1e-12);
      CHECK(ch.states()[0].crossover != ch.states()[1].crossover);
    }
  }
  CHECK_THROWS_AS(bms_two_state(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(bms_two_state(0.5, 1.0), std::domain_error);
}

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(shannon_entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(shannon_entropy(std::vector<double>{0.4, 0.4}), std::invalid_argument);
}
