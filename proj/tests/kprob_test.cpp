#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"
#include "ucf/kprob.hpp"

using namespace ucf;
using doctest::Approx;

namespace {

// Sum over all 2^d worlds, kept separate from the library's enumerator.
double worlds_at_least(const std::vector<double>& p, int k) {
  const std::size_t d = p.size();
  long double total = 0.0L;
  for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
    if (std::popcount(mask) < k) continue;
    long double w = 1.0L;
    for (std::size_t i = 0; i < d; ++i) w *= ((mask >> i) & 1U) ? p[i] : 1.0L - p[i];
    total += w;
  }
  return static_cast<double>(total);
}

// Pr(Bin(d, z) >= k) summed term by term in long double.
double binomial_tail(double z, int k, std::size_t d) {
  long double total = 0.0L;
  for (std::size_t i = static_cast<std::size_t>(k); i <= d; ++i) {
    long double log_c = lgammal(d + 1.0L) - lgammal(i + 1.0L) - lgammal(d - i + 1.0L);
    total += expl(log_c + i * logl(static_cast<long double>(z)) +
                       (d - i) * log1pl(-static_cast<long double>(z)));
  }
  return static_cast<double>(total);
}

}  // namespace

TEST_CASE("kprob_dp examples") {
  CHECK(kprob_dp(std::vector<double>{0.5}, 1).value == Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(kprob_dp(std::vector<double>{0.9, 0.8, 0.1}, 2).value - 0.746) <= 1e-12);
  CHECK(std::abs(kprob_dp(std::vector<double>{0.5, 0.5}, 2).value - 0.25) <= 1e-12);
  CHECK(kprob_dp(std::vector<double>{0.7, 0.7, 0.7}, 4).value == 0.0);
  CHECK(kprob_dp(std::vector<double>{}, 1).value == 0.0);
}

TEST_CASE("kprob_dp stores the lower tail of the degree distribution") {
  auto r = kprob_dp(std::vector<double>{0.5, 0.5}, 2);
  REQUIRE(r.dist.probs.size() == 2);
  CHECK(r.dist.probs[0] == Approx(0.25));
  CHECK(r.dist.probs[1] == Approx(0.5));
  CHECK(r.dist.source_degree == 2);
  CHECK(r.dist.k == 2);
}

TEST_CASE("kprob_dp degenerate cases") {
  CHECK(kprob_dp(std::vector<double>{1.0, 1.0, 1.0}, 3).value == 1.0);
  CHECK(kprob_dp(std::vector<double>{1.0, 1.0, 1.0}, 2).value == 1.0);
  CHECK(kprob_dp(std::vector<double>{1.0, 1.0}, 3).value == 0.0);
}

TEST_CASE("property: kprob_dp matches world enumeration within 1e-12") {
  std::mt19937_64 rng(101);
  for (auto style : {testing::ProbStyle::kUniform, testing::ProbStyle::kCoarse, testing::ProbStyle::kHigh}) {
    for (int trial = 0; trial < 300; ++trial) {
      auto p = testing::random_probs(rng, rng() % 13, style);
      for (int k = 1; k <= static_cast<int>(p.size()) + 1; ++k) {
        double dp = kprob_dp(p, k).value;
        REQUIRE(std::abs(dp - worlds_at_least(p, k)) <= 1e-12);
        std::vector<double> scratch;
        CHECK(kprob_value(p, k, scratch) == dp);
      }
    }
  }
}

TEST_CASE("ec_remove_edge examples") {
  auto two = kprob_dp(std::vector<double>{0.5, 0.5}, 1);
  CHECK(two.dist.probs[0] == Approx(0.25));
  auto one = ec_remove_edge(two.dist, 0.5);
  CHECK(one.dist.probs[0] == Approx(0.5));
  CHECK(one.value == Approx(0.5));
  CHECK(one.dist.source_degree == 1);

  auto single = kprob_dp(std::vector<double>{0.3}, 1);
  CHECK(std::abs(ec_remove_edge(single.dist, 0.3).value) <= 1e-15);

  CHECK_THROWS_AS(ec_remove_edge(single.dist, 1.0), std::domain_error);
  CHECK_THROWS_AS(ec_remove_edge(single.dist, 0.0), std::invalid_argument);
}

TEST_CASE("ec_remove_edge matches DP on dyadic fixtures") {
  std::mt19937_64 rng(7);
  static constexpr double kDyadic[] = {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(1 + rng() % 8);
    for (auto& x : p) x = kDyadic[rng() % 7];
    int k = 1 + static_cast<int>(rng() % (p.size() + 1));
    std::size_t drop = rng() % p.size();
    auto removed = ec_remove_edge(kprob_dp(p, k).dist, p[drop]);
    auto reduced = p;
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(drop));
    CHECK(std::abs(removed.value - kprob_dp(reduced, k).value) <= 1e-9);
  }
}

TEST_CASE("ec_remove_edge drifts away from DP along a chain of removals at p = 0.9999") {
  static constexpr double p = 0.9999;
  auto worst_drift = [](int k, std::size_t chain) {
    std::vector<double> list(chain, p);
    auto dist = kprob_dp(list, k).dist;
    double worst = 0.0;
    while (!list.empty()) {
      auto next = ec_remove_edge(dist, p);
      list.pop_back();
      worst = std::max(worst, std::abs(next.value - kprob_dp(list, k).value));
      dist = next.dist;
    }
    return worst;
  };
  // Each step divides rounding error by 1 - p, once per tail entry.
  CHECK(worst_drift(2, 24) > std::numeric_limits<double>::epsilon());
  CHECK(worst_drift(3, 24) > 1e-9);
  CHECK(worst_drift(5, 24) > 1.0);  // unclamped: far outside [0, 1]
}

TEST_CASE("beta_tail examples") {
  CHECK(std::abs(beta_tail(0.5, 2, 3) - 0.5) <= 1e-12);
  CHECK(beta_tail(1.0, 2, 5) == 1.0);
  CHECK(std::abs(beta_tail(0.1, 2, 3) - 0.028) <= 1e-12);
  CHECK(beta_tail(0.0, 1, 4) == 0.0);
  CHECK(beta_tail(0.7, 4, 3) == 0.0);
  CHECK(beta_tail(0.3, 0, 3) == 1.0);
}

TEST_CASE("property: beta_tail matches a direct binomial sum within 1e-12") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t d = rng() % 200;
    int k = 1 + static_cast<int>(rng() % (d + 2));
    double z = unit(rng);
    REQUIRE(std::abs(beta_tail(z, k, d) - binomial_tail(z, k, d)) <= 1e-12);
  }
}

TEST_CASE("property: beta_tail agrees with kprob_dp on uniform lists") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t d = 1 + rng() % 60;
    int k = 1 + static_cast<int>(rng() % d);
    double z = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<double> list(d, z);
    CHECK(std::abs(beta_tail(z, k, d) - kprob_dp(list, k).value) <= 1e-12);
  }
}

TEST_CASE("property: beta_tail monotone in z, d and k over a grid") {
  for (std::size_t d = 0; d <= 40; d += 3) {
    for (int k = 1; k <= 42; k += 2) {
      double prev = -1.0;
      for (int step = 0; step <= 100; ++step) {
        double z = step / 100.0;
        double v = beta_tail(z, k, d);
        CHECK(v >= prev - 1e-15);
        prev = v;
        CHECK(beta_tail(z, k, d + 1) >= v - 1e-15);
        CHECK(beta_tail(z, k + 1, d) <= v + 1e-15);
      }
    }
  }
}

TEST_CASE("bounds examples") {
  auto b = bounds(std::vector<double>{0.9, 0.8, 0.1}, 2);
  CHECK(std::abs(b.lb - 0.72) <= 1e-12);
  CHECK(std::abs(b.ub - 0.972) <= 1e-12);
  auto flat = bounds(std::vector<double>{0.5, 0.5, 0.5}, 2);
  CHECK(std::abs(flat.lb - 0.5) <= 1e-12);
  CHECK(std::abs(flat.ub - 0.5) <= 1e-12);
  auto short_list = bounds(std::vector<double>{0.9}, 2);
  CHECK(short_list.lb == 0.0);
  CHECK(short_list.ub == 0.0);
}

TEST_CASE("bound modes pick their lower-bound term") {
  std::vector<double> p{0.9, 0.8, 0.1};
  CHECK(std::abs(bounds(p, 2, BoundMode::kTopKOnly).lb - 0.72) <= 1e-12);
  CHECK(std::abs(bounds(p, 2, BoundMode::kBetaOnly).lb - 0.028) <= 1e-12);
  CHECK(bounds(p, 2, BoundMode::kBetaOnly).ub == bounds(p, 2).ub);
  CHECK(top_k_product(p, 2) == Approx(0.72));
  CHECK(top_k_product(p, 4) == 0.0);
}

TEST_CASE("property: bounds sandwich kprob_dp") {
  std::mt19937_64 rng(29);
  for (auto style : {testing::ProbStyle::kUniform, testing::ProbStyle::kCoarse, testing::ProbStyle::kHigh}) {
    for (int trial = 0; trial < 500; ++trial) {
      auto p = testing::random_probs(rng, rng() % 40, style);
      std::sort(p.begin(), p.end(), std::greater<>());
      for (int k = 1; k <= static_cast<int>(p.size()) + 1; ++k) {
        double v = kprob_dp(p, k).value;
        for (auto mode : {BoundMode::kBoth, BoundMode::kTopKOnly, BoundMode::kBetaOnly}) {
          auto b = bounds(p, k, mode);
          REQUIRE(b.lb >= 0.0);
          REQUIRE(b.lb <= b.ub);
          REQUIRE(b.ub <= 1.0);
          REQUIRE(b.lb <= v + 1e-12);
          REQUIRE(v <= b.ub + 1e-12);
        }
      }
    }
  }
}
