#include <cmath>
#include <map>

#include "doctest.h"
#include "pufguess/guesswork_analytic.hpp"
#include "pufguess/guesswork_oracle.hpp"
#include "pufguess/metrics.hpp"
#include "pufguess/puf_model.hpp"

using namespace pufguess;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(lo + (hi - lo) * i / n);
  return g;
}

DiscreteDistribution random_pmf(RngStream& rng) {
  const std::size_t bits = 1 + rng.below(10);
  const std::size_t support = 1 + rng.below(std::size_t{1} << bits);
  std::map<Word, double> pmf;
  while (pmf.size() < support) pmf[rng.below(std::size_t{1} << bits)] = 0.0;
  double total = 0.0;
  for (auto& [w, p] : pmf) total += (p = std::pow(rng.uniform() + 1e-3, 3.0));
  for (auto& [w, p] : pmf) p /= total;
  return DiscreteDistribution(bits, pmf);
}

}  // namespace

TEST_CASE("order-1/2 Renyi entropy dominates Shannon entropy") {
  for (const double p : grid(0.0, 1.0, 400)) {
    const double gap = renyi_entropy(p, 0.5) - binary_entropy(p);
    CHECK(gap >= -1e-12);
    if (std::abs(p - 0.5) > 1e-6 && p > 0.0 && p < 1.0) CHECK(gap > 1e-12);
  }
  CHECK(std::abs(renyi_entropy(0.5, 0.5) - binary_entropy(0.5)) <= 1e-12);
}

TEST_CASE("distortion growth rate monotonicity") {
  for (const double rho : {0.5, 1.0, 2.0}) {
    for (const double p : grid(0.0, 0.5, 25)) {
      double prev = 1e9;
      for (const double d : grid(0.0, 0.5, 50)) {
        const double r = distortion_growth_rate(p, d, rho);
        CHECK(r <= prev + 1e-12);
        prev = r;
      }
    }
    for (const double d : grid(0.0, 0.5, 25)) {
      double prev = -1.0;
      for (const double p : grid(0.0, 0.5, 50)) {
        const double r = distortion_growth_rate(p, d, rho);
        CHECK(r >= prev - 1e-12);
        prev = r;
      }
    }
  }
}

TEST_CASE("noise sensitivity diverges as D goes to zero") {
  const double h = 1e-9;
  const auto noise = [](double d) { return 1.0 - binary_entropy(d); };
  double prev = 0.0;
  for (const double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double slope = std::abs((noise(d + h * d) - noise(d - h * d)) / (2 * h * d));
    CHECK(slope > prev);
    prev = slope;
  }
  // Bias slope vanishes at p = 1/2.
  CHECK(std::abs(renyi_entropy(0.5 + 1e-6, 0.5) - renyi_entropy(0.5 - 1e-6, 0.5)) <= 1e-15);
}

// Fixed factor at fixed points; the exact ratio is about 91, so this stays red.
TEST_CASE("noise slope at D=1e-4 exceeds bias slope at p=0.45 a hundredfold") {
  const double h = 1e-7;
  const auto noise = [](double d) { return 1.0 - binary_entropy(d); };
  const auto bias = [](double p) { return renyi_entropy(p, 0.5); };
  const double d_noise = std::abs((noise(1e-4 + h) - noise(1e-4 - h)) / (2 * h));
  const double d_bias = std::abs((bias(0.45 + h) - bias(0.45 - h)) / (2 * h));
  CHECK(d_noise > 100 * d_bias);
}

TEST_CASE("failure-constrained rate at s* equals the unconstrained rate") {
  for (const double p : {0.05, 0.15, 0.3, 0.45}) {
    for (const double rho : {0.5, 1.0, 2.0, 4.0}) {
      for (const double d : {0.0, 0.02}) {
        if (d > p) continue;
        const double s = s_star(p, rho);
        const auto r = failure_constrained_rate(p, d, rho, s);
        CHECK(std::abs(r.upper_bound_on_rate - (moment_growth_rate(p, rho) - rho * binary_entropy(d))) <= 1e-9);
        // Just below s* the skip branch is active and continuous.
        const auto below = failure_constrained_rate(p, d, rho, s - 1e-9);
        CHECK_FALSE(below.unconstrained_branch);
        CHECK(std::abs(below.upper_bound_on_rate - r.upper_bound_on_rate) <= 1e-7);
      }
    }
  }
}

TEST_CASE("min-entropy never exceeds the average-guesswork rate") {
  for (const double p : grid(0.0, 0.5, 500)) {
    CHECK(min_entropy_distortion_rate(p, 0.0) <= renyi_entropy(p, 0.5) + 1e-12);
    for (const double d : {0.01, 0.1, 0.3}) CHECK(min_entropy_distortion_rate(p, d) <= min_entropy_distortion_rate(p, 0.0));
  }
}

TEST_CASE("min-entropy rate is continuous at D = p") {
  for (const double p : {0.1, 0.3, 0.5}) CHECK(min_entropy_distortion_rate(p, p - 1e-9) <= 1e-12);
}

TEST_CASE("exact moment always lies inside the Arikan bounds") {
  RngStream rng(Seed{2024});
  for (int i = 0; i < 150; ++i) {
    const DiscreteDistribution dist = random_pmf(rng);
    for (const double rho : {0.5, 1.0, 2.0}) {
      const double e = exact_guesswork_moment(dist, rho).moment;
      const RatePair b = arikan_bounds(dist, rho);
      CHECK(b.lower <= b.upper);
      CHECK(e >= b.lower * (1 - 1e-12));
      CHECK(e <= b.upper * (1 + 1e-12));
    }
  }
}

TEST_CASE("random transpositions never beat descending order") {
  RngStream rng(Seed{77});
  for (int i = 0; i < 100; ++i) {
    const DiscreteDistribution dist = random_pmf(rng);
    const auto best = exact_guesswork_moment(dist, 1.0);
    auto order = best.record.strategy;
    if (order.size() < 2) continue;
    std::map<Word, double> prob(dist.support().begin(), dist.support().end());
    std::swap(order[rng.below(order.size())], order[rng.below(order.size())]);
    double e = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) e += static_cast<double>(k + 1) * prob[order[k]];
    CHECK(e >= best.moment * (1 - 1e-12));
  }
}

TEST_CASE("failure-constrained guessing with nothing skipped is the plain oracle") {
  for (const double p : {0.2, 0.5}) {
    const auto c = failure_constrained_guesswork(p, 12, 0.0, std::nullopt, 1.5);
    const auto plain = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(p, 12), 1.5);
    CHECK(c.outcome.moment == plain.moment);
    CHECK(c.outcome.record.failure_probability == 0.0);
  }
}

TEST_CASE("guess count inverts the success CDF") {
  for (const double h : grid(0.05, 12.0, 60)) {
    for (const double c : {0.5, 0.9, 0.99, 0.999}) {
      const auto l = guesses_for_confidence(h, c);
      REQUIRE_FALSE(l.saturated);
      CHECK(auth_success_cdf(h, l.count) >= c - 1e-12);
      if (l.count > 1) CHECK(auth_success_cdf(h, l.count - 1) < c);
    }
  }
}

TEST_CASE("sampled bias concentrates around p") {
  for (const double p : {0.05, 0.4626, 0.5, 0.9}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const std::size_t m = 200'000;
      const BitVector v = sample_response({m, p, 0, 0.5}, Seed{s});
      const double frac = static_cast<double>(v.count_ones()) / m;
      CHECK(std::abs(frac - p) <= 4 * std::sqrt(p * (1 - p) / m));
    }
  }
}

TEST_CASE("correlated pair marginal of y") {
  for (const double p : {0.2, 0.45}) {
    for (const double e : {0.1, 0.3}) {
      const std::size_t m = 200'000;
      const auto [x, y] = correlated_pair({m, p, 0, e}, Seed{3});
      const double expected = p * (1 - e) + (1 - p) * e;
      const double frac = static_cast<double>(y.count_ones()) / m;
      CHECK(std::abs(frac - expected) <= 4 * std::sqrt(expected * (1 - expected) / m));
    }
  }
}

TEST_CASE("bias levels sum to one") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Population pop = sample_population({97, 0.37, 0, 0.5}, 5, 1, Seed{s});
    const auto b = bias_level(pop.truths());
    CHECK(b.ones + b.zeros == 1.0);
  }
}
