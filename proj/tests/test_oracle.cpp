#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "pufguess/guesswork_analytic.hpp"
#include "pufguess/guesswork_oracle.hpp"
#include "pufguess/parallel.hpp"

using namespace pufguess;

namespace {

// Moment of an arbitrary guessing order, straight from the definition.
double moment_of_order(const std::map<Word, double>& pmf, const std::vector<Word>& order, double rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) total += std::pow(static_cast<double>(i + 1), rho) * pmf.at(order[i]);
  return total;
}

double binomial_pmf(std::size_t m, std::size_t k, double p) {
  return std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) + k * std::log(p) +
                  (m - k) * std::log1p(-p));
}

}  // namespace

TEST_CASE("exact_guesswork_moment examples") {
  CHECK(exact_guesswork_moment(DiscreteDistribution(3, {{5, 1.0}}), 1.0).moment == 1.0);
  const auto u = exact_guesswork_moment(DiscreteDistribution(2, {{0, .25}, {1, .25}, {2, .25}, {3, .25}}), 1.0);
  CHECK(u.moment == doctest::Approx(2.5));
  CHECK(u.record.strategy == std::vector<Word>{0, 1, 2, 3});

  const auto dist = DiscreteDistribution::iid_bernoulli(0.3, 16);
  const double e = exact_guesswork_moment(dist, 1.0).moment;
  const RatePair b = arikan_bounds(dist, 1.0);
  CHECK(e >= b.lower);
  CHECK(e <= b.upper);
}

TEST_CASE("every permutation of a small pmf is no better than sorted order") {
  const std::map<Word, double> pmf{{0, 0.1}, {1, 0.4}, {2, 0.2}, {3, 0.3}};
  const DiscreteDistribution dist(2, pmf);
  for (const double rho : {0.5, 1.0, 2.0}) {
    const double best = exact_guesswork_moment(dist, rho).moment;
    std::vector<Word> order{0, 1, 2, 3};
    double min_seen = 1e300;
    do {
      min_seen = std::min(min_seen, moment_of_order(pmf, order, rho));
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(best == doctest::Approx(min_seen).epsilon(1e-15));
  }
}

TEST_CASE("equal-probability words can be guessed in any order") {
  // 1/8 each on six words, 1/4 on one: ties inside the 1/8 block.
  std::map<Word, double> pmf{{7, 0.25}};
  for (Word w = 0; w < 6; ++w) pmf[w] = 0.125;
  const DiscreteDistribution dist(3, pmf);
  const double sorted = exact_guesswork_moment(dist, 1.0).moment;
  // Exact rational value: 1/4 + (2+3+4+5+6+7)/8 = 27/8 + 1/4.
  CHECK(sorted == 27.0 / 8.0 + 0.25);
  CHECK(moment_of_order(pmf, {7, 5, 4, 3, 2, 1, 0}, 1.0) == sorted);
}

TEST_CASE("conditional_guesswork_moment") {
  // Independence collapses to the marginal.
  const double px[4] = {0.1, 0.2, 0.3, 0.4};
  const double py[2] = {0.7, 0.3};
  std::vector<JointDistribution::Entry> indep;
  std::map<Word, double> marginal;
  for (Word x = 0; x < 4; ++x) {
    marginal[x] = px[x];
    for (Word y = 0; y < 2; ++y) indep.push_back({x, y, px[x] * py[y]});
  }
  const JointDistribution joint(2, 1, indep);
  CHECK(conditional_guesswork_moment(joint, 1.0) ==
        doctest::Approx(exact_guesswork_moment(DiscreteDistribution(2, marginal), 1.0).moment));

  const JointDistribution same(2, 2, {{0, 0, 0.25}, {1, 1, 0.25}, {2, 2, 0.25}, {3, 3, 0.25}});
  CHECK(conditional_guesswork_moment(same, 1.0) == 1.0);

  CHECK_THROWS(JointDistribution(1, 1, {{0, 0, 0.5}, {1, 1, 0.4}}));

  // Functional form agrees with the explicit joint.
  const double f = conditional_guesswork_moment(2, 1, [&](Word x, Word y) { return px[x] * py[y]; }, 1.0);
  CHECK(f == doctest::Approx(conditional_guesswork_moment(joint, 1.0)));
}

TEST_CASE("distortion_guesswork_greedy") {
  for (const double p : {0.2, 0.5}) {
    const auto greedy = distortion_guesswork_greedy(p, 10, 0.0, 1.0);
    const auto sorted = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(p, 10), 1.0);
    CHECK(greedy.moment == sorted.moment);
    CHECK(greedy.record.strategy == sorted.record.strategy);
  }
  const auto full = distortion_guesswork_greedy(0.3, 8, 1.0, 2.0);
  CHECK(full.moment == doctest::Approx(1.0));
  CHECK(full.record.strategy.size() == 1);

  // Hand check, m = 2, radius 1, p = 1/2. Every ball holds 3/4, so the first
  // guess is 00 (covering 00, 01, 10). Then 01, 10 and 11 all reach the last
  // word 11, and the lowest of them wins.
  const auto tiny = distortion_guesswork_greedy(0.5, 2, 0.5, 1.0);
  CHECK(tiny.record.strategy == std::vector<Word>{0, 1});
  CHECK(tiny.moment == doctest::Approx(0.75 + 2 * 0.25));

  CHECK_THROWS(distortion_guesswork_greedy(0.5, kMaxOracleBits + 1, 0.1, 1.0));
}

TEST_CASE("greedy distortion guesswork does not increase with D") {
  for (const double p : {0.2, 0.45}) {
    double prev = 1e300;
    for (std::size_t r = 0; r <= 5; ++r) {
      const double d = static_cast<double>(r) / 10.0;
      const double e = distortion_guesswork_greedy(p, 10, d, 1.0).moment;
      CHECK(e <= prev * (1 + 1e-12));
      prev = e;
    }
  }
}

TEST_CASE("skipped_types follows both sides of the boundary") {
  // High side: q >= s. Low side: q < p with D(q||p) >= D(s||p).
  const double p = 0.3, s = 0.35;
  const auto skipped = skipped_types(p, 16, s);
  const double alpha = kl_divergence(s, p);
  for (std::size_t k = 0; k <= 16; ++k) {
    const double q = k / 16.0;
    const bool expect = q >= s || (q < p && kl_divergence(q, p) >= alpha);
    CHECK((std::find(skipped.begin(), skipped.end(), k) != skipped.end()) == expect);
  }
}

TEST_CASE("failure_constrained_guesswork") {
  // s = 1 with p near 1/2: only the all-ones type is dropped.
  const auto top = failure_constrained_guesswork(0.45, 10, 0.0, 1.0, 1.0);
  CHECK(top.skipped_types == std::vector<std::size_t>{10});
  CHECK(top.skipped_mass == doctest::Approx(std::pow(0.45, 10)));
  CHECK(top.outcome.record.failure_probability == doctest::Approx(std::pow(0.45, 10)));

  // p = 1/2, nothing to skip.
  const auto none = failure_constrained_guesswork(0.5, 12, 0.0, std::nullopt, 1.0);
  const double free = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(0.5, 12), 1.0).moment;
  CHECK(none.skipped_types.empty());
  CHECK(std::abs(none.outcome.moment - free) <= 1e-9 * free);

  const auto c = failure_constrained_guesswork(0.3, 16, 0.0, 0.35, 1.0);
  const double unconstrained = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(0.3, 16), 1.0).moment;
  CHECK(c.outcome.moment <= unconstrained);
  double mass = 0.0;
  for (const auto k : c.skipped_types) mass += binomial_pmf(16, k, 0.3);
  CHECK(c.skipped_mass == doctest::Approx(mass).epsilon(1e-12));
  CHECK(c.outcome.record.failure_probability <= c.skipped_mass + 1e-12);
  CHECK(c.conditional_moment == doctest::Approx(c.outcome.moment / (1 - c.outcome.record.failure_probability)));

  // With distortion a skipped word can still fall inside a guessed ball.
  const auto cd = failure_constrained_guesswork(0.3, 12, 0.1, 0.4, 1.0);
  CHECK(cd.outcome.record.failure_probability <= cd.skipped_mass + 1e-12);
}

TEST_CASE("simulate_auth_game") {
  const std::vector<double> certain{0.0, 0.0};
  const auto s0 = simulate_auth_game(certain, 1000, Seed{1});
  CHECK(s0.mean_guesswork == 1.0);
  CHECK(s0.success_cdf.at(0) == 1.0);

  const std::vector<double> h(10, 1.0);
  const auto s = simulate_auth_game(h, 1'000'000, Seed{2});
  CHECK(std::abs(s.mean_guesswork / auth_avg_guesswork(h) - 1) <= 0.01);
  const double q = auth_failure_prob(h);
  CHECK(std::abs(s.failure_rate - q) <= 3 * std::sqrt(q * (1 - q) / 1e6));

  set_thread_limit(1);
  const auto serial = simulate_auth_game(h, 20'000, Seed{3});
  set_thread_limit(3);
  const auto threaded = simulate_auth_game(h, 20'000, Seed{3});
  set_thread_limit(0);
  CHECK(serial.mean_guesswork == threaded.mean_guesswork);
  CHECK(serial.success_cdf == threaded.success_cdf);
}

TEST_CASE("simulate_mac_game") {
  const auto s = simulate_mac_game(2, 2, 0.5, MacMapping::Uniform, 200'000, Seed{4});
  CHECK(std::abs(s.mean - 10.0) <= 0.1);

  // L = 1 identity mapping: each message costs 1 * max(p, 1-p) + 2 * min(p, 1-p).
  const auto one = simulate_mac_game(3, 1, 0.2, MacMapping::Identity, 200'000, Seed{5});
  CHECK(std::abs(one.mean - 8 * (0.8 + 2 * 0.2)) <= 0.05);

  CHECK_THROWS(simulate_mac_game(11, 2, 0.5, MacMapping::Uniform, 10, Seed{1}));
  CHECK_THROWS(simulate_mac_game(2, 2, 0.3, MacMapping::Uniform, 10, Seed{1}));
}
