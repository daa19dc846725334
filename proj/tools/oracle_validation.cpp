#include "oracle_validation.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <map>
#include <sstream>

#include "pufguess/guesswork_analytic.hpp"
#include "pufguess/guesswork_oracle.hpp"

namespace pufguess::cli {

namespace {

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(8);
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return os.str();
}

DiscreteDistribution random_distribution(std::size_t max_bits, RngStream& rng) {
  const std::size_t max_support = std::size_t{1} << max_bits;
  const std::size_t support = 1 + static_cast<std::size_t>(rng.below(max_support));
  std::size_t bits = 1;
  while ((std::size_t{1} << bits) < support) ++bits;

  std::vector<Word> words(std::size_t{1} << bits);
  for (std::size_t i = 0; i < words.size(); ++i) words[i] = i;
  for (std::size_t i = 0; i < support; ++i) std::swap(words[i], words[i + rng.below(words.size() - i)]);

  // Skew varies from flat to heavy-tailed across draws.
  const double skew = 1.0 + 4.0 * rng.uniform();
  std::vector<double> weights(support);
  double total = 0.0;
  for (auto& w : weights) {
    w = std::pow(rng.uniform() + 1e-3, skew);
    total += w;
  }
  std::map<Word, double> pmf;
  for (std::size_t i = 0; i < support; ++i) pmf[words[i]] = weights[i] / total;
  return DiscreteDistribution(bits, pmf);
}

bool wanted(const ValidationLimits& limits, const std::string& group) {
  return limits.groups.empty() || limits.groups.contains(group);
}

void sandwich_checks(const ValidationLimits& limits, std::vector<CheckResult>& out) {
  RngStream rng(derive_seed(limits.seed, 1));
  std::size_t failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < limits.distributions; ++d) {
    const DiscreteDistribution dist = random_distribution(limits.max_support_bits, rng);
    for (const double rho : {0.5, 1.0, 2.0}) {
      const double moment = exact_guesswork_moment(dist, rho).moment;
      const RatePair b = arikan_bounds(dist, rho);
      const double slack = 1e-12 * b.upper;
      const double margin = std::min(moment - b.lower, b.upper - moment) / b.upper;
      worst_margin = std::min(worst_margin, margin);
      if (moment < b.lower - slack || moment > b.upper + slack) ++failures;
    }
  }
  out.push_back({"sandwich", "arikan_sandwich", failures == 0, static_cast<double>(failures), 0.0,
                 describe({{"distributions", static_cast<double>(limits.distributions)},
                           {"worst_relative_margin", worst_margin}})});
}

void optimality_checks(const ValidationLimits& limits, std::vector<CheckResult>& out) {
  RngStream rng(derive_seed(limits.seed, 2));
  std::size_t failures = 0;
  for (std::size_t d = 0; d < limits.distributions; ++d) {
    const DiscreteDistribution dist = random_distribution(limits.max_support_bits, rng);
    const double rho = 0.5 + 1.5 * rng.uniform();
    const GuessOutcome best = exact_guesswork_moment(dist, rho);
    const auto& order = best.record.strategy;
    if (order.size() < 2) continue;
    std::map<Word, double> prob(dist.support().begin(), dist.support().end());
    const std::size_t i = rng.below(order.size());
    std::size_t j = rng.below(order.size() - 1);
    if (j >= i) ++j;
    const double gi = std::pow(static_cast<double>(i + 1), rho);
    const double gj = std::pow(static_cast<double>(j + 1), rho);
    const double pi = prob[order[i]];
    const double pj = prob[order[j]];
    const double swapped = best.moment - gi * pi - gj * pj + gi * pj + gj * pi;
    if (swapped < best.moment * (1.0 - 1e-12)) ++failures;
  }
  out.push_back({"optimality", "sorted_order_beats_transpositions", failures == 0, static_cast<double>(failures), 0.0,
                 describe({{"distributions", static_cast<double>(limits.distributions)}})});
}

void convergence_checks(const ValidationLimits& limits, std::vector<CheckResult>& out) {
  const double tol = 0.06 * limits.tolerance_scale;
  for (const double p : {0.3, 0.4626, 0.5}) {
    const double target = renyi_entropy(p, 0.5);
    double previous_gap = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double worst_gap = 0.0;
    for (std::size_t m = limits.min_m; m <= limits.max_m; ++m) {
      const double moment = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(p, m), 1.0).moment;
      const double gap = std::abs(target - std::log2(moment) / static_cast<double>(m));
      monotone = monotone && gap < previous_gap;
      previous_gap = gap;
      worst_gap = std::max(worst_gap, gap);
    }
    out.push_back({"convergence", "rate_gap_p=" + std::to_string(p), worst_gap <= tol, worst_gap, tol,
                   describe({{"p", p}, {"H_half", target}, {"min_m", static_cast<double>(limits.min_m)},
                             {"max_m", static_cast<double>(limits.max_m)}})});
    out.push_back({"convergence", "rate_trend_p=" + std::to_string(p), monotone, previous_gap, 0.0,
                   "gap strictly shrinks with m"});
  }
}

void conditional_checks(const ValidationLimits& limits, std::vector<CheckResult>& out) {
  const std::size_t m = limits.conditional_m;
  const double e = 0.2;
  std::vector<double> noise(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    noise[k] = std::pow(e, static_cast<double>(k)) * std::pow(1.0 - e, static_cast<double>(m - k));
  }
  const double px = std::exp2(-static_cast<double>(m));
  const double moment = conditional_guesswork_moment(
      m, m, [&](Word x, Word y) { return px * noise[static_cast<std::size_t>(std::popcount(x ^ y))]; }, 1.0);
  const double rate = std::log2(moment) / static_cast<double>(m);
  const double target = renyi_entropy(e, 0.5);
  const double tol = 0.05 * limits.tolerance_scale;
  out.push_back({"conditional", "correlated_pair_rate", std::abs(rate - target) <= tol, rate, target,
                 describe({{"m", static_cast<double>(m)}, {"e", e}, {"tolerance", tol}})});
}

void distortion_checks(const ValidationLimits& limits, std::vector<CheckResult>& out) {
  const std::size_t m = limits.distortion_m;
  const double d = 0.125;
  const double rate = std::log2(distortion_guesswork_greedy(0.5, m, d, 1.0).moment) / static_cast<double>(m);
  const double target = 1.0 - binary_entropy(d);
  const double tol = 0.08 * limits.tolerance_scale;
  out.push_back({"distortion", "greedy_rate", std::abs(rate - target) <= tol, rate, target,
                 describe({{"m", static_cast<double>(m)}, {"D", d}, {"tolerance", tol}})});

  const double p = 0.3;
  const double greedy = distortion_guesswork_greedy(p, m, 0.0, 1.0).moment;
  const double sorted = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(p, m), 1.0).moment;
  out.push_back({"distortion", "greedy_equals_sorted_at_D0", greedy == sorted, greedy, sorted, "exact equality"});
}

void failure_checks(const ValidationLimits& limits, std::vector<CheckResult>& out) {
  const double p = 0.3;
  const double s = 0.35;
  const std::size_t m = limits.distortion_m;
  const auto constrained = failure_constrained_guesswork(p, m, 0.0, s, 1.0);
  const double free_moment = exact_guesswork_moment(DiscreteDistribution::iid_bernoulli(p, m), 1.0).moment;
  const double md = static_cast<double>(m);
  out.push_back({"failure", "constrained_rate_not_above_unconstrained",
                 constrained.outcome.moment <= free_moment, std::log2(constrained.outcome.moment) / md,
                 std::log2(free_moment) / md, "rates of E[G]"});
  out.push_back({"failure", "failure_within_skipped_mass",
                 constrained.outcome.record.failure_probability <= constrained.skipped_mass + 1e-12,
                 constrained.outcome.record.failure_probability, constrained.skipped_mass, ""});

  double worst = 0.0;
  for (const double pp : {0.05, 0.1, 0.2, 0.3, 0.45}) {
    for (const double rho : {0.5, 1.0, 2.0}) {
      const double star = s_star(pp, rho);
      if (!(star > pp)) continue;
      const double at = failure_constrained_rate(pp, 0.0, rho, star).upper_bound_on_rate;
      const double below = rho * binary_entropy(star) - kl_divergence(star, pp);
      worst = std::max(worst, std::abs(at - below));
    }
  }
  const double tol = 1e-9 * limits.tolerance_scale;
  out.push_back({"failure", "continuity_at_s_star", worst <= tol, worst, tol, "max branch mismatch"});
}

}  // namespace

const std::vector<std::string>& validation_groups() {
  static const std::vector<std::string> kGroups = {"sandwich",    "optimality", "convergence",
                                                   "conditional", "distortion", "failure"};
  return kGroups;
}

std::vector<CheckResult> run_oracle_validation(const ValidationLimits& limits) {
  std::vector<CheckResult> out;
  if (wanted(limits, "sandwich")) sandwich_checks(limits, out);
  if (wanted(limits, "optimality")) optimality_checks(limits, out);
  if (wanted(limits, "convergence")) convergence_checks(limits, out);
  if (wanted(limits, "conditional")) conditional_checks(limits, out);
  if (wanted(limits, "distortion")) distortion_checks(limits, out);
  if (wanted(limits, "failure")) failure_checks(limits, out);
  return out;
}

}  // namespace pufguess::cli
