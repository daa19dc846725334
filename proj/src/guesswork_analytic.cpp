#include "pufguess/guesswork_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pufguess {

namespace {

void require_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error(std::string(what) + " must lie in [0, 1]");
}

void require_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("moment order rho must be positive");
}

// x log2 x with the 0 log 0 = 0 convention.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// x log2(x / y), 0 when x = 0; +inf when y = 0 < x.
double relative_term(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return std::numeric_limits<double>::infinity();
  return x * std::log2(x / y);
}

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Guards the double-valued closed forms against 1 - 2^-H rounding to 1.
double miss_probability(double min_entropy) {
  if (!(min_entropy >= 0.0)) throw std::domain_error("min-entropy must be non-negative");
  return -std::expm1(-min_entropy * std::log(2.0));  // 1 - 2^-H
}

}  // namespace

void GuessworkParams::validate() const {
  require_rho(rho);
  if (!(distortion >= 0.0 && distortion <= 0.5)) throw std::domain_error("distortion D must lie in [0, 1/2]");
  if (skip_boundary && !(*skip_boundary > 0.0 && *skip_boundary <= 1.0)) {
    throw std::domain_error("skip boundary s must lie in (0, 1]");
  }
}

double binary_entropy(double q) {
  require_probability(q, "binary entropy argument");
  return -xlog2x(q) - xlog2x(1.0 - q);
}

double renyi_entropy(double p, double order) {
  require_probability(p, "Bernoulli parameter");
  if (!(order > 0.0) || order == 1.0 || !std::isfinite(order)) {
    throw std::domain_error("Renyi order must be positive, finite and != 1");
  }
  // Factor out the larger mass; exact at p = 1/2 and at the endpoints.
  const double hi = std::max(p, 1.0 - p);
  const double lo = 1.0 - hi;
  return (order * std::log2(hi) + std::log2(1.0 + std::pow(lo / hi, order))) / (1.0 - order);
}

double kl_divergence(double s, double p) {
  require_probability(s, "divergence argument s");
  require_probability(p, "divergence reference p");
  const double d = relative_term(s, p) + relative_term(1.0 - s, 1.0 - p);
  if (std::isinf(d)) throw std::domain_error("divergence is infinite: s lies off the support of p");
  return std::max(d, 0.0);
}

double moment_growth_rate(double p, double rho) {
  require_rho(rho);
  return rho * renyi_entropy(p, 1.0 / (1.0 + rho));
}

double distortion_growth_rate(double p, double distortion, double rho) {
  if (!(distortion >= 0.0 && distortion <= 0.5)) throw std::domain_error("distortion D must lie in [0, 1/2]");
  return std::max(moment_growth_rate(p, rho) - rho * binary_entropy(distortion), 0.0);
}

double s_star(double p, double rho) {
  require_rho(rho);
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("s* needs p in (0, 1)");
  const double e = 1.0 / (1.0 + rho);
  const double a = std::pow(p, e);
  const double b = std::pow(1.0 - p, e);
  return a / (a + b);
}

FailureConstrainedRate failure_constrained_rate(double p, double distortion, double rho, double s) {
  require_rho(rho);
  if (!(p > 0.0 && p <= 0.5)) throw std::domain_error("failure-constrained rate needs p in (0, 1/2]");
  if (!(distortion >= 0.0 && distortion <= p)) throw std::domain_error("failure-constrained rate needs 0 <= D <= p");
  if (!(s > p && s <= 1.0)) throw std::domain_error("skip boundary s must lie in (p, 1]");

  const double alpha = kl_divergence(s, p);
  const double noise_term = rho * binary_entropy(distortion);
  if (s >= s_star(p, rho)) {
    return {moment_growth_rate(p, rho) - noise_term, alpha, true};
  }
  return {rho * binary_entropy(s) - noise_term - alpha, alpha, false};
}

double min_entropy_distortion_rate(double p, double distortion) {
  require_probability(p, "Bernoulli parameter");
  require_probability(distortion, "distortion");
  if (p > 0.5) throw std::domain_error("min-entropy under distortion is defined for p <= 1/2");
  if (distortion > p) return 0.0;
  return kl_divergence(distortion, p);
}

RatePair arikan_bounds(const DiscreteDistribution& dist, double rho) {
  require_rho(rho);
  const double e = 1.0 / (1.0 + rho);
  double sum = 0.0;
  for (const auto& [word, prob] : dist.support()) sum += std::pow(prob, e);
  const double upper = std::pow(sum, 1.0 + rho);
  const double m_card = static_cast<double>(dist.support().size());
  return {upper * std::pow(1.0 + std::log(m_card), -rho), upper};
}

RatePair arikan_bounds(const JointDistribution& joint, double rho) {
  require_rho(rho);
  const double e = 1.0 / (1.0 + rho);
  double upper = 0.0;
  for (const auto& [y, xs] : joint.by_side_information()) {
    double inner = 0.0;
    for (const auto& [x, prob] : xs) inner += std::pow(prob, e);
    upper += std::pow(inner, 1.0 + rho);
  }
  const double m_card = static_cast<double>(joint.x_cardinality());
  return {upper * std::pow(1.0 + std::log(m_card), -rho), upper};
}

std::size_t distortion_radius(std::size_t m, double distortion) {
  if (!(distortion >= 0.0)) throw std::domain_error("distortion must be non-negative");
  const double r = std::floor(static_cast<double>(m) * distortion + 1e-9);
  return r >= static_cast<double>(m) ? m : static_cast<std::size_t>(r);
}

double log2_ball_probability(double p, std::size_t m, double distortion) {
  require_probability(p, "Bernoulli parameter");
  if (m == 0) throw std::domain_error("ball probability needs m >= 1");
  const std::size_t radius = distortion_radius(m, distortion);
  if (radius >= m || p == 0.0) return 0.0;
  if (p == 1.0) return -std::numeric_limits<double>::infinity();

  const double md = static_cast<double>(m);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_m = std::lgamma(md + 1.0);
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= radius; ++i) {
    const double id = static_cast<double>(i);
    const double term = lg_m - std::lgamma(id + 1.0) - std::lgamma(md - id + 1.0) + id * log_p + (md - id) * log_q;
    acc = log_sum_exp(acc, term);
  }
  return std::min(acc, 0.0) / std::log(2.0);
}

double ball_probability(double p, std::size_t m, double distortion) {
  return std::exp2(log2_ball_probability(p, m, distortion));
}

double auth_avg_guesswork(std::span<const double> min_entropies) {
  double survive = 1.0;  // probability that guesses 1..i-1 all failed
  double expected = 0.0;
  for (std::size_t i = 0; i < min_entropies.size(); ++i) {
    const double miss = miss_probability(min_entropies[i]);
    expected += static_cast<double>(i + 1) * (1.0 - miss) * survive;
    survive *= miss;
  }
  return expected;
}

double auth_avg_guesswork_constant(double min_entropy, std::size_t n) {
  const double miss = miss_probability(min_entropy);
  const double inv_hit = std::exp2(min_entropy);
  return inv_hit - std::pow(miss, static_cast<double>(n)) * (static_cast<double>(n) + inv_hit);
}

double auth_success_cdf(double min_entropy, std::size_t l) {
  const double miss = miss_probability(min_entropy);
  if (l == 0) return 0.0;
  if (miss == 0.0) return 1.0;
  return -std::expm1(static_cast<double>(l) * std::log(miss));
}

double auth_success_cdf(std::span<const double> min_entropies, std::size_t l) {
  if (l > min_entropies.size()) throw std::domain_error("cdf point beyond the number of challenges");
  double survive = 1.0;
  for (std::size_t i = 0; i < l; ++i) survive *= miss_probability(min_entropies[i]);
  return 1.0 - survive;
}

double auth_failure_prob(std::span<const double> min_entropies) {
  double survive = 1.0;
  for (const double h : min_entropies) survive *= miss_probability(h);
  return survive;
}

GuessCount guesses_for_confidence(double min_entropy, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::domain_error("confidence must lie in (0, 1)");
  if (!(min_entropy > 0.0)) throw std::domain_error("guesses_for_confidence needs positive min-entropy");

  // log(1 - 2^-H), accurate for large H.
  const double log_miss = std::log1p(-std::exp2(-min_entropy));
  const double real_count = std::log1p(-confidence) / log_miss;
  constexpr double kMaxCount = 9.0e18;
  if (!(real_count < kMaxCount)) return {0, true, std::log2(real_count)};

  constexpr double kSlack = 1e-12;
  const auto reached = [&](std::uint64_t l) {
    return -std::expm1(static_cast<double>(l) * log_miss) >= confidence * (1.0 - kSlack);
  };
  auto l = static_cast<std::uint64_t>(std::max(1.0, std::ceil(real_count - 1e-9)));
  while (!reached(l)) ++l;
  while (l > 1 && reached(l - 1)) --l;
  return {l, false, std::log2(real_count)};
}

double model_attack_min_entropy(double prediction_rate, std::size_t m, double distortion) {
  if (!(prediction_rate >= 0.5 && prediction_rate < 1.0)) throw std::domain_error("prediction rate must lie in [1/2, 1)");
  if (!(distortion >= 0.0 && distortion <= 0.5)) throw std::domain_error("distortion D must lie in [0, 1/2]");
  if (distortion == 0.0) return -static_cast<double>(m) * std::log2(prediction_rate);
  return -log2_ball_probability(1.0 - prediction_rate, m, distortion);
}

MacGuesswork mac_avg_guesswork(unsigned N, unsigned L, double p, MacMapping mapping) {
  if (L == 0) throw std::domain_error("MAC output length L must be at least 1");
  if (!(p > 0.0 && p <= 0.5)) throw std::domain_error("key bias p must lie in (0, 1/2]");
  if (mapping == MacMapping::Uniform) {
    if (p != 0.5) throw std::domain_error("biased keys are only analysed for the identity mapping");
    // log2(2^N (2^L + 1) / 2)
    return {static_cast<double>(N) + std::log2(std::exp2(static_cast<double>(L)) + 1.0) - 1.0, true};
  }
  return {static_cast<double>(N) + static_cast<double>(L) * renyi_entropy(p, 0.5), false};
}

double mac_tail_bound(unsigned N, unsigned L, double p, double alpha, MacMapping mapping) {
  if (!(alpha >= 0.0)) throw std::domain_error("deviation alpha must be non-negative");
  if (!(p > 0.0 && p <= 0.5)) throw std::domain_error("key bias p must lie in (0, 1/2]");
  double exponent = static_cast<double>(N);
  if (mapping == MacMapping::Identity) {
    exponent -= 2.0 * static_cast<double>(L) * (1.0 - renyi_entropy(p, 0.5));
  } else if (p != 0.5) {
    throw std::domain_error("biased keys are only analysed for the identity mapping");
  }
  return std::min(1.0, std::exp(-(alpha * alpha / 8.0) * std::exp2(exponent)));
}

}  // namespace pufguess
