#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pufguess/rng.hpp"

namespace pufguess::cli {

struct ValidationLimits {
  std::size_t distributions = 100;  ///< random pmfs for the sandwich / optimality checks
  std::size_t max_support_bits = 10;
  std::size_t min_m = 16;  ///< convergence sweep
  std::size_t max_m = 20;
  std::size_t conditional_m = 12;
  std::size_t distortion_m = 16;
  double tolerance_scale = 1.0;  ///< multiplies every "within x" tolerance
  std::set<std::string> groups;  ///< empty = all groups
  Seed seed{1};
};

struct CheckResult {
  std::string group;
  std::string name;
  bool passed;
  double observed;
  double bound;
  std::string detail;
};

/// Groups: sandwich, optimality, convergence, conditional, distortion, failure.
const std::vector<std::string>& validation_groups();

std::vector<CheckResult> run_oracle_validation(const ValidationLimits& limits);

}  // namespace pufguess::cli
