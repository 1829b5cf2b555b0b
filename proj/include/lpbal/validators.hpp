#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lpbal/norms.hpp"

namespace lpbal {

/// Outcome of a Monte-Carlo check of an expectation inequality
/// E[X] <= bound: passes iff the empirical mean is at most bound plus three
/// standard errors.
struct ValidationRecord {
  std::string name;
  std::size_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool passed = false;
};

inline constexpr std::size_t kMinValidationTrials = 1000;

/// E||Y^1 + ... + Y^kappa||_p <= e^eps ||kappa * mean(vectors)||_p + R, with
/// the Y's drawn without replacement from `vectors` (entries in [0, 1]).
ValidationRecord validate_corr_sum(const std::vector<LoadVector>& vectors, std::size_t kappa,
                                   const SmoothingParams& sp, std::size_t trials,
                                   std::uint64_t seed);

/// How the dual vector Z in the break-correlation check depends on the prefix.
enum class ZStrategy {
  psi_gradient,  // Z = grad psi(Y^1 + ... + Y^{t-1})
  fixed,         // Z = grad psi(0), independent of the sample
};

/// E<Y^t, Z> <= e^eps ||mean(vectors)||_p + R / (n - t + 1) for 1 <= t <= n.
ValidationRecord validate_break_corr(const std::vector<LoadVector>& vectors, std::size_t t,
                                     const SmoothingParams& sp, std::size_t trials,
                                     std::uint64_t seed,
                                     ZStrategy strategy = ZStrategy::psi_gradient);

/// `count` sets of 0/1 vectors in dimension m; set sizes are drawn from
/// [min_size, max_size] and every entry is a fair coin.
std::vector<std::vector<LoadVector>> random_binary_vector_sets(std::size_t count, std::size_t m,
                                                               std::size_t min_size,
                                                               std::size_t max_size,
                                                               std::uint64_t seed);

}  // namespace lpbal
