#include "lpbal/validators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lpbal/errors.hpp"
#include "lpbal/random.hpp"

namespace lpbal {

namespace {

void check_inputs(const std::vector<LoadVector>& vectors, const SmoothingParams& sp,
                  std::size_t trials) {
  if (vectors.empty()) {
    throw std::invalid_argument("validator: empty vector set");
  }
  if (trials < kMinValidationTrials) {
    throw std::invalid_argument("validator: at least 1000 trials required");
  }
  for (const auto& v : vectors) {
    if (v.size() != sp.m()) {
      throw std::invalid_argument("validator: vector length differs from m");
    }
    for (double x : v.values()) {
      if (x > 1.0) {
        throw OutOfRange("validator: vectors must lie in [0,1]^m");
      }
    }
  }
}

std::vector<double> mean_vector(const std::vector<LoadVector>& vectors) {
  std::vector<double> mu(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      mu[i] += v[i];
    }
  }
  for (double& x : mu) {
    x /= static_cast<double>(vectors.size());
  }
  return mu;
}

// Welford running mean / variance.
class RunningStats {
 public:
  void push(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double std_error() const {
    if (n_ < 2) {
      return 0.0;
    }
    const double var = m2_ / static_cast<double>(n_ - 1);
    return std::sqrt(var / static_cast<double>(n_));
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

ValidationRecord finish(std::string name, std::size_t trials, const RunningStats& stats,
                        double bound) {
  ValidationRecord rec;
  rec.name = std::move(name);
  rec.trials = trials;
  rec.mean = stats.mean();
  rec.std_error = stats.std_error();
  rec.bound = bound;
  rec.passed = rec.mean <= rec.bound + 3.0 * rec.std_error;
  return rec;
}

}  // namespace

ValidationRecord validate_corr_sum(const std::vector<LoadVector>& vectors, std::size_t kappa,
                                   const SmoothingParams& sp, std::size_t trials,
                                   std::uint64_t seed) {
  check_inputs(vectors, sp, trials);
  const std::size_t n = vectors.size();
  if (kappa < 1 || kappa > n) {
    throw std::invalid_argument("validate_corr_sum: kappa must lie in [1, n]");
  }
  const std::size_t m = sp.m();
  std::vector<double> mu = mean_vector(vectors);
  for (double& x : mu) {
    x *= static_cast<double>(kappa);
  }
  const double bound = std::exp(sp.eps()) * lp_norm(mu, sp.p()) + sp.radius();

  Rng rng(seed);
  RunningStats stats;
  std::vector<double> sum(m);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t idx : sample_without_replacement(n, kappa, rng)) {
      for (std::size_t i = 0; i < m; ++i) {
        sum[i] += vectors[idx][i];
      }
    }
    stats.push(lp_norm(sum, sp.p()));
  }
  return finish("corr_sum(kappa=" + std::to_string(kappa) + ")", trials, stats, bound);
}

ValidationRecord validate_break_corr(const std::vector<LoadVector>& vectors, std::size_t t,
                                     const SmoothingParams& sp, std::size_t trials,
                                     std::uint64_t seed, ZStrategy strategy) {
  check_inputs(vectors, sp, trials);
  const std::size_t n = vectors.size();
  if (t < 1 || t > n) {
    throw std::invalid_argument("validate_break_corr: t must lie in [1, n]");
  }
  const std::size_t m = sp.m();
  const double bound = std::exp(sp.eps()) * lp_norm(mean_vector(vectors), sp.p()) +
                       sp.radius() / static_cast<double>(n - (t - 1));

  const DualVector z_fixed = psi_gradient(std::vector<double>(m, 0.0), sp);
  Rng rng(seed);
  RunningStats stats;
  std::vector<double> prefix(m);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto sample = sample_without_replacement(n, t, rng);
    std::fill(prefix.begin(), prefix.end(), 0.0);
    for (std::size_t s = 0; s + 1 < t; ++s) {
      for (std::size_t i = 0; i < m; ++i) {
        prefix[i] += vectors[sample[s]][i];
      }
    }
    const LoadVector& y = vectors[sample[t - 1]];
    if (strategy == ZStrategy::psi_gradient) {
      stats.push(dot(y.values(), psi_gradient(prefix, sp).values()));
    } else {
      stats.push(dot(y.values(), z_fixed.values()));
    }
  }
  const char* tag = strategy == ZStrategy::psi_gradient ? "psi_gradient" : "fixed";
  return finish("break_corr(t=" + std::to_string(t) + ", z=" + tag + ")", trials, stats, bound);
}

std::vector<std::vector<LoadVector>> random_binary_vector_sets(std::size_t count, std::size_t m,
                                                               std::size_t min_size,
                                                               std::size_t max_size,
                                                               std::uint64_t seed) {
  if (min_size < 1 || max_size < min_size) {
    throw std::invalid_argument("random_binary_vector_sets: bad size range");
  }
  Rng rng(seed);
  std::vector<std::vector<LoadVector>> sets;
  sets.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t n = min_size + static_cast<std::size_t>(rng.below(max_size - min_size + 1));
    std::vector<LoadVector> set;
    set.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<double> v(m);
      for (double& x : v) {
        x = rng.coin() ? 1.0 : 0.0;
      }
      set.emplace_back(std::move(v));
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace lpbal
