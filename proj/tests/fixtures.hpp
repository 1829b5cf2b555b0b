#pragma once

// Small random instances whose assignment count stays within a cap, so the
// exhaustive optimum is always available.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lpbal/instance.hpp"
#include "lpbal/random.hpp"

namespace fixtures {

struct SmallInstanceShape {
  std::size_t max_m = 8;
  std::size_t max_n = 40;
  std::size_t max_k = 3;
  std::size_t cap = 1'000'000;
};

inline lpbal::Instance small_instance(std::uint64_t seed, const SmallInstanceShape& shape = {}) {
  lpbal::Rng rng(seed);
  lpbal::Instance inst;
  inst.m = 2 + static_cast<std::size_t>(rng.below(shape.max_m - 1));
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(shape.max_n));
  // half the instances use 0/1 entries, which produce many ties
  const bool binary = rng.coin();
  std::size_t count = 1;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t k = 1 + static_cast<std::size_t>(rng.below(shape.max_k));
    while (k > 1 && count * k > shape.cap) {
      --k;
    }
    count *= k;
    std::vector<std::vector<double>> cols(k, std::vector<double>(inst.m));
    for (auto& col : cols) {
      for (double& x : col) {
        x = binary ? (rng.coin() ? 1.0 : 0.0) : rng.uniform01();
      }
    }
    inst.jobs.emplace_back(std::move(cols));
  }
  return inst;
}

}  // namespace fixtures
