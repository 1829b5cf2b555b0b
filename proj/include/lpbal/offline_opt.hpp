#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lpbal/instance.hpp"
#include "lpbal/norms.hpp"

namespace lpbal {

enum class OptKind { exact, lower_bound, analytic };

std::string_view to_string(OptKind kind);

struct OptResult {
  double value = 0.0;
  OptKind kind = OptKind::exact;
  std::optional<Assignment> assignment;  // exact
  std::optional<double> duality_gap;     // lower_bound
  std::string provenance;                // analytic
  std::size_t iterations = 0;            // lower_bound
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Product of the per-job option counts, saturating at SIZE_MAX.
std::size_t assignment_count(const Instance& inst);

/// Exhaustive minimum of ||sum_t A^t x^t||_p (p may be infinite). Ties go to
/// the lexicographically smallest assignment. Throws EnumerationTooLarge when
/// the number of assignments exceeds `cap`.
OptResult brute_force_opt(const Instance& inst, const PNormParams& params,
                          std::size_t cap = kDefaultEnumerationCap);

struct FrankWolfeOptions {
  std::size_t max_iters = 5000;
  double tol = 1e-4;
};

/// Certified lower bound on the integral optimum: conditional gradient over
/// the product of per-job simplices, reporting the best value minus duality
/// gap seen. Finite p only.
OptResult fractional_lower_bound(const Instance& inst, const PNormParams& params,
                                 const FrankWolfeOptions& options = {});

/// Analytic optimum when recorded for this exponent, else brute force within
/// `cap`, else the fractional lower bound.
OptResult opt_bound(const Instance& inst, const PNormParams& params,
                    std::size_t cap = kDefaultEnumerationCap);

}  // namespace lpbal
