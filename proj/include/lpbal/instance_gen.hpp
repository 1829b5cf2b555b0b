#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpbal/algorithms.hpp"
#include "lpbal/instance.hpp"

namespace lpbal {

/// m jobs; job i offers the all-(1 - eps) column and the unit vector e_i.
/// The recorded optimum is 1 in the l_infinity sense.
Instance gen_example1(std::size_t m, double eps);

/// The d vectors of length m = 2^d obtained as the columns of the matrix whose
/// rows list all d-bit strings in increasing binary order (row 0 = 00..0).
struct WalshSystem {
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<std::vector<double>> vectors;  // vectors[i] is v^{i+1}

  std::vector<double> complement(std::size_t i) const;

  /// Number of coordinates where the chosen vectors are all 1. `members`
  /// lists 0-based vector indices; `complemented[j]` selects (v^i)^c for
  /// members[j].
  std::size_t intersection_count(const std::vector<std::size_t>& members,
                                 const std::vector<bool>& complemented) const;
};

/// 1 <= d <= 20. For d <= 6 the intersection property is checked
/// exhaustively on construction (std::logic_error on failure).
WalshSystem walsh_vectors(std::size_t d);

/// Random-order lower-bound instance on m = 2^p machines (p even, 2..20).
/// For each i < p/2: one job with the single column u^i (v^i or its
/// complement, by a fair coin from `coin_seed`) followed by one job with the
/// two columns {v^i, (v^i)^c}. Analytic optimum p m^{1/p} / 2.
Instance gen_walsh_instance(std::size_t p, std::uint64_t coin_seed);

struct AdversaryRound {
  std::vector<std::size_t> active_before;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> deactivated;  // one per pair
  std::vector<double> round_load;        // per machine, this round only
};

struct AdversaryTranscript {
  std::size_t p = 0;
  std::size_t copies = 0;  // M
  std::size_t m = 0;
  std::vector<AdversaryRound> rounds;
  std::vector<std::size_t> final_active;
  Instance instance;
  Assignment algorithm_assignment;
  std::vector<double> algorithm_load;
  double algorithm_norm = 0.0;
  double opt_upper = 0.0;  // M m^{1/p}
  /// Round-spreading schedule: every pair's jobs go to its deactivated member.
  Assignment witness;
  std::vector<double> witness_load;
  double witness_norm = 0.0;
};

/// Adaptive worst-case adversary on m = 2^{p+1} machines against a
/// deterministic online algorithm. Round i pairs up the active machines in
/// ascending order, issues `copies` jobs {e_a, e_b} per pair, then
/// deactivates the member that received less load during the round (ties
/// deactivate the lower index). Throws NondeterministicAlgorithm for
/// randomized algorithms.
AdversaryTranscript gen_adversarial_wc(OnlineAlgorithm& algorithm, std::size_t copies,
                                       std::size_t p);

/// Lower bound p M m^{1/p} / 2^{2 + 1/p} on the adversary's
/// instance.
double adversary_lower_bound(std::size_t p, std::size_t copies);

struct EntryDistribution {
  enum class Kind { uniform, bernoulli, sparse };
  Kind kind = Kind::uniform;
  double rho = 0.5;         // bernoulli
  std::size_t support = 1;  // sparse: nonzeros per column

  /// "uniform", "bernoulli:<rho>" or "sparse:<s>".
  static EntryDistribution parse(std::string_view text);
  std::string to_string() const;
};

/// n jobs with k options each on m machines. Same seed, same instance.
Instance gen_random(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed,
                    const EntryDistribution& dist = {});

}  // namespace lpbal
