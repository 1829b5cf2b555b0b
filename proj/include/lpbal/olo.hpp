#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lpbal/norms.hpp"

namespace lpbal {

/// State of the smoothed-baseline-gradient player for the l_q^+ online linear
/// optimization game. Values are immutable in, new state out, so a game can be
/// forked at any round.
class OloPlayerState {
 public:
  explicit OloPlayerState(SmoothingParams sp) : sp_(sp), accumulated_(sp.m()) {}

  const SmoothingParams& params() const noexcept { return sp_; }
  /// Running sum w^1 + ... + w^{t-1} of the observed adversary vectors.
  const LoadVector& accumulated() const noexcept { return accumulated_; }
  std::size_t round() const noexcept { return round_; }

 private:
  friend OloPlayerState olo_observe(const OloPlayerState&, const LoadVector&);

  SmoothingParams sp_;
  LoadVector accumulated_;
  std::size_t round_ = 0;
};

/// The vector played next: the gradient of psi at the accumulated sum.
DualVector olo_next_action(const OloPlayerState& state);

/// Throws OutOfRange unless every entry of w lies in [0, 1].
OloPlayerState olo_observe(const OloPlayerState& state, const LoadVector& w);

struct RegretRecord {
  double reward = 0.0;         // sum_t <w^t, v^t>
  double hindsight_opt = 0.0;  // ||sum_t w^t||_p
  double radius = 0.0;
  double eps = 0.0;
  bool bound_satisfied = false;  // reward >= e^{-eps}(hindsight_opt - radius)
  // Telescoping form: e^{eps} reward >= psi(s^n) - psi(0).
  double psi_final = 0.0;
  double psi_zero = 0.0;
  bool telescoping_satisfied = false;
  std::size_t rounds = 0;
  // Largest ||v^t||_q observed over the game.
  double max_action_qnorm = 0.0;
};

inline constexpr double kDeterministicTolerance = 1e-9;

RegretRecord run_olo_game(const std::vector<LoadVector>& ws, const SmoothingParams& sp);

/// Adversary sequences used by the regret benchmark.
enum class OloSequence {
  uniform,   // i.i.d. uniform entries in [0, 1]
  constant,  // e_1 every round
  ones,      // the all-ones vector every round
  spikes,    // e_{t mod m}: a unit spike cycling through the coordinates
};

/// Throws std::invalid_argument for an unknown name.
OloSequence parse_olo_sequence(std::string_view name);
std::string_view to_string(OloSequence kind);

std::vector<LoadVector> make_olo_sequence(OloSequence kind, std::size_t m, std::size_t n,
                                          std::uint64_t seed);

/// ||sum_t w^t||_p, the best fixed action's reward by norm duality.
double hindsight_opt(const std::vector<LoadVector>& ws, const PNormParams& params);

}  // namespace lpbal
