#include "lpbal/olo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lpbal/errors.hpp"
#include "lpbal/random.hpp"

namespace lpbal {

DualVector olo_next_action(const OloPlayerState& state) {
  return psi_gradient(state.accumulated(), state.params());
}

OloPlayerState olo_observe(const OloPlayerState& state, const LoadVector& w) {
  if (w.size() != state.params().m()) {
    throw std::invalid_argument("olo_observe: vector length differs from m");
  }
  for (double x : w.values()) {
    if (x > 1.0) {
      throw OutOfRange("olo_observe: adversary vector must lie in [0,1]^m");
    }
  }
  OloPlayerState next = state;
  next.accumulated_.add(w.values());
  ++next.round_;
  return next;
}

RegretRecord run_olo_game(const std::vector<LoadVector>& ws, const SmoothingParams& sp) {
  RegretRecord rec;
  rec.radius = sp.radius();
  rec.eps = sp.eps();
  rec.psi_zero = psi(LoadVector(sp.m()), sp);

  const double q = sp.base().q();
  OloPlayerState state(sp);
  for (const auto& w : ws) {
    const DualVector v = olo_next_action(state);
    rec.max_action_qnorm = std::max(rec.max_action_qnorm, lp_norm(v.values(), q));
    state = olo_observe(state, w);
    rec.reward += dot(w.values(), v.values());
  }
  rec.rounds = state.round();
  rec.hindsight_opt = lp_norm(state.accumulated(), sp.base());
  rec.psi_final = psi(state.accumulated(), sp);

  const double scale = std::max(1.0, rec.hindsight_opt + rec.radius);
  rec.bound_satisfied = rec.reward >= std::exp(-sp.eps()) * (rec.hindsight_opt - rec.radius) -
                                          kDeterministicTolerance * scale;
  rec.telescoping_satisfied = std::exp(sp.eps()) * rec.reward >=
                              rec.psi_final - rec.psi_zero - kDeterministicTolerance * scale;
  return rec;
}

OloSequence parse_olo_sequence(std::string_view name) {
  if (name == "uniform") return OloSequence::uniform;
  if (name == "constant") return OloSequence::constant;
  if (name == "ones") return OloSequence::ones;
  if (name == "spikes") return OloSequence::spikes;
  throw std::invalid_argument("unknown sequence: " + std::string(name));
}

std::string_view to_string(OloSequence kind) {
  switch (kind) {
    case OloSequence::uniform:
      return "uniform";
    case OloSequence::constant:
      return "constant";
    case OloSequence::ones:
      return "ones";
    case OloSequence::spikes:
      return "spikes";
  }
  return "uniform";
}

std::vector<LoadVector> make_olo_sequence(OloSequence kind, std::size_t m, std::size_t n,
                                          std::uint64_t seed) {
  if (m == 0) {
    throw std::invalid_argument("make_olo_sequence: m must be positive");
  }
  Rng rng(seed);
  std::vector<LoadVector> ws;
  ws.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> w(m, 0.0);
    switch (kind) {
      case OloSequence::uniform:
        for (double& x : w) {
          x = rng.uniform01();
        }
        break;
      case OloSequence::constant:
        w[0] = 1.0;
        break;
      case OloSequence::ones:
        std::fill(w.begin(), w.end(), 1.0);
        break;
      case OloSequence::spikes:
        w[t % m] = 1.0;
        break;
    }
    ws.emplace_back(std::move(w));
  }
  return ws;
}

double hindsight_opt(const std::vector<LoadVector>& ws, const PNormParams& params) {
  LoadVector total(params.m());
  for (const auto& w : ws) {
    total.add(w.values());
  }
  return lp_norm(total, params);
}

}  // namespace lpbal
