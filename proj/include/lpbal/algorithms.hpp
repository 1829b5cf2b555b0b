#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpbal/instance.hpp"
#include "lpbal/norms.hpp"

namespace lpbal {

/// Index of the column j minimizing ||current + A_j||_p. Ties go to the
/// lowest index (strict comparison, no tolerance band).
std::size_t greedy_step(std::span<const double> current, const JobMatrix& job,
                        const PNormParams& params);

/// Same as greedy_step with psi_{eps,p} as the objective.
std::size_t smooth_greedy_step(std::span<const double> current, const JobMatrix& job,
                               const SmoothingParams& sp);

/// Online algorithm driven one job at a time. The horizon n is announced
/// upfront, which is what the midpoint restarts need.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual bool deterministic() const { return true; }
  /// Exponent of the norm the algorithm's load is measured in.
  virtual double exponent() const = 0;

  virtual void start(std::size_t m, std::size_t horizon) = 0;
  virtual std::size_t assign(const JobMatrix& job) = 0;

  /// Number of jobs handled by the first phase (Ultimate only).
  virtual std::optional<std::size_t> switch_time() const { return std::nullopt; }
};

/// Greedy on ||.||_p, optionally restarted from a zero load after job ceil(n/2).
class Greedy final : public OnlineAlgorithm {
 public:
  Greedy(PNormParams params, bool restart);

  std::string name() const override { return restart_ ? "greedy_wr" : "greedy"; }
  double exponent() const override { return params_.p(); }
  void start(std::size_t m, std::size_t horizon) override;
  std::size_t assign(const JobMatrix& job) override;

 private:
  PNormParams params_;
  bool restart_;
  std::size_t restart_after_ = 0;
  std::size_t seen_ = 0;
  std::vector<double> load_;
};

/// Greedy on psi_{eps,p}, restarted after job ceil(n/2).
class SmoothGreedy final : public OnlineAlgorithm {
 public:
  explicit SmoothGreedy(SmoothingParams sp) : sp_(sp) {}

  std::string name() const override { return "smooth_greedy"; }
  double exponent() const override { return sp_.p(); }
  void start(std::size_t m, std::size_t horizon) override;
  std::size_t assign(const JobMatrix& job) override;

 private:
  SmoothingParams sp_;
  std::size_t restart_after_ = 0;
  std::size_t seen_ = 0;
  std::vector<double> load_;
};

/// Plain greedy until the accumulated l_p load strictly exceeds the smoothing
/// radius R, then SmoothGreedy over the remaining jobs from a fresh load.
class Ultimate final : public OnlineAlgorithm {
 public:
  explicit Ultimate(SmoothingParams sp) : sp_(sp), greedy_(sp.base(), false), smooth_(sp) {}

  std::string name() const override { return "ultimate"; }
  double exponent() const override { return sp_.p(); }
  void start(std::size_t m, std::size_t horizon) override;
  std::size_t assign(const JobMatrix& job) override;
  std::optional<std::size_t> switch_time() const override;

 private:
  SmoothingParams sp_;
  Greedy greedy_;
  SmoothGreedy smooth_;
  std::size_t horizon_ = 0;
  std::size_t seen_ = 0;
  std::optional<std::size_t> switched_at_;
  std::vector<double> load_;
};

enum class AlgorithmKind { greedy, greedy_wr, smooth_greedy, ultimate };

std::string_view to_string(AlgorithmKind kind);
/// Throws std::invalid_argument for an unknown name.
AlgorithmKind parse_algorithm(std::string_view name);

/// `eps` is ignored by the two plain greedy variants; the smoothed ones need a
/// finite p.
std::unique_ptr<OnlineAlgorithm> make_algorithm(AlgorithmKind kind, const PNormParams& params,
                                                double eps);

struct RunRecord {
  std::string algorithm;
  std::string order_mode = "given";
  std::uint64_t seed = 0;
  double final_load = 0.0;  // ||load||_p at the algorithm's exponent
  double linf_load = 0.0;
  std::vector<double> load;
  double opt_bound = 0.0;
  std::string opt_kind;  // empty until an oracle fills it in
  double ratio = 0.0;    // final_load / opt_bound when opt_bound > 0
  std::optional<std::size_t> switch_time;
  Assignment assignment;

  /// Records an optimum bound and the derived ratio.
  void set_opt(double value, std::string kind);
};

RunRecord run_online(OnlineAlgorithm& algorithm, const Instance& inst);

RunRecord run_greedy(const Instance& inst, const PNormParams& params);
RunRecord run_greedy_wr(const Instance& inst, const PNormParams& params);
RunRecord run_smooth_greedy(const Instance& inst, const SmoothingParams& sp);
RunRecord run_ultimate(const Instance& inst, const SmoothingParams& sp);

/// Constant p / ln(3/2) of the greedy worst-case guarantee.
double greedy_competitive_constant(double p);

using OptOracle = std::function<double(const Instance&, const PNormParams&)>;

struct RefinedGuaranteeResult {
  bool holds = false;
  double lhs = 0.0;          // ||S^n||_p - 2^{1/p} ||S^{tau-1}||_p
  double rhs = 0.0;          // (p / ln 1.5) * OPT(suffix)
  double suffix_opt = 0.0;
  bool prefix_dominates = false;  // ||S^n||_p^p <= 2 ||S^{tau-1}||_p^p
};

/// Runs plain greedy on `inst` and checks the refined guarantee at the
/// 1-based split `tau` (1 <= tau <= n). The oracle solves the suffix
/// instance; an EnumerationTooLarge from it surfaces as OracleTooLarge.
RefinedGuaranteeResult check_refined_guarantee(const Instance& inst, std::size_t tau,
                                               const PNormParams& params,
                                               const OptOracle& opt_oracle);

}  // namespace lpbal
