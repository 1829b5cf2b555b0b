#include "lpbal/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lpbal/errors.hpp"

namespace lpbal {

namespace {

template <class Objective>
std::size_t argmin_column(const JobMatrix& job, Objective objective) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < job.k(); ++j) {
    const double value = objective(job.column(j));
    if (value < best_value) {
      best_value = value;
      best = j;
    }
  }
  return best;
}

void accumulate(std::vector<double>& load, std::span<const double> column) {
  for (std::size_t i = 0; i < load.size(); ++i) {
    load[i] += column[i];
  }
}

std::size_t first_phase_length(std::size_t horizon) { return (horizon + 1) / 2; }

}  // namespace

std::size_t greedy_step(std::span<const double> current, const JobMatrix& job,
                        const PNormParams& params) {
  if (current.size() != job.m()) {
    throw std::invalid_argument("greedy_step: load length differs from job m");
  }
  const double p = params.p();
  return argmin_column(job, [&](std::span<const double> col) {
    return lp_norm_of_sum(current, col, p);
  });
}

std::size_t smooth_greedy_step(std::span<const double> current, const JobMatrix& job,
                               const SmoothingParams& sp) {
  if (current.size() != job.m()) {
    throw std::invalid_argument("smooth_greedy_step: load length differs from job m");
  }
  return argmin_column(job, [&](std::span<const double> col) {
    return psi_of_sum(current, col, sp);
  });
}

Greedy::Greedy(PNormParams params, bool restart) : params_(params), restart_(restart) {}

void Greedy::start(std::size_t m, std::size_t horizon) {
  restart_after_ = restart_ ? first_phase_length(horizon) : std::numeric_limits<std::size_t>::max();
  seen_ = 0;
  load_.assign(m, 0.0);
}

std::size_t Greedy::assign(const JobMatrix& job) {
  if (seen_ == restart_after_) {
    std::fill(load_.begin(), load_.end(), 0.0);
  }
  const std::size_t j = greedy_step(load_, job, params_);
  accumulate(load_, job.column(j));
  ++seen_;
  return j;
}

void SmoothGreedy::start(std::size_t m, std::size_t horizon) {
  if (m != sp_.m()) {
    throw std::invalid_argument("SmoothGreedy: instance m differs from smoothing m");
  }
  restart_after_ = first_phase_length(horizon);
  seen_ = 0;
  load_.assign(m, 0.0);
}

std::size_t SmoothGreedy::assign(const JobMatrix& job) {
  if (seen_ == restart_after_) {
    std::fill(load_.begin(), load_.end(), 0.0);
  }
  const std::size_t j = smooth_greedy_step(load_, job, sp_);
  accumulate(load_, job.column(j));
  ++seen_;
  return j;
}

void Ultimate::start(std::size_t m, std::size_t horizon) {
  if (m != sp_.m()) {
    throw std::invalid_argument("Ultimate: instance m differs from smoothing m");
  }
  horizon_ = horizon;
  seen_ = 0;
  switched_at_.reset();
  load_.assign(m, 0.0);
  greedy_.start(m, horizon);
}

std::size_t Ultimate::assign(const JobMatrix& job) {
  ++seen_;
  if (switched_at_) {
    return smooth_.assign(job);
  }
  const std::size_t j = greedy_.assign(job);
  accumulate(load_, job.column(j));
  if (lp_norm(load_, sp_.p()) > sp_.radius()) {
    switched_at_ = seen_;
    smooth_.start(load_.size(), horizon_ > seen_ ? horizon_ - seen_ : 0);
  }
  return j;
}

std::optional<std::size_t> Ultimate::switch_time() const {
  // A threshold that is never crossed reports the full horizon.
  return switched_at_ ? switched_at_ : std::optional<std::size_t>(horizon_);
}

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::greedy:
      return "greedy";
    case AlgorithmKind::greedy_wr:
      return "greedy_wr";
    case AlgorithmKind::smooth_greedy:
      return "smooth_greedy";
    case AlgorithmKind::ultimate:
      return "ultimate";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view name) {
  for (auto kind : {AlgorithmKind::greedy, AlgorithmKind::greedy_wr,
                    AlgorithmKind::smooth_greedy, AlgorithmKind::ultimate}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(AlgorithmKind kind, const PNormParams& params,
                                                double eps) {
  switch (kind) {
    case AlgorithmKind::greedy:
      return std::make_unique<Greedy>(params, false);
    case AlgorithmKind::greedy_wr:
      return std::make_unique<Greedy>(params, true);
    case AlgorithmKind::smooth_greedy:
      return std::make_unique<SmoothGreedy>(SmoothingParams(params, eps));
    case AlgorithmKind::ultimate:
      return std::make_unique<Ultimate>(SmoothingParams(params, eps));
  }
  throw std::invalid_argument("make_algorithm: bad kind");
}

void RunRecord::set_opt(double value, std::string kind) {
  opt_bound = value;
  opt_kind = std::move(kind);
  ratio = value > 0.0 ? final_load / value : 0.0;
}

RunRecord run_online(OnlineAlgorithm& algorithm, const Instance& inst) {
  RunRecord rec;
  rec.algorithm = algorithm.name();
  rec.load.assign(inst.m, 0.0);
  rec.assignment.choices.reserve(inst.n());
  algorithm.start(inst.m, inst.n());
  for (const auto& job : inst.jobs) {
    const std::size_t j = algorithm.assign(job);
    rec.assignment.choices.push_back(j);
    accumulate(rec.load, job.column(j));
  }
  rec.final_load = lp_norm(rec.load, algorithm.exponent());
  rec.linf_load = lp_norm(rec.load, kInfinity);
  rec.switch_time = algorithm.switch_time();
  return rec;
}

RunRecord run_greedy(const Instance& inst, const PNormParams& params) {
  Greedy alg(params, false);
  return run_online(alg, inst);
}

RunRecord run_greedy_wr(const Instance& inst, const PNormParams& params) {
  Greedy alg(params, true);
  return run_online(alg, inst);
}

RunRecord run_smooth_greedy(const Instance& inst, const SmoothingParams& sp) {
  SmoothGreedy alg(sp);
  return run_online(alg, inst);
}

RunRecord run_ultimate(const Instance& inst, const SmoothingParams& sp) {
  Ultimate alg(sp);
  return run_online(alg, inst);
}

double greedy_competitive_constant(double p) { return p / std::log(1.5); }

RefinedGuaranteeResult check_refined_guarantee(const Instance& inst, std::size_t tau,
                                               const PNormParams& params,
                                               const OptOracle& opt_oracle) {
  if (params.is_infinite()) {
    throw std::domain_error("check_refined_guarantee: p must be finite");
  }
  if (tau < 1 || tau > inst.n()) {
    throw std::invalid_argument("check_refined_guarantee: tau must lie in [1, n]");
  }
  const double p = params.p();
  const RunRecord run = run_greedy(inst, params);

  std::vector<double> prefix(inst.m, 0.0);
  for (std::size_t t = 0; t + 1 < tau; ++t) {
    accumulate(prefix, inst.jobs[t].column(run.assignment.choices[t]));
  }
  const double prefix_norm = lp_norm(prefix, p);
  const double two_root = std::pow(2.0, 1.0 / p);

  RefinedGuaranteeResult res;
  res.lhs = run.final_load - two_root * prefix_norm;
  res.prefix_dominates = run.final_load <= two_root * prefix_norm;
  try {
    res.suffix_opt = opt_oracle(slice(inst, tau - 1, inst.n()), params);
  } catch (const EnumerationTooLarge& e) {
    throw OracleTooLarge(std::string("check_refined_guarantee: ") + e.what());
  }
  res.rhs = greedy_competitive_constant(p) * res.suffix_opt;
  res.holds = res.prefix_dominates || res.lhs <= res.rhs + 1e-9;
  return res;
}

}  // namespace lpbal
