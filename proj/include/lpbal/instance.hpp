#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpbal {

/// One job: an m x k matrix whose column j is the load vector incurred when
/// the job is processed with option j. Entries lie in [0, 1].
class JobMatrix {
 public:
  /// `columns[j]` is option j; every column must have the same length m >= 1
  /// and there must be at least one column. Throws RangeError for entries
  /// outside [0, 1] and std::invalid_argument for shape errors.
  explicit JobMatrix(std::vector<std::vector<double>> columns);

  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  double at(std::size_t machine, std::size_t option) const { return data_[option * m_ + machine]; }
  std::span<const double> column(std::size_t option) const {
    return std::span<const double>(data_).subspan(option * m_, m_);
  }

  friend bool operator==(const JobMatrix&, const JobMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t k_;
  std::vector<double> data_;  // column-major
};

/// Analytic optimum recorded by a generator, valid for one exponent only.
struct AnalyticOpt {
  double value = 0.0;
  double p = 0.0;  // exponent the value refers to; may be +infinity
  std::string provenance;

  friend bool operator==(const AnalyticOpt&, const AnalyticOpt&) = default;
};

struct Instance {
  std::size_t m = 1;
  std::vector<JobMatrix> jobs;
  std::optional<AnalyticOpt> analytic_opt;

  std::size_t n() const noexcept { return jobs.size(); }

  /// Throws std::invalid_argument if some job has a different m, or the
  /// recorded optimum is negative.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One option index per job.
struct Assignment {
  std::vector<std::size_t> choices;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Total load vector of an assignment; throws std::invalid_argument on an
/// invalid index or length.
std::vector<double> assignment_load(const Instance& inst, const Assignment& a);

/// Same jobs in the order given by `order` (a permutation of 0..n-1).
Instance permuted(const Instance& inst, std::span<const std::size_t> order);

/// Jobs [first, last) of the instance, without the analytic optimum.
Instance slice(const Instance& inst, std::size_t first, std::size_t last);

}  // namespace lpbal
