#include "lpbal/instance.hpp"

#include <stdexcept>
#include <string>

#include "lpbal/errors.hpp"

namespace lpbal {

JobMatrix::JobMatrix(std::vector<std::vector<double>> columns) : m_(0), k_(columns.size()) {
  if (columns.empty()) {
    throw std::invalid_argument("JobMatrix: at least one option required");
  }
  m_ = columns.front().size();
  if (m_ == 0) {
    throw std::invalid_argument("JobMatrix: m must be >= 1");
  }
  data_.reserve(m_ * k_);
  for (const auto& col : columns) {
    if (col.size() != m_) {
      throw std::invalid_argument("JobMatrix: ragged columns");
    }
    for (double x : col) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw RangeError("JobMatrix: entry " + std::to_string(x) + " outside [0,1]");
      }
      data_.push_back(x);
    }
  }
}

void Instance::validate() const {
  if (m < 1) {
    throw std::invalid_argument("Instance: m must be >= 1");
  }
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    if (jobs[t].m() != m) {
      throw std::invalid_argument("Instance: job " + std::to_string(t) + " has m = " +
                                  std::to_string(jobs[t].m()) + ", expected " +
                                  std::to_string(m));
    }
  }
  if (analytic_opt && !(analytic_opt->value >= 0.0)) {
    throw std::invalid_argument("Instance: analytic_opt must be nonnegative");
  }
}

std::vector<double> assignment_load(const Instance& inst, const Assignment& a) {
  if (a.choices.size() != inst.n()) {
    throw std::invalid_argument("assignment_load: assignment length differs from n");
  }
  std::vector<double> load(inst.m, 0.0);
  for (std::size_t t = 0; t < inst.n(); ++t) {
    const auto& job = inst.jobs[t];
    if (a.choices[t] >= job.k()) {
      throw std::invalid_argument("assignment_load: option index out of range at job " +
                                  std::to_string(t));
    }
    const auto col = job.column(a.choices[t]);
    for (std::size_t i = 0; i < inst.m; ++i) {
      load[i] += col[i];
    }
  }
  return load;
}

Instance permuted(const Instance& inst, std::span<const std::size_t> order) {
  if (order.size() != inst.n()) {
    throw std::invalid_argument("permuted: order length differs from n");
  }
  Instance out{inst.m, {}, inst.analytic_opt};
  out.jobs.reserve(inst.n());
  for (std::size_t idx : order) {
    out.jobs.push_back(inst.jobs.at(idx));
  }
  return out;
}

Instance slice(const Instance& inst, std::size_t first, std::size_t last) {
  if (first > last || last > inst.n()) {
    throw std::invalid_argument("slice: bad range");
  }
  Instance out{inst.m, {}, std::nullopt};
  out.jobs.assign(inst.jobs.begin() + static_cast<std::ptrdiff_t>(first),
                  inst.jobs.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

}  // namespace lpbal
