#include "lpbal/offline_opt.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lpbal/errors.hpp"

namespace lpbal {

namespace {

struct BranchBest {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> choices;
};

// Depth-first enumeration in lexicographic order of the jobs from `first`
// onward, starting from `base` load. Keeps the first strict minimum.
BranchBest enumerate_from(const Instance& inst, double p, std::size_t first,
                          const std::vector<double>& base, std::vector<std::size_t> prefix) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m;
  BranchBest best;
  if (first == n) {
    best.value = lp_norm(base, p);
    best.choices = std::move(prefix);
    return best;
  }
  // partial[d] is the load before job first + d
  std::vector<std::vector<double>> partial(n - first + 1, std::vector<double>(m));
  partial[0] = base;
  std::vector<std::size_t> choice(n - first, 0);
  std::size_t depth = 0;
  auto descend = [&](std::size_t d) {
    const auto col = inst.jobs[first + d].column(choice[d]);
    for (std::size_t i = 0; i < m; ++i) {
      partial[d + 1][i] = partial[d][i] + col[i];
    }
  };
  descend(0);
  while (true) {
    if (depth + 1 < n - first) {
      ++depth;
      choice[depth] = 0;
      descend(depth);
      continue;
    }
    const double value = lp_norm(partial[depth + 1], p);
    if (value < best.value) {
      best.value = value;
      best.choices = prefix;
      best.choices.insert(best.choices.end(), choice.begin(), choice.end());
    }
    // advance to the next leaf in lexicographic order
    while (true) {
      if (choice[depth] + 1 < inst.jobs[first + depth].k()) {
        ++choice[depth];
        descend(depth);
        break;
      }
      if (depth == 0) {
        return best;
      }
      --depth;
    }
  }
}

// Exponent used to bound l_infinity from below: ||x||_inf >= m^{-1/p} ||x||_p.
double surrogate_exponent(std::size_t m) {
  return std::max(2.0, 8.0 * std::log(static_cast<double>(m)));
}

// Exact minimizer of the convex map t -> ||load + t d||_p over [0, 1], by
// bisection on the directional derivative.
double line_search(const std::vector<double>& load, const std::vector<double>& dir, double p) {
  std::vector<double> point(load.size());
  auto derivative = [&](double t) {
    for (std::size_t i = 0; i < load.size(); ++i) {
      point[i] = std::max(0.0, load[i] + t * dir[i]);
    }
    const double norm = lp_norm(point, p);
    if (norm == 0.0) {
      return 0.0;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < load.size(); ++i) {
      if (point[i] > 0.0) {
        s += std::pow(point[i] / norm, p - 1.0) * dir[i];
      }
    }
    return s;
  };
  if (derivative(1.0) <= 0.0) {
    return 1.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (derivative(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

}  // namespace

std::string_view to_string(OptKind kind) {
  switch (kind) {
    case OptKind::exact:
      return "exact";
    case OptKind::lower_bound:
      return "lower_bound";
    case OptKind::analytic:
      return "analytic";
  }
  return "unknown";
}

std::size_t assignment_count(const Instance& inst) {
  std::size_t total = 1;
  for (const auto& job : inst.jobs) {
    if (total > std::numeric_limits<std::size_t>::max() / job.k()) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= job.k();
  }
  return total;
}

OptResult brute_force_opt(const Instance& inst, const PNormParams& params, std::size_t cap) {
  inst.validate();
  const std::size_t count = assignment_count(inst);
  if (count > cap) {
    throw EnumerationTooLarge("brute_force_opt: " + std::to_string(count) +
                              " assignments exceed cap " + std::to_string(cap));
  }
  const double p = params.p();
  const std::vector<double> zero(inst.m, 0.0);

  BranchBest best;
  const bool parallel = inst.n() > 1 && count >= 100'000 && std::thread::hardware_concurrency() > 1;
  if (!parallel) {
    best = enumerate_from(inst, p, 0, zero, {});
  } else {
    // One task per option of the first job; reduced in option order so the
    // lexicographic tie-break matches the sequential scan.
    std::vector<std::future<BranchBest>> tasks;
    const JobMatrix& job0 = inst.jobs.front();
    for (std::size_t j = 0; j < job0.k(); ++j) {
      std::vector<double> base(inst.m);
      const auto col = job0.column(j);
      for (std::size_t i = 0; i < inst.m; ++i) {
        base[i] = zero[i] + col[i];
      }
      tasks.push_back(std::async(std::launch::async, [&inst, p, j, base = std::move(base)] {
        return enumerate_from(inst, p, 1, base, {j});
      }));
    }
    for (auto& task : tasks) {
      BranchBest b = task.get();
      if (b.value < best.value) {
        best = std::move(b);
      }
    }
  }
  OptResult res;
  res.kind = OptKind::exact;
  res.value = best.value;
  res.assignment = Assignment{std::move(best.choices)};
  return res;
}

OptResult fractional_lower_bound(const Instance& inst, const PNormParams& params,
                                 const FrankWolfeOptions& options) {
  inst.validate();
  const std::size_t m = inst.m;
  if (params.is_infinite()) {
    const double p = surrogate_exponent(m);
    OptResult res = fractional_lower_bound(inst, PNormParams(p, m), options);
    const double shrink = std::pow(static_cast<double>(m), -1.0 / p);
    res.value *= shrink;
    res.provenance = "l_inf bounded via l_p with p = " + std::to_string(p);
    return res;
  }
  const double p = params.p();

  OptResult res;
  res.kind = OptKind::lower_bound;
  res.value = 0.0;
  res.duality_gap = 0.0;

  // Start from the uniform fractional assignment.
  std::vector<double> load(m, 0.0);
  for (const auto& job : inst.jobs) {
    const double w = 1.0 / static_cast<double>(job.k());
    for (std::size_t j = 0; j < job.k(); ++j) {
      const auto col = job.column(j);
      for (std::size_t i = 0; i < m; ++i) {
        load[i] += w * col[i];
      }
    }
  }

  std::vector<double> grad(m);
  std::vector<double> vertex(m);
  std::vector<double> dir(m);
  for (std::size_t it = 0; it < options.max_iters; ++it) {
    res.iterations = it + 1;
    const double value = lp_norm(load, p);
    if (value == 0.0) {
      // zero is attained, so the optimum is zero
      res.value = 0.0;
      res.duality_gap = 0.0;
      return res;
    }
    for (std::size_t i = 0; i < m; ++i) {
      grad[i] = load[i] > 0.0 ? std::pow(load[i] / value, p - 1.0) : 0.0;
    }
    // Linear minimization: per job, the column with the smallest <grad, col>.
    std::fill(vertex.begin(), vertex.end(), 0.0);
    for (const auto& job : inst.jobs) {
      std::size_t best = 0;
      double best_value = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < job.k(); ++j) {
        const double c = dot(grad, job.column(j));
        if (c < best_value) {
          best_value = c;
          best = j;
        }
      }
      const auto col = job.column(best);
      for (std::size_t i = 0; i < m; ++i) {
        vertex[i] += col[i];
      }
    }
    // ||grad||_q = 1, so <grad, L(x)> <= ||L(x)||_p for every feasible x and
    // the minimum of the linear model is a valid lower bound.
    const double bound = dot(grad, vertex);
    const double gap = value - bound;
    if (bound > res.value) {
      res.value = bound;
      res.duality_gap = gap;
    }
    if (gap <= options.tol * value) {
      break;
    }
    for (std::size_t i = 0; i < m; ++i) {
      dir[i] = vertex[i] - load[i];
    }
    const double step = line_search(load, dir, p);
    if (step == 0.0) {
      break;
    }
    for (std::size_t i = 0; i < m; ++i) {
      load[i] = std::max(0.0, load[i] + step * dir[i]);
    }
  }
  return res;
}

OptResult opt_bound(const Instance& inst, const PNormParams& params, std::size_t cap) {
  if (inst.analytic_opt && inst.analytic_opt->p == params.p()) {
    OptResult res;
    res.kind = OptKind::analytic;
    res.value = inst.analytic_opt->value;
    res.provenance = inst.analytic_opt->provenance;
    return res;
  }
  if (assignment_count(inst) <= cap) {
    return brute_force_opt(inst, params, cap);
  }
  return fractional_lower_bound(inst, params);
}

}  // namespace lpbal
