#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpbal/algorithms.hpp"
#include "lpbal/instance.hpp"
#include "lpbal/offline_opt.hpp"

namespace lpbal {

/// Generator description such as "walsh:p=4,seed=1", "example1:m=3,eps=0.5"
/// or "random:m=4,k=2,n=10,seed=7,dist=bernoulli:0.5".
struct GeneratorSpec {
  std::string family;
  std::map<std::string, std::string> args;

  static GeneratorSpec parse(const std::string& text);
  std::string to_string() const;

  /// Builds the instance. For "walsh", `coin_seed` overrides the seed argument.
  Instance generate(std::optional<std::uint64_t> coin_seed = std::nullopt) const;
};

enum class OrderMode { given, random };
enum class OptMode { automatic, analytic, brute, fractional };
enum class ReportFormat { csv, json };

OptMode parse_opt_mode(const std::string& text);
std::string to_string(OptMode mode);
std::string to_string(OrderMode mode);

struct ExperimentConfig {
  std::optional<std::filesystem::path> instance_file;
  std::optional<GeneratorSpec> generator;
  std::optional<Instance> instance;  // in-memory source, for library callers
  std::vector<AlgorithmKind> algorithms;
  double p = 2.0;  // may be +infinity; then the algorithms run at effective_p
  double eps = 0.5;
  OrderMode order = OrderMode::given;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  OptMode opt_mode = OptMode::automatic;
  std::size_t cap = kDefaultEnumerationCap;
  /// Redraw the coins of a "walsh" generator on every random-order trial.
  bool resample_generator = true;
};

/// Checks the config's invariants; throws std::invalid_argument.
void validate(const ExperimentConfig& cfg);

struct BoundCheck {
  std::string name;
  double value = 0.0;
  bool satisfied = false;
};

struct ReportRow {
  std::size_t trial = 0;
  RunRecord run;
  std::optional<BoundCheck> worst_case;
};

struct AlgorithmAggregate {
  std::string algorithm;
  std::size_t trials = 0;
  double mean_load = 0.0;
  double std_load = 0.0;  // sample standard deviation
  double std_error = 0.0;
  double max_load = 0.0;
  double mean_ratio = 0.0;
  double mean_linf_load = 0.0;
  std::optional<BoundCheck> random_order;
  bool worst_case_satisfied = true;
};

struct ExperimentReport {
  ExperimentConfig config;
  double p_run = 2.0;
  double radius = 0.0;
  std::vector<ReportRow> rows;
  std::vector<AlgorithmAggregate> aggregates;

  bool all_bounds_satisfied() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Aggregates recomputed from rows in trial order; run_experiment uses this.
std::vector<AlgorithmAggregate> aggregate_rows(const std::vector<ReportRow>& rows,
                                               const std::vector<AlgorithmKind>& algorithms);

/// Explicit-constant worst-case bound for one run, if one exists for the
/// algorithm. `opt` must be exact or analytic.
std::optional<BoundCheck> worst_case_bound(AlgorithmKind kind, double p, std::size_t m,
                                           double eps, double opt);
/// Random-order expectation bound, if one exists for the algorithm.
std::optional<double> random_order_bound(AlgorithmKind kind, double p, std::size_t m,
                                         double eps, double opt, std::string* name = nullptr);

inline constexpr const char* kCsvHeader =
    "trial,algorithm,order,seed,load,linf_load,opt_bound,opt_kind,ratio,switch_time";

void write_csv(std::ostream& os, const ExperimentReport& report);
void write_json(std::ostream& os, const ExperimentReport& report);
/// Throws IoError when `path` cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path);

/// Rows and aggregates of a JSON report (config fields are not restored).
ExperimentReport report_from_json(const std::string& text);

/// One "<algorithm>.dat" file per algorithm with "trial load" lines.
void write_plot_series(const ExperimentReport& report, const std::filesystem::path& dir);

struct SweepPoint {
  double eps = 0.0;
  ExperimentReport report;
};

std::vector<SweepPoint> run_eps_sweep(const ExperimentConfig& cfg,
                                      const std::vector<double>& eps_values);
/// One "<algorithm>_eps.dat" file per algorithm with "eps mean_load" lines.
void write_sweep_series(const std::vector<SweepPoint>& sweep, const std::filesystem::path& dir);

/// Arrival order used by random-order trial `trial`: Fisher-Yates driven by
/// an Rng seeded with master_seed + trial.
std::vector<std::size_t> trial_order(std::size_t n, std::uint64_t master_seed, std::size_t trial);

/// Pearson statistic of the orders produced by the trial permutation sampler
/// over all n! orders of n items (n <= 8).
double permutation_chi_square(std::size_t n, std::size_t trials, std::uint64_t master_seed);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace lpbal
