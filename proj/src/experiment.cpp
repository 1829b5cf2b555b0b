#include "lpbal/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "lpbal/errors.hpp"
#include "lpbal/instance_gen.hpp"
#include "lpbal/instance_io.hpp"
#include "lpbal/random.hpp"

namespace lpbal {

namespace {

using nlohmann::json;

constexpr double kDeterministicTol = 1e-9;

std::size_t parse_size(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("generator: bad integer for '" + key + "': " + text);
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "INF") {
    return kInfinity;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("generator: bad number for '" + key + "': " + text);
  }
  return value;
}

const std::string& require(const GeneratorSpec& spec, const std::string& key) {
  const auto it = spec.args.find(key);
  if (it == spec.args.end()) {
    throw std::invalid_argument("generator '" + spec.family + "' needs '" + key + "'");
  }
  return it->second;
}

std::string arg_or(const GeneratorSpec& spec, const std::string& key, std::string fallback) {
  const auto it = spec.args.find(key);
  return it == spec.args.end() ? fallback : it->second;
}

struct TrialResult {
  std::vector<ReportRow> rows;
};

bool bound_kind_usable(OptKind kind) { return kind == OptKind::exact || kind == OptKind::analytic; }

OptResult compute_opt(const Instance& inst, const PNormParams& params, const ExperimentConfig& cfg) {
  switch (cfg.opt_mode) {
    case OptMode::automatic:
      return opt_bound(inst, params, cfg.cap);
    case OptMode::analytic:
      if (!inst.analytic_opt || inst.analytic_opt->p != params.p()) {
        throw std::invalid_argument("opt mode 'analytic': instance records no optimum for this p");
      }
      return opt_bound(inst, params, cfg.cap);
    case OptMode::brute:
      return brute_force_opt(inst, params, cfg.cap);
    case OptMode::fractional:
      return fractional_lower_bound(inst, params);
  }
  throw std::invalid_argument("bad opt mode");
}

// Runs `body(i)` for i in [0, count) on a few worker threads. Results are
// stored by index by the caller, so the outcome does not depend on
// scheduling. The exception of the lowest failing index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back(work);
  }
  for (auto& t : threads) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

json bound_to_json(const std::optional<BoundCheck>& b) {
  if (!b) {
    return nullptr;
  }
  return json{{"name", b->name}, {"value", b->value}, {"satisfied", b->satisfied}};
}

std::optional<BoundCheck> bound_from_json(const json& j) {
  if (j.is_null()) {
    return std::nullopt;
  }
  BoundCheck b;
  b.name = j.at("name").get<std::string>();
  b.value = j.at("value").get<double>();
  b.satisfied = j.at("satisfied").get<bool>();
  return b;
}

json real_to_json(double x) {
  if (std::isinf(x)) {
    return "inf";
  }
  return x;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// Generator specs

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  spec.family = text.substr(0, colon);
  if (spec.family.empty()) {
    throw std::invalid_argument("generator: missing family in '" + text + "'");
  }
  if (colon == std::string::npos) {
    return spec;
  }
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) {
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("generator: expected key=value, got '" + item + "'");
    }
    spec.args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::string out = family;
  char sep = ':';
  for (const auto& [key, value] : args) {
    out += sep;
    out += key + "=" + value;
    sep = ',';
  }
  return out;
}

Instance GeneratorSpec::generate(std::optional<std::uint64_t> coin_seed) const {
  if (family == "walsh") {
    const std::size_t p = parse_size("p", require(*this, "p"));
    const std::uint64_t seed =
        coin_seed ? *coin_seed : parse_size("seed", arg_or(*this, "seed", "0"));
    return gen_walsh_instance(p, seed);
  }
  if (family == "example1") {
    return gen_example1(parse_size("m", require(*this, "m")),
                        parse_real("eps", require(*this, "eps")));
  }
  if (family == "random") {
    return gen_random(parse_size("m", require(*this, "m")), parse_size("k", require(*this, "k")),
                      parse_size("n", require(*this, "n")),
                      parse_size("seed", arg_or(*this, "seed", "0")),
                      EntryDistribution::parse(arg_or(*this, "dist", "uniform")));
  }
  if (family == "adversary") {
    const std::size_t p = parse_size("p", require(*this, "p"));
    const std::size_t copies = parse_size("copies", arg_or(*this, "copies", "1"));
    const AlgorithmKind kind = parse_algorithm(arg_or(*this, "alg", "greedy"));
    const double eps = parse_real("eps", arg_or(*this, "eps", "0.5"));
    const std::size_t m = std::size_t{1} << (p + 1);
    auto alg = make_algorithm(kind, PNormParams(static_cast<double>(p), m), eps);
    return gen_adversarial_wc(*alg, copies, p).instance;
  }
  throw std::invalid_argument("generator: unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Config

OptMode parse_opt_mode(const std::string& text) {
  if (text == "auto") return OptMode::automatic;
  if (text == "analytic") return OptMode::analytic;
  if (text == "brute") return OptMode::brute;
  if (text == "fractional") return OptMode::fractional;
  throw std::invalid_argument("unknown opt mode: " + text);
}

std::string to_string(OptMode mode) {
  switch (mode) {
    case OptMode::automatic:
      return "auto";
    case OptMode::analytic:
      return "analytic";
    case OptMode::brute:
      return "brute";
    case OptMode::fractional:
      return "fractional";
  }
  return "auto";
}

std::string to_string(OrderMode mode) { return mode == OrderMode::given ? "given" : "random"; }

void validate(const ExperimentConfig& cfg) {
  const int sources = static_cast<int>(cfg.instance_file.has_value()) +
                      static_cast<int>(cfg.generator.has_value()) +
                      static_cast<int>(cfg.instance.has_value());
  if (sources != 1) {
    throw std::invalid_argument("experiment: give exactly one instance source");
  }
  if (!(cfg.eps > 0.0 && cfg.eps <= 1.0)) {
    throw std::invalid_argument("experiment: eps must lie in (0, 1]");
  }
  if (!(cfg.p >= 2.0)) {
    throw std::invalid_argument("experiment: p must be at least 2 or inf");
  }
  if (cfg.order == OrderMode::random && cfg.trials < 1) {
    throw std::invalid_argument("experiment: random order needs at least one trial");
  }
}

// ---------------------------------------------------------------------------
// Bounds

std::optional<BoundCheck> worst_case_bound(AlgorithmKind kind, double p, std::size_t m,
                                           double eps, double opt) {
  if (std::isinf(p)) {
    return std::nullopt;
  }
  const double c = greedy_competitive_constant(p);
  BoundCheck b;
  switch (kind) {
    case AlgorithmKind::greedy:
      b.name = "greedy_worst_case";
      b.value = c * opt;
      break;
    case AlgorithmKind::greedy_wr:
      b.name = "greedy_wr_worst_case";
      b.value = 2.0 * c * opt;
      break;
    case AlgorithmKind::smooth_greedy:
      b.name = "smooth_greedy_worst_case";
      b.value = 2.0 * c * opt + 4.0 * smoothing_radius(p, m, eps);
      break;
    case AlgorithmKind::ultimate:
      b.name = "ultimate_worst_case";
      b.value = 7.0 * c * opt;
      break;
  }
  return b;
}

std::optional<double> random_order_bound(AlgorithmKind kind, double p, std::size_t m, double eps,
                                         double opt, std::string* name) {
  if (std::isinf(p)) {
    return std::nullopt;
  }
  const double md = static_cast<double>(m);
  const double r = smoothing_radius(p, m, eps);
  std::optional<double> value;
  std::string label;
  switch (kind) {
    case AlgorithmKind::greedy:
      break;
    case AlgorithmKind::greedy_wr:
      label = "greedy_wr_random_order";
      value = (1.0 + 4.0 * eps) * opt + (3.0 * p + 1.0) * std::pow(md, 1.0 - 1.0 / p) / eps;
      break;
    case AlgorithmKind::smooth_greedy:
      label = "smooth_greedy_random_order";
      value = std::exp(2.0 * eps) * (opt + 4.0 * r);
      break;
    case AlgorithmKind::ultimate:
      label = "ultimate_random_order";
      value = (1.0 + 4.0 * eps) * (opt + 6.0 * r);
      break;
  }
  if (value && name != nullptr) {
    *name = label;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Running

std::vector<std::size_t> trial_order(std::size_t n, std::uint64_t master_seed, std::size_t trial) {
  Rng rng(master_seed + static_cast<std::uint64_t>(trial));
  return fisher_yates(n, rng);
}

bool ExperimentReport::all_bounds_satisfied() const {
  for (const auto& row : rows) {
    if (row.worst_case && !row.worst_case->satisfied) {
      return false;
    }
  }
  for (const auto& agg : aggregates) {
    if (!agg.worst_case_satisfied || (agg.random_order && !agg.random_order->satisfied)) {
      return false;
    }
  }
  return true;
}

std::vector<AlgorithmAggregate> aggregate_rows(const std::vector<ReportRow>& rows,
                                               const std::vector<AlgorithmKind>& algorithms) {
  std::vector<AlgorithmAggregate> out;
  for (AlgorithmKind kind : algorithms) {
    AlgorithmAggregate agg;
    agg.algorithm = std::string(to_string(kind));
    double sum = 0.0;
    double sum_ratio = 0.0;
    double sum_linf = 0.0;
    for (const auto& row : rows) {
      if (row.run.algorithm != agg.algorithm) {
        continue;
      }
      ++agg.trials;
      sum += row.run.final_load;
      sum_ratio += row.run.ratio;
      sum_linf += row.run.linf_load;
      agg.max_load = agg.trials == 1 ? row.run.final_load : std::max(agg.max_load, row.run.final_load);
      if (row.worst_case && !row.worst_case->satisfied) {
        agg.worst_case_satisfied = false;
      }
    }
    if (agg.trials == 0) {
      out.push_back(agg);
      continue;
    }
    const double n = static_cast<double>(agg.trials);
    agg.mean_load = sum / n;
    agg.mean_ratio = sum_ratio / n;
    agg.mean_linf_load = sum_linf / n;
    if (agg.trials >= 2) {
      double ss = 0.0;
      for (const auto& row : rows) {
        if (row.run.algorithm == agg.algorithm) {
          const double d = row.run.final_load - agg.mean_load;
          ss += d * d;
        }
      }
      agg.std_load = std::sqrt(ss / (n - 1.0));
      agg.std_error = agg.std_load / std::sqrt(n);
    }
    out.push_back(agg);
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentReport report;
  report.config = cfg;
  report.p_run = cfg.p;
  if (cfg.algorithms.empty()) {
    return report;
  }

  const Instance base = cfg.instance         ? *cfg.instance
                        : cfg.instance_file ? read_instance(*cfg.instance_file)
                                            : cfg.generator->generate();
  base.validate();
  const std::size_t m = base.m;
  const double p_run = std::isinf(cfg.p) ? effective_p(m, cfg.eps) : cfg.p;
  report.p_run = p_run;
  report.radius = smoothing_radius(p_run, m, cfg.eps);
  const PNormParams run_params(p_run, m);
  const PNormParams opt_params(cfg.p, m);

  const bool random_order = cfg.order == OrderMode::random;
  const bool resample = random_order && cfg.resample_generator && cfg.generator &&
                        cfg.generator->family == "walsh";
  const std::size_t trials = random_order ? cfg.trials : 1;

  std::optional<OptResult> shared_opt;
  if (!resample) {
    shared_opt = compute_opt(base, opt_params, cfg);
  }

  std::vector<TrialResult> results(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t trial_seed = cfg.master_seed + static_cast<std::uint64_t>(t);
    Instance inst = resample ? cfg.generator->generate(mix_seed(trial_seed)) : base;
    const OptResult opt = resample ? compute_opt(inst, opt_params, cfg) : *shared_opt;
    if (random_order) {
      inst = permuted(inst, trial_order(inst.n(), cfg.master_seed, t));
    }
    for (AlgorithmKind kind : cfg.algorithms) {
      auto alg = make_algorithm(kind, run_params, cfg.eps);
      ReportRow row;
      row.trial = t;
      row.run = run_online(*alg, inst);
      row.run.order_mode = to_string(cfg.order);
      row.run.seed = random_order ? trial_seed : cfg.master_seed;
      row.run.set_opt(opt.value, std::string(to_string(opt.kind)));
      if (opt_params.is_infinite() && opt.value > 0.0) {
        row.run.ratio = row.run.linf_load / opt.value;
      }
      if (bound_kind_usable(opt.kind)) {
        row.worst_case = worst_case_bound(kind, cfg.p, m, cfg.eps, opt.value);
        if (row.worst_case) {
          row.worst_case->satisfied =
              row.run.final_load <=
              row.worst_case->value + kDeterministicTol * std::max(1.0, row.worst_case->value);
        }
      }
      results[t].rows.push_back(std::move(row));
    }
  });

  for (auto& r : results) {
    for (auto& row : r.rows) {
      report.rows.push_back(std::move(row));
    }
  }
  report.aggregates = aggregate_rows(report.rows, cfg.algorithms);

  if (random_order) {
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      AlgorithmAggregate& agg = report.aggregates[a];
      double opt_sum = 0.0;
      bool usable = agg.trials > 0;
      for (const auto& row : report.rows) {
        if (row.run.algorithm == agg.algorithm) {
          opt_sum += row.run.opt_bound;
          usable = usable && (row.run.opt_kind == "exact" || row.run.opt_kind == "analytic");
        }
      }
      if (!usable) {
        continue;
      }
      // The bounds are affine in OPT, so the mean OPT bounds the expectation
      // when the instance itself is resampled.
      const double mean_opt = opt_sum / static_cast<double>(agg.trials);
      std::string name;
      const auto value = random_order_bound(cfg.algorithms[a], cfg.p, m, cfg.eps, mean_opt, &name);
      if (value) {
        BoundCheck b;
        b.name = name;
        b.value = *value;
        b.satisfied = agg.mean_load <= b.value + 3.0 * agg.std_error +
                                           kDeterministicTol * std::max(1.0, b.value);
        agg.random_order = b;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Output

void write_csv(std::ostream& os, const ExperimentReport& report) {
  os << kCsvHeader << '\n';
  for (const auto& row : report.rows) {
    const RunRecord& r = row.run;
    os << row.trial << ',' << r.algorithm << ',' << r.order_mode << ',' << r.seed << ','
       << format_double(r.final_load) << ',' << format_double(r.linf_load) << ','
       << format_double(r.opt_bound) << ',' << r.opt_kind << ',' << format_double(r.ratio) << ',';
    if (r.switch_time) {
      os << *r.switch_time;
    }
    os << '\n';
  }
  for (const auto& agg : report.aggregates) {
    os << "#agg,algorithm=" << agg.algorithm << ",trials=" << agg.trials
       << ",mean_load=" << format_double(agg.mean_load)
       << ",std_load=" << format_double(agg.std_load)
       << ",std_error=" << format_double(agg.std_error)
       << ",max_load=" << format_double(agg.max_load)
       << ",mean_ratio=" << format_double(agg.mean_ratio)
       << ",mean_linf_load=" << format_double(agg.mean_linf_load)
       << ",worst_case_satisfied=" << (agg.worst_case_satisfied ? "true" : "false");
    if (agg.random_order) {
      os << ",bound=" << agg.random_order->name
         << ",bound_value=" << format_double(agg.random_order->value)
         << ",bound_satisfied=" << (agg.random_order->satisfied ? "true" : "false");
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const ExperimentReport& report) {
  const ExperimentConfig& cfg = report.config;
  json config{
      {"source", cfg.instance_file ? "file:" + cfg.instance_file->string()
                 : cfg.generator   ? cfg.generator->to_string()
                                   : std::string("memory")},
      {"p", real_to_json(cfg.p)},
      {"eps", cfg.eps},
      {"order", to_string(cfg.order)},
      {"trials", cfg.trials},
      {"master_seed", cfg.master_seed},
      {"opt_mode", to_string(cfg.opt_mode)},
      {"cap", cfg.cap},
  };
  json algs = json::array();
  for (AlgorithmKind kind : cfg.algorithms) {
    algs.push_back(std::string(to_string(kind)));
  }
  config["algorithms"] = algs;

  json rows = json::array();
  for (const auto& row : report.rows) {
    const RunRecord& r = row.run;
    rows.push_back(json{
        {"trial", row.trial},
        {"algorithm", r.algorithm},
        {"order", r.order_mode},
        {"seed", r.seed},
        {"load", r.final_load},
        {"linf_load", r.linf_load},
        {"load_vector", r.load},
        {"opt_bound", r.opt_bound},
        {"opt_kind", r.opt_kind},
        {"ratio", r.ratio},
        {"switch_time", r.switch_time ? json(*r.switch_time) : json(nullptr)},
        {"assignment", r.assignment.choices},
        {"worst_case_bound", bound_to_json(row.worst_case)},
    });
  }
  json aggs = json::array();
  for (const auto& agg : report.aggregates) {
    aggs.push_back(json{
        {"algorithm", agg.algorithm},
        {"trials", agg.trials},
        {"mean_load", agg.mean_load},
        {"std_load", agg.std_load},
        {"std_error", agg.std_error},
        {"max_load", agg.max_load},
        {"mean_ratio", agg.mean_ratio},
        {"mean_linf_load", agg.mean_linf_load},
        {"random_order_bound", bound_to_json(agg.random_order)},
        {"worst_case_satisfied", agg.worst_case_satisfied},
    });
  }
  json doc{
      {"schema", 1},
      {"config", config},
      {"p_run", report.p_run},
      {"radius", report.radius},
      {"rows", rows},
      {"aggregates", aggs},
      {"all_bounds_satisfied", report.all_bounds_satisfied()},
  };
  os << doc.dump(2) << '\n';
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  if (format == ReportFormat::csv) {
    write_csv(out, report);
  } else {
    write_json(out, report);
  }
  out.flush();
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

ExperimentReport report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0, 0);
  }
  try {
    if (doc.at("schema").get<int>() != 1) {
      throw ParseError("report: unsupported schema", 0, 0);
    }
    ExperimentReport report;
    report.p_run = doc.at("p_run").get<double>();
    report.radius = doc.at("radius").get<double>();
    for (const auto& jr : doc.at("rows")) {
      ReportRow row;
      row.trial = jr.at("trial").get<std::size_t>();
      RunRecord& r = row.run;
      r.algorithm = jr.at("algorithm").get<std::string>();
      r.order_mode = jr.at("order").get<std::string>();
      r.seed = jr.at("seed").get<std::uint64_t>();
      r.final_load = jr.at("load").get<double>();
      r.linf_load = jr.at("linf_load").get<double>();
      r.load = jr.at("load_vector").get<std::vector<double>>();
      r.opt_bound = jr.at("opt_bound").get<double>();
      r.opt_kind = jr.at("opt_kind").get<std::string>();
      r.ratio = jr.at("ratio").get<double>();
      if (!jr.at("switch_time").is_null()) {
        r.switch_time = jr.at("switch_time").get<std::size_t>();
      }
      r.assignment.choices = jr.at("assignment").get<std::vector<std::size_t>>();
      row.worst_case = bound_from_json(jr.at("worst_case_bound"));
      report.rows.push_back(std::move(row));
    }
    for (const auto& ja : doc.at("aggregates")) {
      AlgorithmAggregate agg;
      agg.algorithm = ja.at("algorithm").get<std::string>();
      agg.trials = ja.at("trials").get<std::size_t>();
      agg.mean_load = ja.at("mean_load").get<double>();
      agg.std_load = ja.at("std_load").get<double>();
      agg.std_error = ja.at("std_error").get<double>();
      agg.max_load = ja.at("max_load").get<double>();
      agg.mean_ratio = ja.at("mean_ratio").get<double>();
      agg.mean_linf_load = ja.at("mean_linf_load").get<double>();
      agg.random_order = bound_from_json(ja.at("random_order_bound"));
      agg.worst_case_satisfied = ja.at("worst_case_satisfied").get<bool>();
      report.aggregates.push_back(std::move(agg));
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), 0, 0);
  }
}

void write_plot_series(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& agg : report.aggregates) {
    std::ofstream out = open_output(dir / (agg.algorithm + ".dat"));
    for (const auto& row : report.rows) {
      if (row.run.algorithm == agg.algorithm) {
        out << row.trial << ' ' << format_double(row.run.final_load) << '\n';
      }
    }
  }
}

std::vector<SweepPoint> run_eps_sweep(const ExperimentConfig& cfg,
                                      const std::vector<double>& eps_values) {
  std::vector<SweepPoint> sweep;
  sweep.reserve(eps_values.size());
  for (double eps : eps_values) {
    ExperimentConfig point = cfg;
    point.eps = eps;
    sweep.push_back(SweepPoint{eps, run_experiment(point)});
  }
  return sweep;
}

void write_sweep_series(const std::vector<SweepPoint>& sweep, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (sweep.empty()) {
    return;
  }
  for (std::size_t a = 0; a < sweep.front().report.aggregates.size(); ++a) {
    const std::string& name = sweep.front().report.aggregates[a].algorithm;
    std::ofstream out = open_output(dir / (name + "_eps.dat"));
    for (const auto& point : sweep) {
      out << format_double(point.eps) << ' '
          << format_double(point.report.aggregates[a].mean_load) << '\n';
    }
  }
}

double permutation_chi_square(std::size_t n, std::size_t trials, std::uint64_t master_seed) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("permutation_chi_square: n must lie in [1, 8]");
  }
  std::size_t orders = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    orders *= i;
  }
  std::vector<std::size_t> counts(orders, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto perm = trial_order(n, master_seed, t);
    // Lehmer code rank
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[j] < perm[i]) {
          ++smaller;
        }
      }
      rank = rank * (n - i) + smaller;
    }
    ++counts[rank];
  }
  const double expected = static_cast<double>(trials) / static_cast<double>(orders);
  double stat = 0.0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace lpbal
