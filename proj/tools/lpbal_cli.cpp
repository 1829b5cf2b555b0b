// Command-line front end: instance generation, experiments, regret and
// correlation benchmarks, offline optimum.
//
// Exit codes: 0 all flagged bounds hold, 2 some bound is violated, 1 usage or
// I/O error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpbal/errors.hpp"
#include "lpbal/experiment.hpp"
#include "lpbal/instance_gen.hpp"
#include "lpbal/instance_io.hpp"
#include "lpbal/offline_opt.hpp"
#include "lpbal/olo.hpp"
#include "lpbal/random.hpp"
#include "lpbal/validators.hpp"

namespace {

using namespace lpbal;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolated = 2;

double parse_p(const std::string& text) {
  if (text == "inf" || text == "INF") {
    return kInfinity;
  }
  std::size_t used = 0;
  const double p = std::stod(text, &used);
  if (used != text.size()) {
    throw std::invalid_argument("bad --p: " + text);
  }
  return p;
}

std::vector<AlgorithmKind> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<AlgorithmKind> out;
  for (const auto& name : names) {
    if (name == "all") {
      out = {AlgorithmKind::greedy, AlgorithmKind::greedy_wr, AlgorithmKind::smooth_greedy,
             AlgorithmKind::ultimate};
      continue;
    }
    if (!name.empty() && name != "none") {
      out.push_back(parse_algorithm(name));
    }
  }
  return out;
}

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw std::invalid_argument("bad --format: " + text);
}

// Writes through `emit` to stdout for "-" and to the file otherwise.
template <typename Emit>
void with_output(const std::string& out, Emit emit) {
  if (out.empty() || out == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    throw IoError("cannot write " + out);
  }
  emit(file);
  if (!file) {
    throw IoError("failed writing " + out);
  }
}

struct SourceOptions {
  std::string instance;
  std::string gen;

  void add(CLI::App* cmd) {
    auto* a = cmd->add_option("--instance", instance, "Instance JSON file");
    auto* b = cmd->add_option("--gen", gen,
                              "Generator spec, e.g. walsh:p=4,seed=1 | example1:m=3,eps=0.5 | "
                              "random:m=4,k=2,n=10,seed=7,dist=uniform | adversary:p=2,copies=1");
    a->excludes(b);
  }

  Instance load() const {
    if (!instance.empty()) {
      return read_instance(std::filesystem::path(instance));
    }
    if (!gen.empty()) {
      return GeneratorSpec::parse(gen).generate();
    }
    throw std::invalid_argument("one of --instance or --gen is required");
  }
};

int cmd_gen(const std::string& spec, const std::string& out) {
  const Instance inst = GeneratorSpec::parse(spec).generate();
  with_output(out, [&](std::ostream& os) { write_instance(os, inst); });
  return kOk;
}

struct RunOptions {
  SourceOptions source;
  std::vector<std::string> algs{"all"};
  std::string p = "2";
  double eps = 0.5;
  std::string order = "given";
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string opt_mode = "auto";
  std::string format = "csv";
  std::string out = "-";
  std::size_t cap = kDefaultEnumerationCap;
  std::string plot_dir;
  std::vector<double> sweep;
  bool no_resample = false;
};

int cmd_run(const RunOptions& o) {
  ExperimentConfig cfg;
  if (!o.source.instance.empty()) {
    cfg.instance_file = o.source.instance;
  } else if (!o.source.gen.empty()) {
    cfg.generator = GeneratorSpec::parse(o.source.gen);
  } else {
    throw std::invalid_argument("one of --instance or --gen is required");
  }
  cfg.algorithms = parse_algorithms(o.algs);
  cfg.p = parse_p(o.p);
  cfg.eps = o.eps;
  if (o.order == "given") {
    cfg.order = OrderMode::given;
  } else if (o.order == "random") {
    cfg.order = OrderMode::random;
  } else {
    throw std::invalid_argument("bad --order: " + o.order);
  }
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  cfg.opt_mode = parse_opt_mode(o.opt_mode);
  cfg.cap = o.cap;
  cfg.resample_generator = !o.no_resample;
  const ReportFormat format = parse_format(o.format);

  if (!o.sweep.empty()) {
    const auto sweep = run_eps_sweep(cfg, o.sweep);
    bool ok = true;
    with_output(o.out, [&](std::ostream& os) {
      os << "eps,algorithm,trials,mean_load,std_error,bound_value,bound_satisfied\n";
      for (const auto& point : sweep) {
        ok = ok && point.report.all_bounds_satisfied();
        for (const auto& agg : point.report.aggregates) {
          os << format_double(point.eps) << ',' << agg.algorithm << ',' << agg.trials << ','
             << format_double(agg.mean_load) << ',' << format_double(agg.std_error) << ',';
          if (agg.random_order) {
            os << format_double(agg.random_order->value) << ','
               << (agg.random_order->satisfied ? "true" : "false");
          } else {
            os << ',';
          }
          os << '\n';
        }
      }
    });
    if (!o.plot_dir.empty()) {
      write_sweep_series(sweep, o.plot_dir);
    }
    return ok ? kOk : kViolated;
  }

  const ExperimentReport report = run_experiment(cfg);
  if (o.out.empty() || o.out == "-") {
    if (format == ReportFormat::csv) {
      write_csv(std::cout, report);
    } else {
      write_json(std::cout, report);
    }
  } else {
    emit_report(report, format, o.out);
  }
  if (!o.plot_dir.empty()) {
    write_plot_series(report, o.plot_dir);
  }
  return report.all_bounds_satisfied() ? kOk : kViolated;
}

struct OloOptions {
  std::vector<std::string> sequences{"uniform", "constant", "ones", "spikes"};
  std::size_t m = 8;
  std::size_t n = 1000;
  double p = 2.0;
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out = "-";
};

int cmd_olo(const OloOptions& o) {
  const SmoothingParams sp(PNormParams(o.p, o.m), o.eps);
  bool ok = true;
  json records = json::array();
  std::ostringstream csv;
  csv << "sequence,m,n,p,eps,reward,hindsight_opt,radius,bound_satisfied,telescoping_satisfied\n";
  for (const auto& name : o.sequences) {
    const OloSequence kind = parse_olo_sequence(name);
    const RegretRecord rec = run_olo_game(make_olo_sequence(kind, o.m, o.n, o.seed), sp);
    ok = ok && rec.bound_satisfied && rec.telescoping_satisfied;
    csv << name << ',' << o.m << ',' << o.n << ',' << format_double(o.p) << ','
        << format_double(o.eps) << ',' << format_double(rec.reward) << ','
        << format_double(rec.hindsight_opt) << ',' << format_double(rec.radius) << ','
        << (rec.bound_satisfied ? "true" : "false") << ','
        << (rec.telescoping_satisfied ? "true" : "false") << '\n';
    records.push_back(json{{"sequence", name},
                           {"m", o.m},
                           {"n", o.n},
                           {"p", o.p},
                           {"eps", o.eps},
                           {"reward", rec.reward},
                           {"hindsight_opt", rec.hindsight_opt},
                           {"radius", rec.radius},
                           {"psi_final", rec.psi_final},
                           {"psi_zero", rec.psi_zero},
                           {"max_action_qnorm", rec.max_action_qnorm},
                           {"bound_satisfied", rec.bound_satisfied},
                           {"telescoping_satisfied", rec.telescoping_satisfied}});
  }
  const ReportFormat format = parse_format(o.format);
  with_output(o.out, [&](std::ostream& os) {
    if (format == ReportFormat::csv) {
      os << csv.str();
    } else {
      os << json{{"schema", 1}, {"records", records}}.dump(2) << '\n';
    }
  });
  return ok ? kOk : kViolated;
}

struct ValidateOptions {
  std::size_t m = 8;
  double p = 2.0;
  double eps = 0.5;
  std::size_t sets = 50;
  std::size_t min_size = 4;
  std::size_t max_size = 16;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out = "-";
};

int cmd_validate(const ValidateOptions& o) {
  const SmoothingParams sp(PNormParams(o.p, o.m), o.eps);
  const auto sets = random_binary_vector_sets(o.sets, o.m, o.min_size, o.max_size, o.seed);
  std::vector<std::pair<std::size_t, ValidationRecord>> records;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::size_t n = sets[s].size();
    const std::uint64_t base = mix_seed(o.seed + s);
    for (std::size_t kappa : {std::size_t{2}, std::max<std::size_t>(1, n / 2), n}) {
      records.emplace_back(s, validate_corr_sum(sets[s], std::min(kappa, n), sp, o.trials, base));
    }
    for (std::size_t t : {std::size_t{1}, std::max<std::size_t>(1, n / 2), n}) {
      records.emplace_back(s, validate_break_corr(sets[s], t, sp, o.trials, base + 1));
      records.emplace_back(
          s, validate_break_corr(sets[s], t, sp, o.trials, base + 2, ZStrategy::fixed));
    }
  }
  bool ok = true;
  for (const auto& [s, rec] : records) {
    ok = ok && rec.passed;
  }
  const ReportFormat format = parse_format(o.format);
  with_output(o.out, [&](std::ostream& os) {
    if (format == ReportFormat::csv) {
      os << "set,check,trials,mean,std_error,bound,passed\n";
      for (const auto& [s, rec] : records) {
        os << s << ",\"" << rec.name << "\"," << rec.trials << ',' << format_double(rec.mean) << ','
           << format_double(rec.std_error) << ',' << format_double(rec.bound) << ','
           << (rec.passed ? "true" : "false") << '\n';
      }
    } else {
      json arr = json::array();
      for (const auto& [s, rec] : records) {
        arr.push_back(json{{"set", s},
                           {"check", rec.name},
                           {"trials", rec.trials},
                           {"mean", rec.mean},
                           {"std_error", rec.std_error},
                           {"bound", rec.bound},
                           {"passed", rec.passed}});
      }
      os << json{{"schema", 1}, {"records", arr}}.dump(2) << '\n';
    }
  });
  return ok ? kOk : kViolated;
}

struct OptOptions {
  SourceOptions source;
  std::string p = "2";
  std::string opt_mode = "auto";
  std::size_t cap = kDefaultEnumerationCap;
  std::string out = "-";
};

int cmd_opt(const OptOptions& o) {
  const Instance inst = o.source.load();
  const PNormParams params(parse_p(o.p), inst.m);
  OptResult res;
  switch (parse_opt_mode(o.opt_mode)) {
    case OptMode::automatic:
      res = opt_bound(inst, params, o.cap);
      break;
    case OptMode::analytic:
      if (!inst.analytic_opt || inst.analytic_opt->p != params.p()) {
        throw std::invalid_argument("instance records no analytic optimum for this p");
      }
      res = opt_bound(inst, params, o.cap);
      break;
    case OptMode::brute:
      res = brute_force_opt(inst, params, o.cap);
      break;
    case OptMode::fractional:
      res = fractional_lower_bound(inst, params);
      break;
  }
  json doc{{"schema", 1},
           {"value", res.value},
           {"kind", std::string(to_string(res.kind))},
           {"provenance", res.provenance},
           {"iterations", res.iterations}};
  doc["assignment"] = res.assignment ? json(res.assignment->choices) : json(nullptr);
  doc["duality_gap"] = res.duality_gap ? json(*res.duality_gap) : json(nullptr);
  with_output(o.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online and random-order l_p load balancing experiments"};
  app.require_subcommand(1);

  std::string gen_spec;
  std::string gen_out = "-";
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("spec", gen_spec, "Generator spec")->required();
  gen->add_option("--out", gen_out, "Output path ('-' for stdout)");

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run online algorithms on an instance");
  run_opts.source.add(run);
  run->add_option("--alg", run_opts.algs, "Algorithms (greedy,greedy_wr,smooth_greedy,ultimate,all,none)")
      ->delimiter(',');
  run->add_option("--p", run_opts.p, "Norm exponent (>= 2 or inf)");
  run->add_option("--eps", run_opts.eps, "Smoothing parameter in (0, 1]");
  run->add_option("--order", run_opts.order, "given | random");
  run->add_option("--trials", run_opts.trials, "Random-order trials");
  run->add_option("--seed", run_opts.seed, "Master seed");
  run->add_option("--opt-mode", run_opts.opt_mode, "auto | analytic | brute | fractional");
  run->add_option("--format", run_opts.format, "csv | json");
  run->add_option("--out", run_opts.out, "Report path ('-' for stdout)");
  run->add_option("--cap", run_opts.cap, "Enumeration cap for brute force");
  run->add_option("--plot-dir", run_opts.plot_dir, "Directory for plot series");
  run->add_option("--sweep", run_opts.sweep, "Sweep eps over these values")->delimiter(',');
  run->add_flag("--no-resample", run_opts.no_resample,
                "Keep the generator's coins fixed across random-order trials");

  OloOptions olo_opts;
  auto* olo = app.add_subcommand("olo-bench", "Regret of the smoothed gradient player");
  olo->add_option("--seq", olo_opts.sequences, "uniform,constant,ones,spikes")->delimiter(',');
  olo->add_option("--m", olo_opts.m, "Dimension");
  olo->add_option("--n", olo_opts.n, "Rounds");
  olo->add_option("--p", olo_opts.p, "Norm exponent");
  olo->add_option("--eps", olo_opts.eps, "Smoothing parameter");
  olo->add_option("--seed", olo_opts.seed, "Seed");
  olo->add_option("--format", olo_opts.format, "csv | json");
  olo->add_option("--out", olo_opts.out, "Output path");

  ValidateOptions val_opts;
  auto* val = app.add_subcommand("validate", "Monte-Carlo checks of the correlation inequalities");
  val->add_option("--m", val_opts.m, "Dimension");
  val->add_option("--p", val_opts.p, "Norm exponent");
  val->add_option("--eps", val_opts.eps, "Smoothing parameter");
  val->add_option("--sets", val_opts.sets, "Number of random vector sets");
  val->add_option("--min-size", val_opts.min_size, "Smallest set size");
  val->add_option("--max-size", val_opts.max_size, "Largest set size");
  val->add_option("--trials", val_opts.trials, "Monte-Carlo trials per check");
  val->add_option("--seed", val_opts.seed, "Seed");
  val->add_option("--format", val_opts.format, "csv | json");
  val->add_option("--out", val_opts.out, "Output path");

  OptOptions opt_opts;
  auto* opt = app.add_subcommand("opt", "Offline optimum or certified lower bound");
  opt_opts.source.add(opt);
  opt->add_option("--p", opt_opts.p, "Norm exponent (>= 2 or inf)");
  opt->add_option("--opt-mode", opt_opts.opt_mode, "auto | analytic | brute | fractional");
  opt->add_option("--cap", opt_opts.cap, "Enumeration cap");
  opt->add_option("--out", opt_opts.out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_spec, gen_out);
    if (*run) return cmd_run(run_opts);
    if (*olo) return cmd_olo(olo_opts);
    if (*val) return cmd_validate(val_opts);
    if (*opt) return cmd_opt(opt_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
