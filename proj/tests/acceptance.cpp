// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lpbal/algorithms.hpp"
#include "lpbal/experiment.hpp"
#include "lpbal/instance_gen.hpp"
#include "lpbal/offline_opt.hpp"
#include "lpbal/olo.hpp"
#include "lpbal/random.hpp"
#include "lpbal/validators.hpp"
#include "oracles.hpp"

using namespace lpbal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const std::vector<AlgorithmKind> kAll{AlgorithmKind::greedy, AlgorithmKind::greedy_wr,
                                      AlgorithmKind::smooth_greedy, AlgorithmKind::ultimate};

// Random point in the grid used by criteria 1 and 2: entries spread over
// several orders of magnitude, some exactly zero.
struct GridPoint {
  std::size_t m;
  double p;
  double eps;
  std::vector<double> u;
};

GridPoint grid_point(Rng& rng) {
  static const std::size_t ms[] = {2, 8, 64};
  static const double ps[] = {2.0, 4.0, 16.0};
  static const double epss[] = {0.1, 0.5, 1.0};
  GridPoint g;
  g.m = ms[rng.below(3)];
  g.p = ps[rng.below(3)];
  g.eps = epss[rng.below(3)];
  const double scale = std::pow(10.0, -3.0 + 6.0 * rng.uniform01());
  g.u.resize(g.m);
  for (double& x : g.u) {
    x = rng.below(8) == 0 ? 0.0 : scale * rng.uniform01();
  }
  return g;
}

Outcome c01_psi_sandwich() {
  Rng rng(101);
  std::size_t violations = 0;
  double worst = -1e300;  // largest signed excess over the sandwich, relative
  for (int rep = 0; rep < 10000; ++rep) {
    const GridPoint g = grid_point(rng);
    const SmoothingParams sp(PNormParams(g.p, g.m), g.eps);
    const double n = lp_norm(g.u, g.p);
    const double v = psi(g.u, sp);
    const double r = sp.radius();
    const double tol = 1e-9 * std::max(1.0, n + r);
    if (n > v + tol || v > n + r + tol) {
      ++violations;
    }
    worst = std::max(worst, std::max(n - v, v - n - r) / std::max(1.0, n + r));
  }
  return {violations == 0, "violations=" + std::to_string(violations) + " max_rel_excess=" + fmt(worst)};
}

Outcome c02_gradient_stability() {
  Rng rng(202);
  std::size_t stab_viol = 0;
  std::size_t fd_viol = 0;
  double worst_fd = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const GridPoint g = grid_point(rng);
    const SmoothingParams sp(PNormParams(g.p, g.m), g.eps);
    std::vector<double> uv(g.m);
    for (std::size_t i = 0; i < g.m; ++i) {
      uv[i] = g.u[i] + rng.uniform01();
    }
    const DualVector gu = psi_gradient(g.u, sp);
    const DualVector guv = psi_gradient(uv, sp);
    const double up = std::exp(g.eps);
    for (std::size_t i = 0; i < g.m; ++i) {
      if (guv[i] > up * gu[i] * (1 + 1e-9) || guv[i] < gu[i] / up * (1 - 1e-9)) {
        ++stab_viol;
      }
    }
    const auto fd = oracle::psi_gradient_fd(g.u, g.p, g.eps);
    double gmax = 0.0;
    for (std::size_t i = 0; i < g.m; ++i) gmax = std::max(gmax, gu[i]);
    for (std::size_t i = 0; i < g.m; ++i) {
      const double err = std::fabs(gu[i] - fd[i]) / gmax;
      worst_fd = std::max(worst_fd, err);
      if (err > 1e-6) ++fd_viol;
    }
  }
  return {stab_viol == 0 && fd_viol == 0, "stability_violations=" + std::to_string(stab_viol) +
                                              " fd_violations=" + std::to_string(fd_viol) +
                                              " worst_fd_rel=" + fmt(worst_fd)};
}

Outcome c03_olo_regret() {
  const OloSequence kinds[] = {OloSequence::uniform, OloSequence::constant, OloSequence::ones,
                               OloSequence::spikes};
  const std::size_t ms[] = {2, 8, 64};
  const std::size_t ns[] = {10, 100, 1000, 10000};
  const double ps[] = {2.0, 3.0, 8.0};
  const double epss[] = {0.1, 0.5, 1.0};
  std::size_t regret_viol = 0;
  std::size_t tele_viol = 0;
  Rng rng(303);
  for (int s = 0; s < 100; ++s) {
    const OloSequence kind = kinds[s % 4];
    // the first configurations pin the extremes n = 10^4, m = 64
    const std::size_t m = s < 4 ? 64 : ms[rng.below(3)];
    const std::size_t n = s < 4 ? 10000 : ns[rng.below(4)];
    const SmoothingParams sp(PNormParams(ps[rng.below(3)], m), epss[rng.below(3)]);
    const RegretRecord rec = run_olo_game(make_olo_sequence(kind, m, n, 1000 + s), sp);
    regret_viol += rec.bound_satisfied ? 0 : 1;
    tele_viol += rec.telescoping_satisfied ? 0 : 1;
  }
  return {regret_viol == 0 && tele_viol == 0, "sequences=100 regret_violations=" +
                                                  std::to_string(regret_viol) +
                                                  " telescoping_violations=" + std::to_string(tele_viol)};
}

Outcome c04_linlp() {
  Rng rng(404);
  const double ps[] = {2.0, 3.0, 8.0};
  std::size_t bound_viol = 0;
  std::size_t qnorm_viol = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const double p = ps[rng.below(3)];
    const std::size_t m = 1 + rng.below(32);
    const PNormParams params(p, m);
    const bool positive = rep % 2 == 0;
    const double scale = std::pow(10.0, -2.0 + 4.0 * rng.uniform01());
    std::vector<double> u(m);
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) {
      u[i] = positive ? scale * (0.01 + rng.uniform01())
                      : (rng.below(3) == 0 ? 0.0 : scale * rng.uniform01());
      v[i] = rng.uniform01();
    }
    if (lp_norm(u, p) == 0.0) u[0] = scale;
    const LoadVector lu(u);
    const LoadVector lv(v);
    const double lhs = lp_norm_of_sum(u, v, p);
    const double rhs = linlp_bound(lu, lv, params);
    if (lhs > rhs + 1e-9 * std::max(1.0, rhs)) ++bound_viol;
    if (positive) {
      const double qn = lp_norm(linlp_vector(lu, params).values(), params.q());
      if (std::fabs(qn - 1.0) > 1e-9) ++qnorm_viol;
    }
  }
  return {bound_viol == 0 && qnorm_viol == 0, "bound_violations=" + std::to_string(bound_viol) +
                                                  " qnorm_violations=" + std::to_string(qnorm_viol)};
}

Outcome c05_greedy_grad() {
  Rng rng(505);
  std::size_t viol = 0;
  double worst = -1e300;
  const double epss[] = {0.1, 0.5, 1.0};
  const double ps[] = {2.0, 4.0, 16.0};
  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t m = 2 + rng.below(15);
    const double eps = epss[rng.below(3)];
    const SmoothingParams sp(PNormParams(ps[rng.below(3)], m), eps);
    const double scale = std::pow(10.0, -1.0 + 3.0 * rng.uniform01());
    std::vector<double> u(m), v(m), w(m);
    for (std::size_t i = 0; i < m; ++i) {
      u[i] = scale * rng.uniform01();
      v[i] = rng.uniform01();
      w[i] = rng.uniform01();
    }
    if (psi_of_sum(u, v, sp) > psi_of_sum(u, w, sp)) std::swap(v, w);
    const DualVector g = psi_gradient(u, sp);
    const double lhs = dot(g.values(), v);
    const double rhs = std::exp(2.0 * eps) * dot(g.values(), w);
    worst = std::max(worst, lhs - rhs);
    if (lhs > rhs + 1e-9) ++viol;
  }
  return {viol == 0, "violations=" + std::to_string(viol) + " max(lhs-rhs)=" + fmt(worst)};
}

Outcome c06_example1() {
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t m : {3u, 8u}) {
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec::parse("example1:m=" + std::to_string(m) + ",eps=0.5");
    cfg.algorithms = {AlgorithmKind::greedy_wr};
    cfg.p = 200.0;
    cfg.order = OrderMode::random;
    cfg.trials = 100;
    cfg.master_seed = 606;
    const ExperimentReport r = run_experiment(cfg);
    const double expected = static_cast<double>(m) * 0.5;
    std::size_t off = 0;
    for (const auto& row : r.rows) off += row.run.linf_load == expected ? 0 : 1;
    const double opt = brute_force_opt(cfg.generator->generate(), PNormParams::infinity(m)).value;
    ok = ok && off == 0 && opt == 1.0 && r.rows.size() == 100;
    detail << "m=" << m << ": orders_off=" << off << " opt=" << fmt(opt) << "; ";
  }
  return {ok, detail.str()};
}

Outcome c07_adversary() {
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t copies : {1u, 3u}) {
    Greedy greedy(PNormParams(2.0, 8), false);
    const AdversaryTranscript tr = gen_adversarial_wc(greedy, copies, 2);
    const double lower = adversary_lower_bound(2, copies);
    const double upper = static_cast<double>(copies) * std::sqrt(8.0);
    const bool good = tr.algorithm_norm >= lower - 1e-9 && tr.witness_norm <= upper + 1e-9;
    ok = ok && good;
    detail << "M=" << copies << ": alg=" << fmt(tr.algorithm_norm) << ">=" << fmt(lower)
           << " witness=" << fmt(tr.witness_norm) << "<=" << fmt(upper) << "; ";
  }
  return {ok, detail.str()};
}

Outcome c08_walsh() {
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t p : {2u, 4u}) {
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec::parse("walsh:p=" + std::to_string(p) + ",seed=0");
    cfg.algorithms = kAll;
    cfg.p = static_cast<double>(p);
    cfg.eps = 0.5;
    cfg.order = OrderMode::random;
    cfg.trials = 10000;
    cfg.master_seed = 808;
    const ExperimentReport r = run_experiment(cfg);
    const double m = std::pow(2.0, static_cast<double>(p));
    const double opt = static_cast<double>(p) * std::pow(m, 1.0 / static_cast<double>(p)) / 2.0;
    detail << "p=" << p << ":";
    for (const auto& agg : r.aggregates) {
      const double need = 1.01 * opt - 3.0 * agg.std_error;
      ok = ok && agg.mean_load >= need;
      detail << " " << agg.algorithm << "=" << fmt(agg.mean_load) << (agg.mean_load >= need ? "" : "(LOW)");
    }
    // exhaustive optimum on sampled coin outcomes
    std::size_t opt_off = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Instance inst = gen_walsh_instance(p, mix_seed(9000 + s));
      const double v = brute_force_opt(inst, PNormParams(static_cast<double>(p), inst.m)).value;
      if (std::fabs(v - opt) > 1e-12 * opt) ++opt_off;
    }
    ok = ok && opt_off == 0;
    detail << " opt=" << fmt(opt) << " opt_mismatches=" << opt_off << "; ";
  }
  return {ok, detail.str()};
}

// Instance suite shared by criteria 9 and 10.
struct SuiteEntry {
  std::string label;
  Instance inst;
  double p;
};

std::vector<SuiteEntry> random_order_suite() {
  std::vector<SuiteEntry> suite;
  for (std::size_t p : {2u, 4u}) {
    suite.push_back({"walsh_p" + std::to_string(p), gen_walsh_instance(p, 1), static_cast<double>(p)});
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    suite.push_back({"random" + std::to_string(s),
                     fixtures::small_instance(900 + s, {8, 40, 3, 1'000'000}),
                     s % 2 == 0 ? 2.0 : 4.0});
  }
  return suite;
}

struct SuiteCheck {
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst_margin = -1e300;  // max (mean - bound - 3 se)
};

std::map<std::string, SuiteCheck> g_random_order;

void run_random_order_suite() {
  for (const auto& entry : random_order_suite()) {
    for (double eps : {0.25, 0.5, 1.0}) {
      ExperimentConfig cfg;
      cfg.instance = entry.inst;
      cfg.algorithms = {AlgorithmKind::greedy_wr, AlgorithmKind::ultimate};
      cfg.p = entry.p;
      cfg.eps = eps;
      cfg.order = OrderMode::random;
      cfg.trials = 2000;
      cfg.master_seed = 9090;
      cfg.opt_mode = entry.label.rfind("walsh", 0) == 0 ? OptMode::automatic : OptMode::brute;
      const ExperimentReport r = run_experiment(cfg);
      for (std::size_t a = 0; a < r.aggregates.size(); ++a) {
        const auto& agg = r.aggregates[a];
        SuiteCheck& c = g_random_order[agg.algorithm];
        ++c.checks;
        if (!agg.random_order || !agg.random_order->satisfied) ++c.failures;
        if (agg.random_order) {
          c.worst_margin = std::max(c.worst_margin, agg.mean_load - agg.random_order->value -
                                                        3.0 * agg.std_error);
        }
      }
    }
  }
}

Outcome suite_outcome(const std::string& alg) {
  const SuiteCheck& c = g_random_order[alg];
  return {c.checks == 66 && c.failures == 0,
          "checks=" + std::to_string(c.checks) + " failures=" + std::to_string(c.failures) +
              " worst(mean-bound-3se)=" + fmt(c.worst_margin)};
}

Outcome c09_ultimate_random_order() {
  run_random_order_suite();
  return suite_outcome("ultimate");
}

Outcome c10_greedy_wr_random_order() { return suite_outcome("greedy_wr"); }

Outcome c11_greedy_worst_case() {
  std::size_t viol = 0;
  std::size_t refined_viol = 0;
  std::size_t refined_checks = 0;
  double worst_ratio = 0.0;
  const OptOracle oracle = [](const Instance& inst, const PNormParams& params) {
    return brute_force_opt(inst, params).value;
  };
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Instance inst = fixtures::small_instance(1100 + s, {8, 20, 3, 20000});
    for (double p : {2.0, 4.0}) {
      const PNormParams params(p, inst.m);
      const double opt = brute_force_opt(inst, params).value;
      const double load = run_greedy(inst, params).final_load;
      if (load > greedy_competitive_constant(p) * opt + 1e-9) ++viol;
      if (opt > 0.0) worst_ratio = std::max(worst_ratio, load / opt);
      if (s < 50) {
        for (std::size_t tau = 1; tau <= inst.n(); ++tau) {
          ++refined_checks;
          if (!check_refined_guarantee(inst, tau, params, oracle).holds) ++refined_viol;
        }
      }
    }
  }
  return {viol == 0 && refined_viol == 0,
          "violations=" + std::to_string(viol) + " worst_ratio=" + fmt(worst_ratio) +
              " refined_checks=" + std::to_string(refined_checks) +
              " refined_violations=" + std::to_string(refined_viol)};
}

Outcome c12_correlation() {
  const auto sets = random_binary_vector_sets(50, 8, 4, 16, 1212);
  std::size_t checks = 0;
  std::size_t failures = 0;
  for (double p : {2.0, 4.0}) {
    const SmoothingParams sp(PNormParams(p, 8), 0.5);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const std::size_t n = sets[s].size();
      const std::uint64_t seed = mix_seed(s * 7 + static_cast<std::uint64_t>(p));
      for (std::size_t kappa : {std::size_t{2}, n / 2, n}) {
        ++checks;
        failures += validate_corr_sum(sets[s], kappa, sp, 10000, seed).passed ? 0 : 1;
      }
      for (std::size_t t : {std::size_t{1}, n / 2, n}) {
        checks += 2;
        failures += validate_break_corr(sets[s], t, sp, 10000, seed + 1).passed ? 0 : 1;
        failures +=
            validate_break_corr(sets[s], t, sp, 10000, seed + 2, ZStrategy::fixed).passed ? 0 : 1;
      }
    }
  }
  return {failures == 0, "sets=50 checks=" + std::to_string(checks) +
                             " failures=" + std::to_string(failures)};
}

Outcome c13_oracle_consistency() {
  std::size_t lb_viol = 0;
  std::size_t witness_viol = 0;
  double worst_gap = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Instance inst = fixtures::small_instance(1300 + s, {8, 12, 3, 20000});
    const double p = s % 2 == 0 ? 2.0 : 4.0;
    const PNormParams params(p, inst.m);
    const OptResult exact = brute_force_opt(inst, params);
    const OptResult lb = fractional_lower_bound(inst, params);
    if (lb.value > exact.value + 1e-9) ++lb_viol;
    worst_gap = std::max(worst_gap, exact.value - lb.value);
    const double recomputed = lp_norm(assignment_load(inst, *exact.assignment), p);
    if (std::fabs(recomputed - exact.value) > 1e-12) ++witness_viol;
  }
  return {lb_viol == 0 && witness_viol == 0,
          "lower_bound_violations=" + std::to_string(lb_viol) +
              " witness_mismatches=" + std::to_string(witness_viol) +
              " max(opt-lb)=" + fmt(worst_gap)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c14_reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lpbal_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  bool ok = true;
  std::ostringstream detail;

  ExperimentConfig cfg;
  cfg.generator = GeneratorSpec::parse("walsh:p=4,seed=3");
  cfg.algorithms = kAll;
  cfg.p = 4.0;
  cfg.order = OrderMode::random;
  cfg.trials = 500;
  cfg.master_seed = 1414;
  for (ReportFormat f : {ReportFormat::csv, ReportFormat::json}) {
    const std::string ext = f == ReportFormat::csv ? "csv" : "json";
    emit_report(run_experiment(cfg), f, dir / ("a." + ext));
    emit_report(run_experiment(cfg), f, dir / ("b." + ext));
    const bool same = slurp(dir / ("a." + ext)) == slurp(dir / ("b." + ext));
    ok = ok && same;
    detail << "library_" << ext << "=" << (same ? "identical" : "DIFFERENT") << " ";
  }

#ifdef LPBAL_CLI
  // two separate processes
  for (const std::string ext : {"csv", "json"}) {
    std::string outputs[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path out = dir / ("cli" + std::to_string(k) + "." + ext);
      const std::string cmd = std::string(LPBAL_CLI) +
                              " run --gen random:m=4,k=2,n=12,seed=5 --alg all --p 3 --eps 0.25"
                              " --order random --trials 300 --seed 77 --format " + ext +
                              " --out " + out.string();
      const int status = std::system(cmd.c_str());
      ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
      outputs[k] = slurp(out);
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    ok = ok && same;
    detail << "cli_" << ext << "=" << (same ? "identical" : "DIFFERENT") << " ";
  }
#endif
  fs::remove_all(dir);
  return {ok, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no runtime requirement
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "psi_sandwich", 5.0, c01_psi_sandwich},
      {2, "gradient_stability", 0.0, c02_gradient_stability},
      {3, "olo_regret", 30.0, c03_olo_regret},
      {4, "linearization_bound", 0.0, c04_linlp},
      {5, "greedy_gradient", 0.0, c05_greedy_grad},
      {6, "example1_greedy_wr", 1.0, c06_example1},
      {7, "worst_case_adversary", 1.0, c07_adversary},
      {8, "walsh_lower_bound", 60.0, c08_walsh},
      {9, "ultimate_random_order", 120.0, c09_ultimate_random_order},
      {10, "greedy_wr_random_order", 0.0, c10_greedy_wr_random_order},
      {11, "greedy_worst_case_constant", 0.0, c11_greedy_worst_case},
      {12, "correlation_inequalities", 30.0, c12_correlation},
      {13, "oracle_consistency", 0.0, c13_oracle_consistency},
      {14, "reproducibility", 0.0, c14_reproducibility},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    std::string budget;
    if (c.budget_s > 0.0) {
      budget = " budget=" + fmt(c.budget_s) + "s";
      if (secs >= c.budget_s) {
        pass = false;
        budget += " (EXCEEDED)";
      }
    }
    if (!pass) ++failed;
    std::printf("[%s] %02d %-28s %8.3fs%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                budget.c_str(), out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
