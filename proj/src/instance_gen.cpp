#include "lpbal/instance_gen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lpbal/errors.hpp"
#include "lpbal/random.hpp"

namespace lpbal {

namespace {

std::vector<double> unit_vector(std::size_t m, std::size_t i) {
  std::vector<double> e(m, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

Instance gen_example1(std::size_t m, double eps) {
  if (m < 1) {
    throw std::invalid_argument("gen_example1: m must be >= 1");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("gen_example1: eps must lie in (0, 1)");
  }
  Instance inst;
  inst.m = m;
  for (std::size_t i = 0; i < m; ++i) {
    inst.jobs.emplace_back(std::vector<std::vector<double>>{
        std::vector<double>(m, 1.0 - eps), unit_vector(m, i)});
  }
  inst.analytic_opt = AnalyticOpt{1.0, kInfinity, "example1: each job i on e_i"};
  return inst;
}

std::vector<double> WalshSystem::complement(std::size_t i) const {
  std::vector<double> c(m);
  for (std::size_t j = 0; j < m; ++j) {
    c[j] = 1.0 - vectors.at(i)[j];
  }
  return c;
}

std::size_t WalshSystem::intersection_count(const std::vector<std::size_t>& members,
                                            const std::vector<bool>& complemented) const {
  if (members.size() != complemented.size()) {
    throw std::invalid_argument("intersection_count: size mismatch");
  }
  std::size_t count = 0;
  for (std::size_t j = 0; j < m; ++j) {
    bool all = true;
    for (std::size_t r = 0; r < members.size() && all; ++r) {
      const bool bit = vectors.at(members[r])[j] == 1.0;
      all = complemented[r] ? !bit : bit;
    }
    count += all ? 1 : 0;
  }
  return count;
}

WalshSystem walsh_vectors(std::size_t d) {
  if (d < 1 || d > 20) {
    throw std::invalid_argument("walsh_vectors: d must lie in [1, 20]");
  }
  WalshSystem sys;
  sys.d = d;
  sys.m = std::size_t{1} << d;
  sys.vectors.assign(d, std::vector<double>(sys.m, 0.0));
  for (std::size_t row = 0; row < sys.m; ++row) {
    for (std::size_t i = 0; i < d; ++i) {
      // Column i holds bit i of the row's d-bit string, most significant first.
      sys.vectors[i][row] = static_cast<double>((row >> (d - 1 - i)) & 1U);
    }
  }
  if (d <= 6) {
    for (std::size_t subset = 1; subset < (std::size_t{1} << d); ++subset) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < d; ++i) {
        if ((subset >> i) & 1U) {
          members.push_back(i);
        }
      }
      for (std::size_t pattern = 0; pattern < (std::size_t{1} << members.size()); ++pattern) {
        std::vector<bool> comp(members.size());
        for (std::size_t r = 0; r < members.size(); ++r) {
          comp[r] = ((pattern >> r) & 1U) != 0;
        }
        if (sys.intersection_count(members, comp) != (sys.m >> members.size())) {
          throw std::logic_error("walsh_vectors: intersection property violated");
        }
      }
    }
  }
  return sys;
}

Instance gen_walsh_instance(std::size_t p, std::uint64_t coin_seed) {
  if (p < 2 || p % 2 != 0 || p > 20) {
    throw std::invalid_argument("gen_walsh_instance: p must be even and in [2, 20]");
  }
  const WalshSystem sys = walsh_vectors(p);
  Rng rng(coin_seed);
  Instance inst;
  inst.m = sys.m;
  for (std::size_t i = 0; i < p / 2; ++i) {
    const std::vector<double>& v = sys.vectors[i];
    std::vector<double> vc = sys.complement(i);
    const std::vector<double> u = rng.coin() ? vc : v;
    inst.jobs.emplace_back(std::vector<std::vector<double>>{u});
    inst.jobs.emplace_back(std::vector<std::vector<double>>{v, std::move(vc)});
  }
  const double value = static_cast<double>(p) * std::pow(static_cast<double>(sys.m),
                                                         1.0 / static_cast<double>(p)) / 2.0;
  inst.analytic_opt = AnalyticOpt{value, static_cast<double>(p), "walsh: p m^{1/p} / 2"};
  return inst;
}

double adversary_lower_bound(std::size_t p, std::size_t copies) {
  const double pd = static_cast<double>(p);
  const double m = std::ldexp(1.0, static_cast<int>(p) + 1);
  return pd * static_cast<double>(copies) * std::pow(m, 1.0 / pd) / std::pow(2.0, 2.0 + 1.0 / pd);
}

AdversaryTranscript gen_adversarial_wc(OnlineAlgorithm& algorithm, std::size_t copies,
                                       std::size_t p) {
  if (!algorithm.deterministic()) {
    throw NondeterministicAlgorithm("gen_adversarial_wc: " + algorithm.name() +
                                    " is randomized; only deterministic algorithms are supported");
  }
  if (p < 2 || p > 15) {
    throw std::invalid_argument("gen_adversarial_wc: p must lie in [2, 15]");
  }
  if (copies < 1) {
    throw std::invalid_argument("gen_adversarial_wc: M must be >= 1");
  }
  AdversaryTranscript tr;
  tr.p = p;
  tr.copies = copies;
  tr.m = std::size_t{1} << (p + 1);
  const std::size_t m = tr.m;
  const std::size_t rounds = p + 1;
  tr.instance.m = m;
  tr.algorithm_load.assign(m, 0.0);
  tr.witness_load.assign(m, 0.0);

  algorithm.start(m, copies * (m - 1));

  std::vector<std::size_t> active(m);
  for (std::size_t i = 0; i < m; ++i) {
    active[i] = i;
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    AdversaryRound round;
    round.active_before = active;
    round.round_load.assign(m, 0.0);
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
      const std::size_t a = active[i];
      const std::size_t b = active[i + 1];
      round.pairs.emplace_back(a, b);
      for (std::size_t c = 0; c < copies; ++c) {
        JobMatrix job(std::vector<std::vector<double>>{unit_vector(m, a), unit_vector(m, b)});
        const std::size_t choice = algorithm.assign(job);
        if (choice > 1) {
          throw std::logic_error("gen_adversarial_wc: algorithm returned invalid option");
        }
        const std::size_t machine = choice == 0 ? a : b;
        round.round_load[machine] += 1.0;
        tr.algorithm_load[machine] += 1.0;
        tr.algorithm_assignment.choices.push_back(choice);
        tr.instance.jobs.push_back(std::move(job));
      }
    }
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < round.pairs.size(); ++k) {
      const auto [a, b] = round.pairs[k];
      // a < b, so a tie deactivates a
      const bool drop_a = round.round_load[a] <= round.round_load[b];
      const std::size_t dropped = drop_a ? a : b;
      round.deactivated.push_back(dropped);
      next.push_back(drop_a ? b : a);
      for (std::size_t c = 0; c < copies; ++c) {
        tr.witness.choices.push_back(drop_a ? 0 : 1);
      }
      tr.witness_load[dropped] += static_cast<double>(copies);
    }
    std::sort(next.begin(), next.end());
    active = std::move(next);
    tr.rounds.push_back(std::move(round));
  }
  tr.final_active = active;
  const double pd = static_cast<double>(p);
  tr.algorithm_norm = lp_norm(tr.algorithm_load, pd);
  tr.witness_norm = lp_norm(tr.witness_load, pd);
  tr.opt_upper = static_cast<double>(copies) * std::pow(static_cast<double>(m), 1.0 / pd);
  return tr;
}

EntryDistribution EntryDistribution::parse(std::string_view text) {
  EntryDistribution d;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (head == "uniform" && arg.empty()) {
    d.kind = Kind::uniform;
    return d;
  }
  if (head == "bernoulli") {
    d.kind = Kind::bernoulli;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), d.rho);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || !(d.rho >= 0.0 && d.rho <= 1.0)) {
      throw std::invalid_argument("bad bernoulli parameter in '" + std::string(text) + "'");
    }
    return d;
  }
  if (head == "sparse") {
    d.kind = Kind::sparse;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), d.support);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || d.support < 1) {
      throw std::invalid_argument("bad sparse parameter in '" + std::string(text) + "'");
    }
    return d;
  }
  throw std::invalid_argument("unknown distribution '" + std::string(text) + "'");
}

std::string EntryDistribution::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::uniform:
      os << "uniform";
      break;
    case Kind::bernoulli:
      os << "bernoulli:" << rho;
      break;
    case Kind::sparse:
      os << "sparse:" << support;
      break;
  }
  return os.str();
}

Instance gen_random(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed,
                    const EntryDistribution& dist) {
  if (m < 1 || k < 1) {
    throw std::invalid_argument("gen_random: m and k must be >= 1");
  }
  Rng rng(seed);
  Instance inst;
  inst.m = m;
  inst.jobs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::vector<double>> cols(k, std::vector<double>(m, 0.0));
    for (auto& col : cols) {
      switch (dist.kind) {
        case EntryDistribution::Kind::uniform:
          for (double& x : col) {
            x = rng.uniform01();
          }
          break;
        case EntryDistribution::Kind::bernoulli:
          for (double& x : col) {
            x = rng.uniform01() < dist.rho ? 1.0 : 0.0;
          }
          break;
        case EntryDistribution::Kind::sparse:
          for (std::size_t i : sample_without_replacement(m, dist.support, rng)) {
            col[i] = rng.uniform01();
          }
          break;
      }
    }
    inst.jobs.emplace_back(std::move(cols));
  }
  return inst;
}

}  // namespace lpbal
