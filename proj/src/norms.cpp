#include "lpbal/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lpbal/errors.hpp"

namespace lpbal {

namespace {

void require_finite_p(double p, const char* who) {
  if (p == kInfinity) {
    throw std::domain_error(std::string(who) + ": p must be finite (use effective_p)");
  }
}

// Log-domain summary of the vector a_i = 1 + eps u_i / p:
// log_max = max_i ln a_i and log_sum = ln sum_i (a_i / a_max)^p.
struct ShiftedLogSum {
  double u_max = 0.0;
  double log_max = 0.0;
  double log_sum = 0.0;
};

template <class Entry>
ShiftedLogSum shifted_log_sum(std::size_t m, Entry entry, const SmoothingParams& sp) {
  if (m != sp.m()) {
    throw std::invalid_argument("psi: vector length differs from m");
  }
  const double p = sp.p();
  const double scale = sp.eps() / p;
  ShiftedLogSum out;
  for (std::size_t i = 0; i < m; ++i) {
    out.u_max = std::max(out.u_max, entry(i));
  }
  out.log_max = std::log1p(scale * out.u_max);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sum += std::exp(p * (std::log1p(scale * entry(i)) - out.log_max));
  }
  out.log_sum = std::log(sum);
  return out;
}

double psi_from(const ShiftedLogSum& s, const SmoothingParams& sp) {
  // (p/eps)(a_max S^{1/p} - 1) with a_max - 1 = eps u_max / p kept exact.
  const double p = sp.p();
  const double a_max = 1.0 + sp.eps() * s.u_max / p;
  return s.u_max + (p / sp.eps()) * a_max * std::expm1(s.log_sum / p);
}

template <class Entry>
std::vector<double> gradient_from(std::size_t m, Entry entry, const ShiftedLogSum& s,
                                  const SmoothingParams& sp) {
  const double p = sp.p();
  const double scale = sp.eps() / p;
  const double denom_log = (p - 1.0) / p * s.log_sum;
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i] = std::exp((p - 1.0) * (std::log1p(scale * entry(i)) - s.log_max) - denom_log);
  }
  return g;
}

template <class Entry>
double lp_norm_impl(std::size_t m, Entry entry, double p) {
  double u_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    u_max = std::max(u_max, entry(i));
  }
  if (p == kInfinity || u_max == 0.0) {
    return u_max;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = entry(i);
    if (x > 0.0) {
      sum += std::pow(x / u_max, p);
    }
  }
  return u_max * std::pow(sum, 1.0 / p);
}

}  // namespace

PNormParams::PNormParams(double p, std::size_t m) : p_(p), m_(m) {
  if (!(p >= 2.0)) {
    throw std::invalid_argument("PNormParams: p must be >= 2 or infinity");
  }
  if (m < 1) {
    throw std::invalid_argument("PNormParams: m must be >= 1");
  }
}

double PNormParams::q() const {
  require_finite_p(p_, "PNormParams::q");
  return p_ / (p_ - 1.0);
}

SmoothingParams::SmoothingParams(PNormParams base, double eps) : base_(base), eps_(eps) {
  require_finite_p(base.p(), "SmoothingParams");
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("SmoothingParams: eps must lie in (0, 1]");
  }
}

double SmoothingParams::radius() const { return smoothing_radius(p(), m(), eps_); }

LoadVector::LoadVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double x : entries_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw OutOfRange("LoadVector: entries must be finite and nonnegative");
    }
  }
}

void LoadVector::add(std::span<const double> delta) {
  if (delta.size() != entries_.size()) {
    throw std::invalid_argument("LoadVector::add: length mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += delta[i];
  }
}

DualVector::DualVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double x : entries_) {
    if (!(x >= 0.0)) {
      throw OutOfRange("DualVector: entries must be nonnegative");
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double lp_norm(std::span<const double> u, double p) {
  return lp_norm_impl(u.size(), [u](std::size_t i) { return u[i]; }, p);
}

double lp_norm(const LoadVector& u, const PNormParams& params) {
  return lp_norm(u.values(), params.p());
}

double lp_norm_of_sum(std::span<const double> a, std::span<const double> b, double p) {
  return lp_norm_impl(a.size(), [a, b](std::size_t i) { return a[i] + b[i]; }, p);
}

double smoothing_radius(double p, std::size_t m, double eps) {
  return p * std::expm1(std::log(static_cast<double>(m)) / p) / eps;
}

double psi(std::span<const double> u, const SmoothingParams& sp) {
  const auto s = shifted_log_sum(u.size(), [u](std::size_t i) { return u[i]; }, sp);
  return psi_from(s, sp);
}

double psi(const LoadVector& u, const SmoothingParams& sp) { return psi(u.values(), sp); }

double psi_of_sum(std::span<const double> a, std::span<const double> b,
                  const SmoothingParams& sp) {
  auto entry = [a, b](std::size_t i) { return a[i] + b[i]; };
  return psi_from(shifted_log_sum(a.size(), entry, sp), sp);
}

DualVector psi_gradient(std::span<const double> u, const SmoothingParams& sp) {
  auto entry = [u](std::size_t i) { return u[i]; };
  const auto s = shifted_log_sum(u.size(), entry, sp);
  return DualVector(gradient_from(u.size(), entry, s, sp));
}

DualVector psi_gradient(const LoadVector& u, const SmoothingParams& sp) {
  return psi_gradient(u.values(), sp);
}

DualVector linlp_vector(const LoadVector& u, const PNormParams& params) {
  require_finite_p(params.p(), "linlp_vector");
  const double p = params.p();
  const auto x = u.values();
  const double u_max = x.empty() ? 0.0 : *std::max_element(x.begin(), x.end());
  if (u_max == 0.0) {
    throw ZeroVector("linlp_vector: u must be nonzero");
  }
  double sum = 0.0;
  for (double xi : x) {
    if (xi > 0.0) {
      sum += std::pow(xi / u_max, p);
    }
  }
  // g_i = (x_i / ||x||_p)^{p-1} = (x_i / x_max)^{p-1} / S^{(p-1)/p}
  const double denom = std::pow(sum, (p - 1.0) / p);
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      g[i] = std::pow(x[i] / u_max, p - 1.0) / denom;
    }
  }
  return DualVector(std::move(g));
}

double linlp_bound(const LoadVector& u, const LoadVector& v, const PNormParams& params) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("linlp_bound: length mismatch");
  }
  const auto g = linlp_vector(u, params);
  const double p = params.p();
  const double nu = lp_norm(u, params);
  const double nv = lp_norm(v, params);
  return nu + dot(g.values(), v.values()) + (p - 1.0) * nv * nv / (2.0 * nu);
}

double effective_p(std::size_t m, double eps) {
  if (m < 2) {
    throw std::invalid_argument("effective_p: m must be >= 2");
  }
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("effective_p: eps must lie in (0, 1]");
  }
  return std::max(2.0, std::log(static_cast<double>(m)) / eps);
}

}  // namespace lpbal
