#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace lpbal {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponent p of an l_p norm over m coordinates. p is either finite and at
/// least 2, or +infinity.
class PNormParams {
 public:
  PNormParams(double p, std::size_t m);

  static PNormParams infinity(std::size_t m) { return PNormParams(kInfinity, m); }

  double p() const noexcept { return p_; }
  std::size_t m() const noexcept { return m_; }
  bool is_infinite() const noexcept { return p_ == kInfinity; }

  /// Hoelder conjugate p / (p - 1). Throws std::domain_error for p = inf.
  double q() const;

 private:
  double p_;
  std::size_t m_;
};

/// Parameters of the smoothed norm psi_{eps,p}(u) = (p/eps) ||1 + eps u / p||_p - p/eps.
class SmoothingParams {
 public:
  /// `base` must have finite p; eps must lie in (0, 1].
  SmoothingParams(PNormParams base, double eps);

  const PNormParams& base() const noexcept { return base_; }
  double p() const noexcept { return base_.p(); }
  std::size_t m() const noexcept { return base_.m(); }
  double eps() const noexcept { return eps_; }

  /// Additive radius p (m^{1/p} - 1) / eps, recomputed on every call.
  double radius() const;

 private:
  PNormParams base_;
  double eps_;
};

/// Nonnegative vector of machine loads.
class LoadVector {
 public:
  explicit LoadVector(std::size_t m) : entries_(m, 0.0) {}
  /// Throws OutOfRange if any entry is negative or not finite.
  explicit LoadVector(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }
  const std::vector<double>& vector() const noexcept { return entries_; }

  /// Adds a nonnegative vector of the same length.
  void add(std::span<const double> delta);

  friend bool operator==(const LoadVector&, const LoadVector&) = default;

 private:
  std::vector<double> entries_;
};

/// Nonnegative element of the dual cone, normally with ||.||_q <= 1.
class DualVector {
 public:
  explicit DualVector(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }

 private:
  std::vector<double> entries_;
};

double dot(std::span<const double> a, std::span<const double> b);

/// l_p norm with max-scaling; p may be +infinity.
double lp_norm(std::span<const double> u, double p);
double lp_norm(const LoadVector& u, const PNormParams& params);

/// ||a + b||_p without materializing the sum.
double lp_norm_of_sum(std::span<const double> a, std::span<const double> b, double p);

double smoothing_radius(double p, std::size_t m, double eps);

double psi(std::span<const double> u, const SmoothingParams& sp);
double psi(const LoadVector& u, const SmoothingParams& sp);
double psi_of_sum(std::span<const double> a, std::span<const double> b,
                  const SmoothingParams& sp);

DualVector psi_gradient(std::span<const double> u, const SmoothingParams& sp);
DualVector psi_gradient(const LoadVector& u, const SmoothingParams& sp);

/// The dual vector g(u) = (u_i / ||u||_p)^{p-1} from the l_p linearization
/// estimate. Throws ZeroVector for u = 0 and std::domain_error for p = inf.
DualVector linlp_vector(const LoadVector& u, const PNormParams& params);

/// ||u||_p + <g(u), v> + (p - 1) ||v||_p^2 / (2 ||u||_p), an upper bound on
/// ||u + v||_p for nonnegative u != 0 and v.
double linlp_bound(const LoadVector& u, const LoadVector& v, const PNormParams& params);

/// max(2, ln(m) / eps): finite surrogate exponent for l_infinity.
double effective_p(std::size_t m, double eps);

}  // namespace lpbal
