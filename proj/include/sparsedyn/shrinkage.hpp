#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "sparsedyn/sparse_spectrum.hpp"

namespace sparsedyn {

/// Soft threshold of one complex coefficient: max(|z| - lambda, 0) * z / |z|.
/// This is the minimizer of lambda*|w| + |w - z|^2 / 2 over complex w.
template <typename Scalar>
std::complex<Scalar> shrink(std::complex<Scalar> z, Scalar lambda) {
  const Scalar magnitude = std::abs(z);
  if (magnitude <= lambda) return 0;
  return z * ((magnitude - lambda) / magnitude);
}

struct ThresholdOptions {
  /// Exempt the k = 0 mode from shrinkage.
  bool protect_mean = false;
};

namespace detail {

inline void require_nonnegative(double lambda) {
  if (!(lambda >= 0.0)) throw NegativeLambda("shrinkage parameter must be >= 0, got " + std::to_string(lambda));
}

}  // namespace detail

/// Proximal map of lambda * ||.||_1 applied coefficient-wise. Coefficients with
/// |z| <= lambda are removed; the others move toward zero by lambda.
template <typename Scalar>
SparseSpectrum<Scalar> soft_threshold(const SparseSpectrum<Scalar>& spec, Scalar lambda, ThresholdOptions options = {}) {
  detail::require_nonnegative(double(lambda));
  const std::size_t mean = spec.grid().mean_index();
  SparseSpectrum<Scalar> out(spec.grid());
  for (const auto& e : spec.entries()) {
    if (options.protect_mean && e.index == mean)
      out.push_checked(e.index, e.value);
    else
      out.push_checked(e.index, shrink(e.value, lambda));
  }
  return out;
}

template <typename Scalar>
SparseSpectrum<Scalar> soft_threshold(const DenseSpectrum<Scalar>& spec, Scalar lambda, ThresholdOptions options = {}) {
  detail::require_nonnegative(double(lambda));
  const std::size_t mean = spec.grid().mean_index();
  SparseSpectrum<Scalar> out(spec.grid());
  for (std::size_t i = 0; i < spec.grid().size(); ++i) {
    const auto z = spec.coeffs()[Eigen::Index(i)];
    out.push_checked(i, options.protect_mean && i == mean ? z : shrink(z, lambda));
  }
  return out;
}

/// Shrinkage parameter as a function of the time step: either a constant or C * dt^p.
/// Convergence as dt -> 0 needs p = 1 + alpha with alpha > 0.
struct LambdaSchedule {
  enum class Mode { Fixed, PowerLaw };

  Mode mode = Mode::Fixed;
  double fixed_lambda = 0.0;
  double C = 0.0;
  double p = 2.0;

  static LambdaSchedule fixed(double lambda) {
    LambdaSchedule s{Mode::Fixed, lambda, 0.0, 2.0};
    s.validate();
    return s;
  }

  static LambdaSchedule power_law(double C, double p) {
    LambdaSchedule s{Mode::PowerLaw, 0.0, C, p};
    s.validate();
    return s;
  }

  void validate() const {
    if (mode == Mode::Fixed) {
      detail::require_nonnegative(fixed_lambda);
    } else {
      if (!(C >= 0.0)) throw NegativeLambda("power-law constant C must be >= 0");
      if (!(p > 0.0)) throw NegativeLambda("power-law exponent p must be > 0");
    }
  }

  friend bool operator==(const LambdaSchedule&, const LambdaSchedule&) = default;
};

inline double lambda_at(const LambdaSchedule& schedule, double dt) {
  if (!(dt > 0.0)) throw NonpositiveDt("time step must be > 0, got " + std::to_string(dt));
  schedule.validate();
  if (schedule.mode == LambdaSchedule::Mode::Fixed) return schedule.fixed_lambda;
  return schedule.C * std::pow(dt, schedule.p);
}

/// n_s / N_total.
template <typename Scalar>
double sparsity_fraction(const SparseSpectrum<Scalar>& spec) {
  return double(spec.size()) / double(spec.grid().size());
}

}  // namespace sparsedyn
