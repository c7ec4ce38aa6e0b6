#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "sparsedyn/transform.hpp"

namespace sparsedyn {

/// Closed-form coefficient a(x) or forcing f(x, y) used by the model problems.
///
/// The oscillatory formulas carry a tunable fast frequency m; the defaults are
/// the values of the reference experiments.
///   transport:  a(x)   = 1/4   exp((0.6  + 0.2 cos x) / (1 + 0.7 sin(m x))),  m = 64
///   diffusion:  a(x)   = 1/10  exp((0.6  + 0.2 cos x) / (1 + 0.7 sin(m x))),  m = 256
///   burgers:    a(x)   = 0.075 exp((0.65 + 0.2 cos x) / (1 + 0.7 sin(m x))),  m = 128
///   vorticity:  f(x,y) = 0.025 (sin(m x) + sin(m y)) / (1 + 0.25 (cos(2m x) + cos(2m y))),  m = 32
///   constant:   value everywhere
///   none:       zero
struct CoefficientSpec {
  enum class Kind { None, Constant, Transport, Diffusion, Burgers, VorticityForcing };

  Kind kind = Kind::None;
  double value = 0.0;  // Constant only
  int frequency = 0;   // oscillatory kinds; 0 selects the default

  static CoefficientSpec none() { return {}; }
  static CoefficientSpec constant(double c) { return {Kind::Constant, c, 0}; }
  static CoefficientSpec transport(int m = 0) { return {Kind::Transport, 0.0, m}; }
  static CoefficientSpec diffusion(int m = 0) { return {Kind::Diffusion, 0.0, m}; }
  static CoefficientSpec burgers(int m = 0) { return {Kind::Burgers, 0.0, m}; }
  static CoefficientSpec vorticity_forcing(int m = 0) { return {Kind::VorticityForcing, 0.0, m}; }

  int effective_frequency() const {
    if (frequency != 0) return frequency;
    switch (kind) {
      case Kind::Transport: return 64;
      case Kind::Diffusion: return 256;
      case Kind::Burgers: return 128;
      case Kind::VorticityForcing: return 32;
      default: return 0;
    }
  }

  /// Highest frequency appearing explicitly in the formula.
  int max_embedded_frequency() const {
    switch (kind) {
      case Kind::None:
      case Kind::Constant: return 0;
      case Kind::VorticityForcing: return 2 * effective_frequency();
      default: return std::max(1, effective_frequency());
    }
  }

  bool two_dimensional() const { return kind == Kind::VorticityForcing; }

  friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;
};

inline std::string_view to_string(CoefficientSpec::Kind kind) {
  switch (kind) {
    case CoefficientSpec::Kind::None: return "none";
    case CoefficientSpec::Kind::Constant: return "constant";
    case CoefficientSpec::Kind::Transport: return "transport";
    case CoefficientSpec::Kind::Diffusion: return "diffusion";
    case CoefficientSpec::Kind::Burgers: return "burgers";
    case CoefficientSpec::Kind::VorticityForcing: return "vorticity_forcing";
  }
  return "none";
}

namespace detail {

inline double oscillatory_exp(double prefactor, double offset, double x, int m) {
  return prefactor * std::exp((offset + 0.2 * std::cos(x)) / (1.0 + 0.7 * std::sin(m * x)));
}

}  // namespace detail

/// Samples the coefficient on the grid (real field).
template <typename Scalar = double>
SpatialField<Scalar> sample_coefficient(const CoefficientSpec& spec, const GridSpec& grid) {
  using Kind = CoefficientSpec::Kind;
  if (grid.n_per_dim() <= 2 * spec.max_embedded_frequency())
    throw UnderResolved("coefficient '" + std::string(to_string(spec.kind)) + "' embeds frequency " +
                        std::to_string(spec.max_embedded_frequency()) + ", grid has only " +
                        std::to_string(grid.n_per_dim()) + " points per dimension");
  if (spec.two_dimensional() && grid.dims() != 2)
    throw GridError("coefficient '" + std::string(to_string(spec.kind)) + "' needs a 2-D grid");
  if (!spec.two_dimensional() && spec.kind != Kind::Constant && spec.kind != Kind::None && grid.dims() != 1)
    throw GridError("coefficient '" + std::string(to_string(spec.kind)) + "' needs a 1-D grid");

  const int m = spec.effective_frequency();
  switch (spec.kind) {
    case Kind::None:
      return SpatialField<Scalar>(grid);
    case Kind::Constant:
      return SpatialField<Scalar>(grid, RealVector<Scalar>::Constant(Eigen::Index(grid.size()), Scalar(spec.value)));
    case Kind::Transport:
      return SpatialField<Scalar>::sample(grid, [m](double x) { return detail::oscillatory_exp(0.25, 0.6, x, m); });
    case Kind::Diffusion:
      return SpatialField<Scalar>::sample(grid, [m](double x) { return detail::oscillatory_exp(0.1, 0.6, x, m); });
    case Kind::Burgers:
      return SpatialField<Scalar>::sample(grid, [m](double x) { return detail::oscillatory_exp(0.075, 0.65, x, m); });
    case Kind::VorticityForcing:
      return SpatialField<Scalar>::sample(grid, [m](double x, double y) {
        return 0.025 * (std::sin(m * x) + std::sin(m * y)) /
               (1.0 + 0.25 * (std::cos(2 * m * x) + std::cos(2 * m * y)));
      });
  }
  return SpatialField<Scalar>(grid);
}

/// Spectrum of the sampled coefficient.
template <typename Scalar = double>
DenseSpectrum<Scalar> coefficient_field_of(const CoefficientSpec& spec, const GridSpec& grid) {
  if (spec.kind == CoefficientSpec::Kind::Constant) {
    DenseSpectrum<Scalar> out(grid);
    out.coeffs()[Eigen::Index(grid.mean_index())] = Scalar(spec.value);
    return out;
  }
  return dft_forward(sample_coefficient<Scalar>(spec, grid));
}

}  // namespace sparsedyn
