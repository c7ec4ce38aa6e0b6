#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "sparsedyn/sparse_spectrum.hpp"

namespace sparsedyn {

/// Named initial data. All generators are frozen so that runs are reproducible:
///   gauss_bump    periodized Gaussian exp(-|x - c|^2 / (2 w^2)) centred at pi (or (pi, pi)), default w = 0.5
///   sine_low      sum of cos/sin modes with every |k_d| <= 3, amplitudes uniform in [-A/2, A/2]
///                 drawn from mt19937_64(seed)
///   two_vortices  +A and -A periodized Gaussian patches of width w at (pi/2, pi) and (3pi/2, pi), default w = 0.4
struct InitialSpec {
  enum class Kind { GaussBump, SineLow, TwoVortices };

  Kind kind = Kind::GaussBump;
  double width = 0.0;  // 0 selects the generator default
  double amplitude = 1.0;
  std::uint64_t seed = 42;

  double effective_width() const {
    if (width > 0.0) return width;
    return kind == Kind::TwoVortices ? 0.4 : 0.5;
  }

  friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

inline std::string_view to_string(InitialSpec::Kind kind) {
  switch (kind) {
    case InitialSpec::Kind::GaussBump: return "gauss_bump";
    case InitialSpec::Kind::SineLow: return "sine_low";
    case InitialSpec::Kind::TwoVortices: return "two_vortices";
  }
  return "gauss_bump";
}

inline InitialSpec::Kind initial_kind_from_name(std::string_view name) {
  if (name == "gauss_bump") return InitialSpec::Kind::GaussBump;
  if (name == "sine_low") return InitialSpec::Kind::SineLow;
  if (name == "two_vortices") return InitialSpec::Kind::TwoVortices;
  throw UnknownInitialSpec("unknown initial condition '" + std::string(name) + "'");
}

namespace detail {

inline double periodized_gaussian_1d(double x, double centre, double width, double period) {
  double sum = 0.0;
  for (int image = -3; image <= 3; ++image) {
    const double d = x - centre + image * period;
    sum += std::exp(-d * d / (2.0 * width * width));
  }
  return sum;
}

inline double periodized_gaussian_2d(double x, double y, double cx, double cy, double width, double period) {
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      const double dx = x - cx + i * period, dy = y - cy + j * period;
      sum += std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
    }
  return sum;
}

/// Uniform double in [0, 1) from the top 53 bits; independent of the standard
/// library's distribution implementation.
inline double unit_uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

/// Real-field spectrum prepared as solver state: Nyquist modes removed and
/// conjugate symmetry made exact.
template <typename Scalar>
SparseSpectrum<Scalar> as_real_state(const DenseSpectrum<Scalar>& dense) {
  return hermitian_part(drop_nyquist(SparseSpectrum<Scalar>::from_dense(dense)));
}

}  // namespace detail

template <typename Scalar = double>
SparseSpectrum<Scalar> initial_condition(const InitialSpec& spec, const GridSpec& grid) {
  const double period = grid.domain_length();
  const double w = spec.effective_width();
  const double a = spec.amplitude;
  switch (spec.kind) {
    case InitialSpec::Kind::GaussBump: {
      const double c = period / 2.0;
      if (grid.dims() == 1)
        return detail::as_real_state(dft_forward(SpatialField<Scalar>::sample(
            grid, [&](double x) { return a * detail::periodized_gaussian_1d(x, c, w, period); })));
      return detail::as_real_state(dft_forward(SpatialField<Scalar>::sample(
          grid, [&](double x, double y) { return a * detail::periodized_gaussian_2d(x, y, c, c, w, period); })));
    }
    case InitialSpec::Kind::TwoVortices: {
      if (grid.dims() != 2) throw NotTwoDimensional("two_vortices needs a 2-D grid");
      const double c = period / 2.0, offset = period / 4.0;
      return detail::as_real_state(dft_forward(SpatialField<Scalar>::sample(grid, [&](double x, double y) {
        return a * (detail::periodized_gaussian_2d(x, y, c - offset, c, w, period) -
                    detail::periodized_gaussian_2d(x, y, c + offset, c, w, period));
      })));
    }
    case InitialSpec::Kind::SineLow: {
      // Built directly in coefficient space so the support is exactly |k_d| <= 3.
      std::mt19937_64 rng(spec.seed);
      std::vector<std::pair<Wavevector, std::complex<Scalar>>> modes;
      auto add_pair = [&](Wavevector k) {
        const double cos_amp = a * (detail::unit_uniform(rng) - 0.5);
        const double sin_amp = a * (detail::unit_uniform(rng) - 0.5);
        // c cos(k.x) + s sin(k.x) = (c - i s)/2 e^{ik.x} + (c + i s)/2 e^{-ik.x}
        const std::complex<Scalar> z(Scalar(cos_amp / 2), Scalar(-sin_amp / 2));
        modes.push_back({k, z});
        modes.push_back({Wavevector{-k[0], -k[1]}, std::conj(z)});
      };
      if (grid.dims() == 1) {
        for (int k = 1; k <= 3; ++k) add_pair({k, 0});
      } else {
        for (int k0 = 0; k0 <= 3; ++k0)
          for (int k1 = -3; k1 <= 3; ++k1)
            if (k0 > 0 || k1 > 0) add_pair({k0, k1});
      }
      return SparseSpectrum<Scalar>::from_wavenumbers(grid, modes);
    }
  }
  throw UnknownInitialSpec("unhandled initial condition kind");
}

}  // namespace sparsedyn
