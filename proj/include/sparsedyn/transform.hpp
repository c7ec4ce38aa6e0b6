#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "sparsedyn/spectrum.hpp"

namespace sparsedyn {

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine = [] {
    Eigen::FFT<Scalar> e;
    e.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return e;
  }();
  return engine;
}

/// Unscaled in-place DFT over every axis of a dims-dimensional cube of side m in
/// FFT order. Forward uses e^{-ikx}, inverse e^{+ikx}.
template <typename Scalar>
void transform_cube(std::vector<std::complex<Scalar>>& data, int dims, int m, bool inverse) {
  auto& fft = fft_engine<Scalar>();
  std::vector<std::complex<Scalar>> in(m), out(m);
  auto run = [&] {
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
  };
  if (dims == 1) {
    std::copy(data.begin(), data.end(), in.begin());
    run();
    std::copy(out.begin(), out.end(), data.begin());
    return;
  }
  for (int r = 0; r < m; ++r) {
    auto row = data.begin() + std::ptrdiff_t(r) * m;
    std::copy(row, row + m, in.begin());
    run();
    std::copy(out.begin(), out.end(), row);
  }
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) in[r] = data[std::size_t(r) * m + c];
    run();
    for (int r = 0; r < m; ++r) data[std::size_t(r) * m + c] = out[r];
  }
}

/// Slot in an m-point FFT-ordered axis holding integer wavenumber k.
inline int fft_slot(int k, int m) { return k >= 0 ? k : k + m; }

}  // namespace detail

/// Slot of -k under the grid's aliasing: the Nyquist component -n/2 maps to itself.
inline std::size_t mirror_index(const GridSpec& grid, std::size_t index) {
  Wavevector k = grid.wavenumber_of(index);
  for (int d = 0; d < grid.dims(); ++d)
    if (k[d] != -grid.n_per_dim() / 2) k[d] = -k[d];
  return grid.index_of(k);
}

/// Coefficients u_k = (1/N) sum_x u(x) e^{-i k.x}; the k = 0 entry is the mean.
template <typename Scalar>
DenseSpectrum<Scalar> dft_forward(const SpatialField<Scalar>& field) {
  const GridSpec& grid = field.grid();
  const int n = grid.n_per_dim();
  std::vector<std::complex<Scalar>> work(grid.size());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] = field.values()[Eigen::Index(i)];
  detail::transform_cube(work, grid.dims(), n, false);

  const Scalar scale = Scalar(1) / Scalar(grid.size());
  DenseSpectrum<Scalar> spec(grid);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Wavevector k = grid.wavenumber_of(idx);
    std::size_t slot = std::size_t(detail::fft_slot(k[0], n));
    if (grid.dims() == 2) slot = slot * n + std::size_t(detail::fft_slot(k[1], n));
    spec.coeffs()[Eigen::Index(idx)] = work[slot] * scale;
  }
  return spec;
}

/// Complex samples sum_k u_k e^{i k.x} at the grid points, row-major.
template <typename Scalar>
std::vector<std::complex<Scalar>> dft_inverse_complex(const DenseSpectrum<Scalar>& spec) {
  const GridSpec& grid = spec.grid();
  const int n = grid.n_per_dim();
  std::vector<std::complex<Scalar>> work(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Wavevector k = grid.wavenumber_of(idx);
    std::size_t slot = std::size_t(detail::fft_slot(k[0], n));
    if (grid.dims() == 2) slot = slot * n + std::size_t(detail::fft_slot(k[1], n));
    work[slot] = spec.coeffs()[Eigen::Index(idx)];
  }
  detail::transform_cube(work, grid.dims(), n, true);
  return work;
}

/// Real field represented by a Hermitian spectrum. Throws HermitianViolation when
/// the imaginary residual exceeds 1e-8 (or 1000 ulp for low precision) relative
/// to max(1, max|u|).
template <typename Scalar>
SpatialField<Scalar> dft_inverse(const DenseSpectrum<Scalar>& spec) {
  const auto samples = dft_inverse_complex(spec);
  SpatialField<Scalar> field(spec.grid());
  Scalar max_re = 0, max_im = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    field.values()[Eigen::Index(i)] = samples[i].real();
    max_re = std::max(max_re, std::abs(samples[i].real()));
    max_im = std::max(max_im, std::abs(samples[i].imag()));
  }
  const Scalar tolerance = std::max(Scalar(1e-8), Scalar(1000) * std::numeric_limits<Scalar>::epsilon());
  if (max_im > tolerance * std::max(Scalar(1), max_re))
    throw HermitianViolation("inverse transform imaginary residual " + std::to_string(double(max_im)));
  return field;
}

/// Multiplies every coefficient by i*k_axis (angular units); the Nyquist slot of
/// that axis is zeroed.
template <typename Scalar>
DenseSpectrum<Scalar> spectral_derivative(const DenseSpectrum<Scalar>& spec, int axis) {
  const GridSpec& grid = spec.grid();
  if (axis < 0 || axis >= grid.dims())
    throw AxisOutOfRange("axis " + std::to_string(axis) + " on a " + std::to_string(grid.dims()) + "-D grid");
  DenseSpectrum<Scalar> out(grid);
  const Scalar scale = Scalar(grid.wavenumber_scale());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const int k = grid.wavenumber_of(idx)[axis];
    if (k == -grid.n_per_dim() / 2) continue;
    out.coeffs()[Eigen::Index(idx)] = std::complex<Scalar>(0, scale * Scalar(k)) * spec.coeffs()[Eigen::Index(idx)];
  }
  return out;
}

/// Largest |u(k) - conj(u(-k))| over the spectrum.
template <typename Scalar>
Scalar hermitian_residual(const DenseSpectrum<Scalar>& spec) {
  Scalar worst = 0;
  for (std::size_t idx = 0; idx < spec.grid().size(); ++idx) {
    const auto a = spec.coeffs()[Eigen::Index(idx)];
    const auto b = spec.coeffs()[Eigen::Index(mirror_index(spec.grid(), idx))];
    worst = std::max(worst, std::abs(a - std::conj(b)));
  }
  return worst;
}

template <typename Scalar>
bool is_hermitian(const DenseSpectrum<Scalar>& spec, Scalar rel_tol = Scalar(1e-12)) {
  return hermitian_residual(spec) <= rel_tol * std::max(Scalar(1e-300), spec.coeffs().cwiseAbs().maxCoeff());
}

/// Projection onto real fields: u(k) <- (u(k) + conj(u(-k))) / 2. The result is
/// exactly (bitwise) conjugate-symmetric.
template <typename Scalar>
DenseSpectrum<Scalar> hermitian_part(const DenseSpectrum<Scalar>& spec) {
  DenseSpectrum<Scalar> out(spec.grid());
  for (std::size_t idx = 0; idx < spec.grid().size(); ++idx) {
    const auto a = spec.coeffs()[Eigen::Index(idx)];
    const auto b = spec.coeffs()[Eigen::Index(mirror_index(spec.grid(), idx))];
    out.coeffs()[Eigen::Index(idx)] = Scalar(0.5) * (a + std::conj(b));
  }
  return out;
}

/// Zeroes every coefficient with a component on the unpaired mode -n/2.
template <typename Scalar>
DenseSpectrum<Scalar> drop_nyquist(DenseSpectrum<Scalar> spec) {
  for (std::size_t idx = 0; idx < spec.grid().size(); ++idx)
    if (spec.grid().is_nyquist(spec.grid().wavenumber_of(idx))) spec.coeffs()[Eigen::Index(idx)] = 0;
  return spec;
}

}  // namespace sparsedyn
