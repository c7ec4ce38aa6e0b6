#pragma once

#include <Eigen/Core>
#include <complex>
#include <concepts>
#include <utility>

#include "sparsedyn/grid.hpp"

namespace sparsedyn {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Real samples u(x) on every grid point, row-major over the dimensions.
template <typename Scalar>
class SpatialField {
 public:
  explicit SpatialField(GridSpec grid) : grid_(grid), values_(RealVector<Scalar>::Zero(Eigen::Index(grid.size()))) {}

  SpatialField(GridSpec grid, RealVector<Scalar> values) : grid_(grid), values_(std::move(values)) {
    if (std::size_t(values_.size()) != grid_.size())
      throw GridMismatch("field length " + std::to_string(values_.size()) + " != grid size " +
                         std::to_string(grid_.size()));
  }

  const GridSpec& grid() const { return grid_; }
  const RealVector<Scalar>& values() const { return values_; }
  RealVector<Scalar>& values() { return values_; }

  Scalar operator()(int i) const { return values_[i]; }
  Scalar operator()(int i, int j) const { return values_[Eigen::Index(i) * grid_.n_per_dim() + j]; }

  /// Samples f(x) (1-D) or f(x, y) (2-D) at the grid points.
  template <typename Fn>
  static SpatialField sample(const GridSpec& grid, Fn&& fn) {
    SpatialField field(grid);
    const int n = grid.n_per_dim();
    if constexpr (std::invocable<Fn, double>) {
      if (grid.dims() != 1) throw GridError("one-argument sampler on a 2-D grid");
      for (int i = 0; i < n; ++i) field.values_[i] = Scalar(fn(grid.coordinate(i)));
    } else {
      if (grid.dims() != 2) throw GridError("two-argument sampler on a 1-D grid");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          field.values_[Eigen::Index(i) * n + j] = Scalar(fn(grid.coordinate(i), grid.coordinate(j)));
    }
    return field;
  }

 private:
  GridSpec grid_;
  RealVector<Scalar> values_;
};

/// Complex amplitude for every resolved wavenumber, in the centered layout of GridSpec.
template <typename Scalar>
class DenseSpectrum {
 public:
  using Complex = std::complex<Scalar>;

  explicit DenseSpectrum(GridSpec grid)
      : grid_(grid), coeffs_(ComplexVector<Scalar>::Zero(Eigen::Index(grid.size()))) {}

  DenseSpectrum(GridSpec grid, ComplexVector<Scalar> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (std::size_t(coeffs_.size()) != grid_.size())
      throw GridMismatch("spectrum length " + std::to_string(coeffs_.size()) + " != grid size " +
                         std::to_string(grid_.size()));
  }

  const GridSpec& grid() const { return grid_; }
  const ComplexVector<Scalar>& coeffs() const { return coeffs_; }
  ComplexVector<Scalar>& coeffs() { return coeffs_; }

  const Complex& operator[](const Wavevector& k) const { return coeffs_[Eigen::Index(grid_.index_of(k))]; }
  Complex& operator[](const Wavevector& k) { return coeffs_[Eigen::Index(grid_.index_of(k))]; }

  Complex mean() const { return coeffs_[Eigen::Index(grid_.mean_index())]; }

 private:
  GridSpec grid_;
  ComplexVector<Scalar> coeffs_;
};

}  // namespace sparsedyn
