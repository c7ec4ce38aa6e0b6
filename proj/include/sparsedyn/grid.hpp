#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "sparsedyn/errors.hpp"

namespace sparsedyn {

/// Integer wavenumber per dimension. The second component is 0 on 1-D grids.
using Wavevector = std::array<int, 2>;

/// Periodic uniform grid, 1-D or 2-D, with the same resolution in every dimension.
///
/// Spectral coefficients are stored in centered order: along each dimension the
/// storage slot i holds wavenumber i - n/2, so slot 0 is the unpaired Nyquist
/// mode -n/2 and slot n/2 is the mean. Multi-dimensional data is row-major with
/// dimension 0 varying slowest, for both spatial samples and coefficients.
class GridSpec {
 public:
  GridSpec(int dims, int n_per_dim, double domain_length = 2.0 * std::numbers::pi)
      : dims_(dims), n_(n_per_dim), length_(domain_length), dx_(domain_length / n_per_dim) {
    if (dims != 1 && dims != 2) throw GridError("grid dims must be 1 or 2, got " + std::to_string(dims));
    if (n_per_dim < 4 || (n_per_dim & (n_per_dim - 1)) != 0)
      throw GridError("n_per_dim must be a power of two >= 4, got " + std::to_string(n_per_dim));
    if (!(domain_length > 0.0) || !std::isfinite(domain_length))
      throw GridError("domain_length must be positive and finite");
  }

  int dims() const { return dims_; }
  int n_per_dim() const { return n_; }
  double domain_length() const { return length_; }
  double dx() const { return dx_; }

  /// Number of points (and of Fourier coefficients).
  std::size_t size() const { return dims_ == 1 ? std::size_t(n_) : std::size_t(n_) * std::size_t(n_); }

  /// Product of dx over dimensions; the quadrature weight of one sample.
  double cell_volume() const { return dims_ == 1 ? dx_ : dx_ * dx_; }
  double volume() const { return dims_ == 1 ? length_ : length_ * length_; }

  /// Scale from integer wavenumber to angular wavenumber (1 when the period is 2*pi).
  double wavenumber_scale() const { return 2.0 * std::numbers::pi / length_; }

  int min_wavenumber() const { return -n_ / 2; }
  int max_wavenumber() const { return n_ / 2 - 1; }

  bool contains(const Wavevector& k) const {
    for (int d = 0; d < dims_; ++d)
      if (k[d] < -n_ / 2 || k[d] > n_ / 2 - 1) return false;
    return dims_ == 2 || k[1] == 0;
  }

  /// True when any component sits on the unpaired mode -n/2.
  bool is_nyquist(const Wavevector& k) const {
    return k[0] == -n_ / 2 || (dims_ == 2 && k[1] == -n_ / 2);
  }

  /// Storage slot of a wavenumber; precondition: contains(k).
  std::size_t index_of(const Wavevector& k) const {
    const std::size_t i0 = std::size_t(k[0] + n_ / 2);
    if (dims_ == 1) return i0;
    return i0 * std::size_t(n_) + std::size_t(k[1] + n_ / 2);
  }

  /// Wavenumber of a storage slot; precondition: index < size().
  Wavevector wavenumber_of(std::size_t index) const {
    if (dims_ == 1) return {int(index) - n_ / 2, 0};
    return {int(index / std::size_t(n_)) - n_ / 2, int(index % std::size_t(n_)) - n_ / 2};
  }

  std::size_t mean_index() const { return index_of({0, 0}); }

  /// Physical coordinate of sample i along one dimension.
  double coordinate(int i) const { return i * dx_; }

  std::string shape_string() const {
    return dims_ == 1 ? std::to_string(n_) : std::to_string(n_) + "," + std::to_string(n_);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dims_;
  int n_;
  double length_;
  double dx_;
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw GridMismatch("grid " + a.shape_string() + " does not match grid " + b.shape_string());
}

}  // namespace sparsedyn
