#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "sparsedyn/sparse_spectrum.hpp"

namespace sparsedyn {

/// Linear convolution c(k) = sum_{k1 + k2 = k} a(k1) b(k2) restricted to the
/// resolved box; products landing outside are discarded (Galerkin truncation,
/// no periodic wrap). Cost is O(n_s(a) * n_s(b)). For every output slot the
/// terms are summed in (a-entry, b-entry) order, so results are deterministic.
template <typename Scalar>
SparseSpectrum<Scalar> sparse_convolve(const SparseSpectrum<Scalar>& a, const SparseSpectrum<Scalar>& b) {
  using Complex = std::complex<Scalar>;
  using Entry = typename SparseSpectrum<Scalar>::Entry;
  require_same_grid(a.grid(), b.grid());
  const GridSpec& grid = a.grid();
  const int n = grid.n_per_dim();
  const int half = n / 2;
  const auto& eb = b.entries();

  std::vector<int> kb0(eb.size()), kb1(eb.size());
  for (std::size_t j = 0; j < eb.size(); ++j) {
    const Wavevector k = grid.wavenumber_of(eb[j].index);
    kb0[j] = k[0];
    kb1[j] = k[1];
  }

  // Emits every in-box product; b entries are sorted by their first component,
  // so the admissible range for it is contiguous.
  auto for_each_product = [&](auto&& emit) {
    for (const auto& ea : a.entries()) {
      const Wavevector ka = grid.wavenumber_of(ea.index);
      const auto first = std::lower_bound(kb0.begin(), kb0.end(), -half - ka[0]);
      const auto last = std::upper_bound(first, kb0.end(), half - 1 - ka[0]);
      const std::size_t j0 = std::size_t(first - kb0.begin()), j1 = std::size_t(last - kb0.begin());
      if (grid.dims() == 1) {
        for (std::size_t j = j0; j < j1; ++j) emit(std::size_t(ka[0] + kb0[j] + half), ea.value * eb[j].value);
      } else {
        for (std::size_t j = j0; j < j1; ++j) {
          const int s1 = ka[1] + kb1[j];
          if (s1 < -half || s1 > half - 1) continue;
          emit(std::size_t(ka[0] + kb0[j] + half) * std::size_t(n) + std::size_t(s1 + half), ea.value * eb[j].value);
        }
      }
    }
  };

  SparseSpectrum<Scalar> out(grid);
  const std::size_t pairs = a.size() * b.size();
  if (pairs * 8 <= grid.size()) {
    std::vector<Entry> products;
    products.reserve(pairs);
    for_each_product([&](std::size_t slot, Complex v) { products.push_back({slot, v}); });
    std::stable_sort(products.begin(), products.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
    for (std::size_t i = 0; i < products.size();) {
      Complex sum = 0;
      std::size_t j = i;
      for (; j < products.size() && products[j].index == products[i].index; ++j) sum += products[j].value;
      out.push_checked(products[i].index, sum);
      i = j;
    }
    return out;
  }

  std::vector<Complex> acc(grid.size(), Complex(0));
  std::vector<unsigned char> touched(grid.size(), 0);
  for_each_product([&](std::size_t slot, Complex v) {
    acc[slot] += v;
    touched[slot] = 1;
  });
  for (std::size_t slot = 0; slot < grid.size(); ++slot)
    if (touched[slot]) out.push_checked(slot, acc[slot]);
  return out;
}

/// Transform-based route to the same truncated convolution: both factors are
/// zero-padded to 3n/2 points per dimension, multiplied pointwise and
/// transformed back. The padding is exactly enough that no product aliases
/// into the resolved box.
template <typename Scalar>
class PaddedProduct {
 public:
  using Complex = std::complex<Scalar>;
  using Samples = std::vector<Complex>;

  explicit PaddedProduct(GridSpec grid) : grid_(grid), m_(3 * grid.n_per_dim() / 2) {}

  const GridSpec& grid() const { return grid_; }
  std::size_t padded_size() const { return grid_.dims() == 1 ? std::size_t(m_) : std::size_t(m_) * std::size_t(m_); }

  /// Samples of sum_k u_k e^{ikx} on the padded grid.
  Samples to_physical(const DenseSpectrum<Scalar>& spec) const {
    require_same_grid(grid_, spec.grid());
    Samples work(padded_size(), Complex(0));
    for (std::size_t idx = 0; idx < grid_.size(); ++idx) work[padded_slot(idx)] = spec.coeffs()[Eigen::Index(idx)];
    detail::transform_cube(work, grid_.dims(), m_, true);
    return work;
  }

  /// Coefficients of padded samples, restricted to the resolved box.
  DenseSpectrum<Scalar> to_spectral(Samples work) const {
    detail::transform_cube(work, grid_.dims(), m_, false);
    const Scalar scale = Scalar(1) / Scalar(padded_size());
    DenseSpectrum<Scalar> out(grid_);
    for (std::size_t idx = 0; idx < grid_.size(); ++idx) out.coeffs()[Eigen::Index(idx)] = work[padded_slot(idx)] * scale;
    return out;
  }

 private:
  std::size_t padded_slot(std::size_t idx) const {
    const Wavevector k = grid_.wavenumber_of(idx);
    std::size_t slot = std::size_t(detail::fft_slot(k[0], m_));
    if (grid_.dims() == 2) slot = slot * std::size_t(m_) + std::size_t(detail::fft_slot(k[1], m_));
    return slot;
  }

  GridSpec grid_;
  int m_;
};

/// Dense truncated convolution through the padded transform.
template <typename Scalar>
DenseSpectrum<Scalar> dense_convolve(const DenseSpectrum<Scalar>& a, const DenseSpectrum<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  PaddedProduct<Scalar> padded(a.grid());
  auto pa = padded.to_physical(a);
  const auto pb = padded.to_physical(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  return padded.to_spectral(std::move(pa));
}

}  // namespace sparsedyn
