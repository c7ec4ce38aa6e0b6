#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "sparsedyn/transform.hpp"

namespace sparsedyn {

/// Magnitudes below this are true underflow and never stored.
template <typename Scalar>
constexpr Scalar underflow_threshold() {
  return std::max(Scalar(1e-300), std::numeric_limits<Scalar>::min());
}

/// Nonzero spectral coefficients only, kept sorted by storage slot of the grid.
///
/// Sorting by slot is lexicographic order of the wavenumber vector, which gives
/// deterministic iteration and serialization.
template <typename Scalar>
class SparseSpectrum {
 public:
  using Complex = std::complex<Scalar>;

  struct Entry {
    std::size_t index;
    Complex value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit SparseSpectrum(GridSpec grid) : grid_(grid) {}

  /// Builds from arbitrary entries: sorts, sums duplicate slots in input order,
  /// and drops underflowed values.
  static SparseSpectrum from_entries(GridSpec grid, std::vector<Entry> entries) {
    for (const auto& e : entries)
      if (e.index >= grid.size()) throw GridMismatch("entry slot outside the grid");
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseSpectrum out(grid);
    out.entries_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
      Complex sum = 0;
      std::size_t j = i;
      for (; j < entries.size() && entries[j].index == entries[i].index; ++j) sum += entries[j].value;
      out.push_checked(entries[i].index, sum);
      i = j;
    }
    return out;
  }

  static SparseSpectrum from_wavenumbers(GridSpec grid, const std::vector<std::pair<Wavevector, Complex>>& modes) {
    std::vector<Entry> entries;
    for (const auto& [k, v] : modes) {
      if (!grid.contains(k)) throw GridMismatch("wavenumber outside the resolved box");
      entries.push_back({grid.index_of(k), v});
    }
    return from_entries(grid, std::move(entries));
  }

  static SparseSpectrum from_dense(const DenseSpectrum<Scalar>& dense) {
    SparseSpectrum out(dense.grid());
    for (std::size_t i = 0; i < dense.grid().size(); ++i) out.push_checked(i, dense.coeffs()[Eigen::Index(i)]);
    return out;
  }

  DenseSpectrum<Scalar> to_dense() const {
    DenseSpectrum<Scalar> out(grid_);
    for (const auto& e : entries_) out.coeffs()[Eigen::Index(e.index)] = e.value;
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Number of stored (nonzero) coefficients, n_s.
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<Complex> find(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.index < i; });
    if (it == entries_.end() || it->index != index) return std::nullopt;
    return it->value;
  }

  /// Coefficient at k, zero when absent.
  Complex at(const Wavevector& k) const { return find(grid_.index_of(k)).value_or(Complex(0)); }

  Complex mean() const { return find(grid_.mean_index()).value_or(Complex(0)); }

  /// Appends an entry whose slot is larger than every stored slot; underflow is dropped.
  void push_checked(std::size_t index, Complex value) {
    if (std::abs(value) < underflow_threshold<Scalar>()) return;
    entries_.push_back({index, value});
  }

  friend bool operator==(const SparseSpectrum& a, const SparseSpectrum& b) {
    return a.grid_ == b.grid_ && a.entries_ == b.entries_;
  }

 private:
  GridSpec grid_;
  std::vector<Entry> entries_;
};

/// Applies fn(k, z) -> z' to every stored entry (support can only shrink).
template <typename Scalar, typename Fn>
SparseSpectrum<Scalar> map_entries(const SparseSpectrum<Scalar>& spec, Fn&& fn) {
  SparseSpectrum<Scalar> out(spec.grid());
  for (const auto& e : spec.entries()) out.push_checked(e.index, fn(spec.grid().wavenumber_of(e.index), e.value));
  return out;
}

/// alpha * a + beta * b over the union of supports.
template <typename Scalar>
SparseSpectrum<Scalar> linear_combination(std::complex<Scalar> alpha, const SparseSpectrum<Scalar>& a,
                                          std::complex<Scalar> beta, const SparseSpectrum<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  SparseSpectrum<Scalar> out(a.grid());
  auto ia = a.entries().begin(), ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->index < ib->index)) {
      out.push_checked(ia->index, alpha * ia->value);
      ++ia;
    } else if (ia == a.entries().end() || ib->index < ia->index) {
      out.push_checked(ib->index, beta * ib->value);
      ++ib;
    } else {
      out.push_checked(ia->index, alpha * ia->value + beta * ib->value);
      ++ia;
      ++ib;
    }
  }
  return out;
}

template <typename Scalar>
SparseSpectrum<Scalar> operator+(const SparseSpectrum<Scalar>& a, const SparseSpectrum<Scalar>& b) {
  return linear_combination<Scalar>(1, a, 1, b);
}

template <typename Scalar>
SparseSpectrum<Scalar> operator-(const SparseSpectrum<Scalar>& a, const SparseSpectrum<Scalar>& b) {
  return linear_combination<Scalar>(1, a, -1, b);
}

template <typename Scalar>
SparseSpectrum<Scalar> operator*(std::complex<Scalar> s, const SparseSpectrum<Scalar>& a) {
  return map_entries(a, [s](const Wavevector&, std::complex<Scalar> z) { return s * z; });
}

template <typename Scalar>
SparseSpectrum<Scalar> operator*(Scalar s, const SparseSpectrum<Scalar>& a) {
  return std::complex<Scalar>(s) * a;
}

/// Sparse counterpart of spectral_derivative: multiplies by i*k_axis, Nyquist slot dropped.
template <typename Scalar>
SparseSpectrum<Scalar> spectral_derivative(const SparseSpectrum<Scalar>& spec, int axis) {
  const GridSpec& grid = spec.grid();
  if (axis < 0 || axis >= grid.dims())
    throw AxisOutOfRange("axis " + std::to_string(axis) + " on a " + std::to_string(grid.dims()) + "-D grid");
  const Scalar scale = Scalar(grid.wavenumber_scale());
  const int nyquist = -grid.n_per_dim() / 2;
  return map_entries(spec, [&](const Wavevector& k, std::complex<Scalar> z) {
    if (k[axis] == nyquist) return std::complex<Scalar>(0);
    return std::complex<Scalar>(0, scale * Scalar(k[axis])) * z;
  });
}

template <typename Scalar>
SparseSpectrum<Scalar> drop_nyquist(const SparseSpectrum<Scalar>& spec) {
  return map_entries(spec, [&](const Wavevector& k, std::complex<Scalar> z) {
    return spec.grid().is_nyquist(k) ? std::complex<Scalar>(0) : z;
  });
}

/// Sparse projection onto real fields, (u(k) + conj(u(-k))) / 2, bitwise
/// conjugate-symmetric on the union of the support and its mirror.
template <typename Scalar>
SparseSpectrum<Scalar> hermitian_part(const SparseSpectrum<Scalar>& spec) {
  const GridSpec& grid = spec.grid();
  std::vector<std::size_t> slots;
  slots.reserve(2 * spec.size());
  for (const auto& e : spec.entries()) {
    slots.push_back(e.index);
    slots.push_back(mirror_index(grid, e.index));
  }
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  SparseSpectrum<Scalar> out(grid);
  for (std::size_t slot : slots) {
    const auto a = spec.find(slot).value_or(0);
    const auto b = spec.find(mirror_index(grid, slot)).value_or(0);
    out.push_checked(slot, Scalar(0.5) * (a + std::conj(b)));
  }
  return out;
}

/// Largest |u(k) - conj(u(-k))|.
template <typename Scalar>
Scalar hermitian_residual(const SparseSpectrum<Scalar>& spec) {
  Scalar worst = 0;
  for (const auto& e : spec.entries()) {
    const auto b = spec.find(mirror_index(spec.grid(), e.index)).value_or(0);
    worst = std::max(worst, std::abs(e.value - std::conj(b)));
  }
  return worst;
}

/// Largest coefficient magnitude, 0 when empty.
template <typename Scalar>
Scalar max_magnitude(const SparseSpectrum<Scalar>& spec) {
  Scalar m = 0;
  for (const auto& e : spec.entries()) m = std::max(m, std::abs(e.value));
  return m;
}

}  // namespace sparsedyn
