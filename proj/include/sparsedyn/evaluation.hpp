#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sparsedyn/solvers.hpp"

namespace sparsedyn {

/// Per-slot multipliers of a grid: i*k_d with the Nyquist slot zeroed, |k|^2,
/// and 0/1 masks.
template <typename Scalar>
struct WavenumberTable {
  std::array<ComplexVector<Scalar>, 2> ik;
  RealVector<Scalar> ksq;
  RealVector<Scalar> regular;  // 0 on Nyquist slots, 1 elsewhere

  explicit WavenumberTable(const GridSpec& grid) {
    const auto n = Eigen::Index(grid.size());
    const double s = grid.wavenumber_scale();
    ik[0] = ComplexVector<Scalar>::Zero(n);
    ik[1] = ComplexVector<Scalar>::Zero(n);
    ksq = RealVector<Scalar>::Zero(n);
    regular = RealVector<Scalar>::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Wavevector k = grid.wavenumber_of(std::size_t(i));
      for (int d = 0; d < grid.dims(); ++d)
        if (k[d] != -grid.n_per_dim() / 2) ik[d][i] = std::complex<Scalar>(0, Scalar(s * k[d]));
      ksq[i] = Scalar(s * s * (double(k[0]) * k[0] + double(k[1]) * k[1]));
      if (grid.is_nyquist(k)) regular[i] = 0;
    }
  }

  /// Keeps only wavenumbers with every |k_d| <= cutoff.
  RealVector<Scalar> low_pass_mask(const GridSpec& grid, int cutoff) const {
    RealVector<Scalar> mask = RealVector<Scalar>::Zero(Eigen::Index(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Wavevector k = grid.wavenumber_of(i);
      if (std::abs(k[0]) <= cutoff && std::abs(k[1]) <= cutoff) mask[Eigen::Index(i)] = 1;
    }
    return mask;
  }
};

/// Fully resolved reference solver: the same update formulas as SparseSolver on
/// dense coefficient vectors, with products evaluated through the padded
/// transform instead of sparse convolution and no shrinkage. With a cutoff K it
/// becomes the low-frequency baseline: after each update every coefficient with
/// some |k_d| > K is zeroed.
template <typename Scalar>
class DenseSolver {
 public:
  using Vec = ComplexVector<Scalar>;

  DenseSolver(const Problem<Scalar>& problem, DenseSpectrum<Scalar> initial, double dt,
              std::optional<int> cutoff = std::nullopt, AdvanceOptions options = {})
      : grid_(problem.grid),
        params_(problem.params),
        a_hat_(problem.a_hat.to_dense().coeffs()),
        f_hat_(problem.f_hat.to_dense().coeffs()),
        table_(problem.grid),
        padded_(problem.grid),
        current_(std::move(initial)),
        previous_(problem.grid),
        dt_(dt) {
    require_same_grid(grid_, current_.grid());
    check_stability(params_.equation, grid_, problem.max_abs_coeff, dt_, options.stability, options.warn);
    if (cutoff) {
      if (*cutoff < 0) throw GridError("low-frequency cutoff must be >= 0");
      mask_ = table_.low_pass_mask(grid_, *cutoff);
      current_.coeffs() = current_.coeffs().cwiseProduct(mask_->template cast<std::complex<Scalar>>());
    }
  }

  void step() {
    Vec next = hermitian_part(DenseSpectrum<Scalar>(grid_, update())).coeffs();
    if (mask_) next = next.cwiseProduct(mask_->template cast<std::complex<Scalar>>());
    if (params_.equation == Equation::Convection) previous_ = current_;
    current_.coeffs() = std::move(next);
    ++step_index_;
  }

  const DenseSpectrum<Scalar>& current() const { return current_; }
  long step_index() const { return step_index_; }
  double time() const { return double(step_index_) * dt_; }

 private:
  Vec product(const Vec& a, const Vec& b) const {
    auto pa = padded_.to_physical(DenseSpectrum<Scalar>(grid_, a));
    const auto pb = padded_.to_physical(DenseSpectrum<Scalar>(grid_, b));
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return padded_.to_spectral(std::move(pa)).coeffs().cwiseProduct(table_.regular.template cast<std::complex<Scalar>>());
  }

  Vec diffusion_flux_rhs(const Vec& u, bool with_flux) const {
    Vec inner = product(a_hat_, table_.ik[0].cwiseProduct(u));
    if (with_flux) inner -= Scalar(0.5) * product(u, u);
    return table_.ik[0].cwiseProduct(inner);
  }

  Vec update() const {
    const Vec& u = current_.coeffs();
    switch (params_.equation) {
      case Equation::Convection: {
        const Vec transport = product(a_hat_, table_.ik[0].cwiseProduct(u));
        if (step_index_ == 0) return u + Scalar(dt_) * transport;
        return previous_.coeffs() + Scalar(2 * dt_) * transport;
      }
      case Equation::Parabolic:
        return u + Scalar(dt_) * diffusion_flux_rhs(u, false);
      case Equation::Burgers: {
        const Vec u1 = u + Scalar(dt_) * diffusion_flux_rhs(u, true);
        return (Scalar(0.5) * u + Scalar(0.5) * u1) + Scalar(dt_ / 2) * diffusion_flux_rhs(u1, true);
      }
      case Equation::Vorticity2D: {
        const Eigen::Index n = u.size();
        Vec v0(n), v1(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const Scalar ksq = table_.ksq[i];
          if (ksq == 0) {
            v0[i] = v1[i] = 0;
            continue;
          }
          // v = -i k^perp |k|^-2 u with k^perp = (-k2, k1)
          v0[i] = table_.ik[1][i] / ksq * u[i];
          v1[i] = -table_.ik[0][i] / ksq * u[i];
        }
        const Vec advection = -(product(v0, table_.ik[0].cwiseProduct(u)) + product(v1, table_.ik[1].cwiseProduct(u)));
        const RealVector<Scalar> g = Scalar(params_.gamma * dt_) * table_.ksq;
        const RealVector<Scalar> forced = (Scalar(2 * dt_) / (Scalar(2) + g.array())).matrix();
        const RealVector<Scalar> decayed = ((Scalar(2) - g.array()) / (Scalar(2) + g.array())).matrix();
        return forced.template cast<std::complex<Scalar>>().cwiseProduct(advection + f_hat_) +
               decayed.template cast<std::complex<Scalar>>().cwiseProduct(u);
      }
    }
    return u;
  }

  GridSpec grid_;
  EquationParams params_;
  Vec a_hat_;
  Vec f_hat_;
  WavenumberTable<Scalar> table_;
  PaddedProduct<Scalar> padded_;
  DenseSpectrum<Scalar> current_;
  DenseSpectrum<Scalar> previous_;
  std::optional<RealVector<Scalar>> mask_;
  double dt_;
  long step_index_ = 0;
};

/// Dense trajectory including the initial state (n_steps + 1 spectra).
template <typename Scalar>
std::vector<DenseSpectrum<Scalar>> dense_advance(const DenseSpectrum<Scalar>& initial, const Problem<Scalar>& problem,
                                                 double dt, long n_steps, AdvanceOptions options = {}) {
  DenseSolver<Scalar> solver(problem, initial, dt, std::nullopt, std::move(options));
  std::vector<DenseSpectrum<Scalar>> trajectory{solver.current()};
  for (long i = 0; i < n_steps; ++i) {
    solver.step();
    trajectory.push_back(solver.current());
  }
  return trajectory;
}

/// Dense trajectory projected to |k_d| <= cutoff after every update.
template <typename Scalar>
std::vector<DenseSpectrum<Scalar>> low_frequency_advance(const DenseSpectrum<Scalar>& initial,
                                                         const Problem<Scalar>& problem, double dt, long n_steps,
                                                         int cutoff, AdvanceOptions options = {}) {
  DenseSolver<Scalar> solver(problem, initial, dt, cutoff, std::move(options));
  std::vector<DenseSpectrum<Scalar>> trajectory{solver.current()};
  for (long i = 0; i < n_steps; ++i) {
    solver.step();
    trajectory.push_back(solver.current());
  }
  return trajectory;
}

/// Zeroes every coefficient with some |k_d| > cutoff.
template <typename Scalar>
DenseSpectrum<Scalar> low_frequency_projection(DenseSpectrum<Scalar> spec, int cutoff) {
  for (std::size_t i = 0; i < spec.grid().size(); ++i) {
    const Wavevector k = spec.grid().wavenumber_of(i);
    if (std::abs(k[0]) > cutoff || std::abs(k[1]) > cutoff) spec.coeffs()[Eigen::Index(i)] = 0;
  }
  return spec;
}

struct ErrorPair {
  double l2 = 0.0;
  double linf = 0.0;
};

/// Discrete L2 (sqrt(sum |a - b|^2 * cell volume)) and max-norm distance of two fields.
template <typename Scalar>
ErrorPair error_metrics(const SpatialField<Scalar>& a, const SpatialField<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  const auto diff = (a.values() - b.values()).template cast<double>();
  return {std::sqrt(diff.squaredNorm() * a.grid().cell_volume()), diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0};
}

template <typename Scalar>
ErrorPair error_metrics(const DenseSpectrum<Scalar>& a, const DenseSpectrum<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  return error_metrics(dft_inverse(a), dft_inverse(b));
}

template <typename Scalar>
ErrorPair error_metrics(const SparseSpectrum<Scalar>& a, const DenseSpectrum<Scalar>& b) {
  return error_metrics(a.to_dense(), b);
}

/// Norms of a single field: (sqrt(sum u^2 * cell volume), max |u|).
template <typename Scalar>
ErrorPair field_norms(const SpatialField<Scalar>& u) {
  return error_metrics(u, SpatialField<Scalar>(u.grid()));
}

/// Smallest K whose box |k_d| <= K holds at least n_s wavenumbers, (2K+1)^dims >= n_s.
inline int match_mode_count(std::size_t n_s, int dims = 1) {
  int cutoff = 0;
  auto box = [dims](int k) {
    const std::size_t side = std::size_t(2 * k + 1);
    return dims == 1 ? side : side * side;
  };
  while (box(cutoff) < n_s) ++cutoff;
  return cutoff;
}

/// Zero-pads a coarse spectrum onto a finer grid of the same dimension and period.
template <typename Scalar>
DenseSpectrum<Scalar> inject(const DenseSpectrum<Scalar>& coarse, const GridSpec& fine) {
  if (coarse.grid().dims() != fine.dims() || coarse.grid().domain_length() != fine.domain_length() ||
      coarse.grid().n_per_dim() > fine.n_per_dim())
    throw GridMismatch("cannot inject grid " + coarse.grid().shape_string() + " into " + fine.shape_string());
  DenseSpectrum<Scalar> out(fine);
  for (std::size_t i = 0; i < coarse.grid().size(); ++i)
    out[coarse.grid().wavenumber_of(i)] = coarse.coeffs()[Eigen::Index(i)];
  return out;
}

/// One row of a run report.
struct ReportRecord {
  long step = 0;
  double time = 0.0;
  std::size_t n_s = 0;
  double sparsity_fraction = 0.0;
  std::optional<double> l2_error;
  std::optional<double> linf_error;
  std::complex<double> mean;
};

/// Per-step history of one run plus identifying metadata.
struct RunReport {
  std::string equation;
  std::string grid;
  double dt = 0.0;
  std::string lambda_rule;
  double seconds_per_step = 0.0;
  std::vector<ReportRecord> records;

  std::size_t final_n_s() const { return records.empty() ? 0 : records.back().n_s; }
};

/// K matched to the final retained-mode count of a sparse run.
inline int match_mode_count(const RunReport& sparse_run, int dims) { return match_mode_count(sparse_run.final_n_s(), dims); }

}  // namespace sparsedyn
