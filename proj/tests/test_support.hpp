#pragma once

// Random generators and independent brute-force oracles shared by the tests.
// Nothing here calls into the convolution or solver code under test.

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "sparsedyn/sparsedyn.hpp"

namespace testing_support {

using namespace sparsedyn;
using cd = std::complex<double>;

inline SpatialField<double> random_field(const GridSpec& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpatialField<double> u(grid);
  for (Eigen::Index i = 0; i < u.values().size(); ++i) u.values()[i] = normal(rng);
  return u;
}

inline cd random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  return {normal(rng), normal(rng)};
}

/// n_s distinct random slots with random complex values (not Hermitian).
inline SparseSpectrum<double> random_sparse(const GridSpec& grid, std::size_t n_s, std::mt19937_64& rng) {
  std::vector<std::size_t> slots(grid.size());
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<SparseSpectrum<double>::Entry> entries;
  for (std::size_t i = 0; i < n_s; ++i) entries.push_back({slots[i], random_complex(rng)});
  return SparseSpectrum<double>::from_entries(grid, entries);
}

/// Random real field restricted to |k_d| <= kmax (Nyquist-free, conjugate-symmetric).
inline SparseSpectrum<double> random_real_sparse(const GridSpec& grid, int kmax, std::mt19937_64& rng,
                                                 double keep_probability = 1.0) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<Wavevector, cd>> modes;
  const int k1max = grid.dims() == 2 ? kmax : 0;
  for (int k0 = -kmax; k0 <= kmax; ++k0)
    for (int k1 = -k1max; k1 <= k1max; ++k1) {
      const bool upper = k0 > 0 || (k0 == 0 && k1 > 0);
      if (!upper) continue;
      if (coin(rng) > keep_probability) continue;
      const cd z = random_complex(rng);
      modes.push_back({{k0, k1}, z});
      modes.push_back({{-k0, -k1}, std::conj(z)});
    }
  modes.push_back({{0, 0}, cd(random_complex(rng).real(), 0.0)});
  return SparseSpectrum<double>::from_wavenumbers(grid, modes);
}

/// O(N^2) truncated convolution over all slot pairs of two dense spectra.
inline DenseSpectrum<double> brute_force_convolution(const DenseSpectrum<double>& a, const DenseSpectrum<double>& b) {
  const GridSpec& grid = a.grid();
  DenseSpectrum<double> out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Wavevector ki = grid.wavenumber_of(i);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Wavevector kj = grid.wavenumber_of(j);
      const Wavevector k{ki[0] + kj[0], ki[1] + kj[1]};
      if (!grid.contains(k)) continue;
      out[k] += a.coeffs()[Eigen::Index(i)] * b.coeffs()[Eigen::Index(j)];
    }
  }
  return out;
}

inline double max_abs_diff(const DenseSpectrum<double>& a, const DenseSpectrum<double>& b) {
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const SparseSpectrum<double>& a, const DenseSpectrum<double>& b) {
  return max_abs_diff(a.to_dense(), b);
}

/// Objective of the L1-regularized projection of v: lambda |w| + |w - v|^2 / 2.
/// Model setups small enough for exhaustive comparisons: N = 64 (64^2 for
/// vorticity) with lowered coefficient frequencies so the grid resolves them.
struct SmallSetup {
  Problem<double> problem;
  SparseSpectrum<double> initial;
  double dt;
};

inline SmallSetup small_setup(Equation eq) {
  switch (eq) {
    case Equation::Convection: {
      GridSpec g(1, 64);
      auto problem = make_problem({eq, CoefficientSpec::transport(8)}, g);
      const double dt = 0.5 * stability_limit(eq, g, problem.max_abs_coeff);
      return {problem, initial_condition({InitialSpec::Kind::GaussBump}, g), dt};
    }
    case Equation::Parabolic:
    case Equation::Burgers: {
      GridSpec g(1, 64);
      const auto coeff = eq == Equation::Parabolic ? CoefficientSpec::diffusion(8) : CoefficientSpec::burgers(8);
      auto problem = make_problem({eq, coeff}, g);
      const double dt = 0.4 * stability_limit(eq, g, problem.max_abs_coeff);
      return {problem, initial_condition({InitialSpec::Kind::SineLow}, g), dt};
    }
    case Equation::Vorticity2D: {
      GridSpec g(2, 64);
      auto problem = make_problem({eq, {}, 1e-3, CoefficientSpec::vorticity_forcing(4)}, g);
      return {problem, initial_condition({InitialSpec::Kind::TwoVortices}, g), 0.05};
    }
  }
  throw std::logic_error("unknown equation");
}

/// Largest physical-space max-norm gap, over every step, between a lambda = 0
/// sparse run and the dense solver.
inline double lambda_zero_deviation(Equation eq, long n_steps) {
  const auto setup = small_setup(eq);
  SparseSolver<double> sparse(setup.problem, setup.initial, setup.dt, LambdaSchedule::power_law(0.0, 2.0));
  DenseSolver<double> dense(setup.problem, setup.initial.to_dense(), setup.dt);
  double worst = 0.0;
  for (long n = 0; n < n_steps; ++n) {
    sparse.step();
    dense.step();
    worst = std::max(worst, error_metrics(sparse.state().current, dense.current()).linf);
  }
  return worst;
}

inline double prox_objective(cd w, cd v, double lambda) { return lambda * std::abs(w) + 0.5 * std::norm(w - v); }

}  // namespace testing_support
