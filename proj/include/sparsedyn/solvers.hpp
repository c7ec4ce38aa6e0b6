#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <complex>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsedyn/coefficients.hpp"
#include "sparsedyn/convolution.hpp"
#include "sparsedyn/initial_conditions.hpp"
#include "sparsedyn/shrinkage.hpp"

namespace sparsedyn {

enum class Equation { Convection, Parabolic, Burgers, Vorticity2D };

inline std::string_view to_string(Equation eq) {
  switch (eq) {
    case Equation::Convection: return "convection";
    case Equation::Parabolic: return "parabolic";
    case Equation::Burgers: return "burgers";
    case Equation::Vorticity2D: return "vorticity";
  }
  return "convection";
}

/// Model problems, all on periodic domains:
///   Convection   u_t = a(x) u_x                         (spectral leapfrog)
///   Parabolic    u_t = (a(x) u_x)_x                     (forward Euler)
///   Burgers      u_t + (u^2/2)_x = (a(x) u_x)_x         (TVD Runge-Kutta 2)
///   Vorticity2D  u_t + (grad^perp lap^-1 u) . grad u = gamma lap u + f
///                (Crank-Nicolson diffusion, lagged advection)
struct EquationParams {
  Equation equation = Equation::Convection;
  CoefficientSpec coeff;    // a(x), first three equations
  double gamma = 0.0;       // Vorticity2D viscosity
  CoefficientSpec forcing;  // Vorticity2D source f(x, y)

  friend bool operator==(const EquationParams&, const EquationParams&) = default;
};

/// Coefficient spectra and bounds of one equation on one grid. The coefficient
/// spectra exclude Nyquist modes, like every quadratic term in the solvers, and
/// transform roundoff.
template <typename Scalar>
struct Problem {
  GridSpec grid;
  EquationParams params;
  SparseSpectrum<Scalar> a_hat;
  SparseSpectrum<Scalar> f_hat;
  double max_abs_coeff = 0.0;  // max_x |a(x)|
};

namespace detail {

/// Removes transform roundoff (|z| <= 16 eps max|z|) from a sampled coefficient
/// spectrum. Conjugate pairs share a magnitude, so symmetry is kept.
template <typename Scalar>
SparseSpectrum<Scalar> drop_roundoff(const SparseSpectrum<Scalar>& spec) {
  const Scalar floor = Scalar(16) * std::numeric_limits<Scalar>::epsilon() * max_magnitude(spec);
  return map_entries(spec, [floor](const Wavevector&, std::complex<Scalar> z) {
    return std::abs(z) <= floor ? std::complex<Scalar>(0) : z;
  });
}

}  // namespace detail

template <typename Scalar = double>
Problem<Scalar> make_problem(const EquationParams& params, const GridSpec& grid) {
  Problem<Scalar> problem{grid, params, SparseSpectrum<Scalar>(grid), SparseSpectrum<Scalar>(grid), 0.0};
  if (params.equation == Equation::Vorticity2D) {
    if (grid.dims() != 2) throw NotTwoDimensional("vorticity equation needs a 2-D grid");
    if (!(params.gamma > 0.0)) throw InvalidParameters("vorticity viscosity gamma must be > 0");
    problem.f_hat = detail::drop_roundoff(hermitian_part(drop_nyquist(SparseSpectrum<Scalar>::from_dense(
        dft_forward(sample_coefficient<Scalar>(params.forcing, grid))))));
    return problem;
  }
  if (grid.dims() != 1) throw GridError(std::string(to_string(params.equation)) + " equation needs a 1-D grid");
  const auto a = sample_coefficient<Scalar>(params.coeff, grid);
  problem.max_abs_coeff = double(a.values().cwiseAbs().maxCoeff());
  if (params.equation != Equation::Convection && !(a.values().minCoeff() > Scalar(0)))
    throw InvalidParameters("diffusion coefficient a(x) must be strictly positive");
  problem.a_hat = detail::drop_roundoff(hermitian_part(drop_nyquist(SparseSpectrum<Scalar>::from_dense(dft_forward(a)))));
  return problem;
}

/// Solution history for one run. `previous` is only used by the leapfrog scheme
/// and is populated once step_index >= 1.
template <typename Scalar>
struct SolverState {
  SparseSpectrum<Scalar> current;
  std::optional<SparseSpectrum<Scalar>> previous;
  long step_index = 0;
  double time = 0.0;

  explicit SolverState(SparseSpectrum<Scalar> initial) : current(std::move(initial)) {}
};

namespace detail {

/// Truncated product term of the right-hand sides; Nyquist output is discarded
/// so real fields stay conjugate-symmetric.
template <typename Scalar>
SparseSpectrum<Scalar> galerkin_product(const SparseSpectrum<Scalar>& a, const SparseSpectrum<Scalar>& b) {
  return drop_nyquist(sparse_convolve(a, b));
}

/// i k (a * (i k u)) - i k (u * u / 2); the flux part only when with_flux.
template <typename Scalar>
SparseSpectrum<Scalar> diffusion_flux_rhs(const SparseSpectrum<Scalar>& u, const SparseSpectrum<Scalar>& a_hat,
                                          bool with_flux) {
  auto inner = galerkin_product(a_hat, spectral_derivative(u, 0));
  if (with_flux) inner = linear_combination<Scalar>(1, inner, Scalar(-0.5), galerkin_product(u, u));
  return spectral_derivative(inner, 0);
}

}  // namespace detail

/// Leapfrog update before shrinkage: u^{n-1} + 2 dt a * (i k u^n). At step 0
/// the history is empty and a forward Euler step u^0 + dt a * (i k u^0) is taken.
template <typename Scalar>
SparseSpectrum<Scalar> step_convection(const SolverState<Scalar>& state, const SparseSpectrum<Scalar>& a_hat, double dt) {
  const auto transport = detail::galerkin_product(a_hat, spectral_derivative(state.current, 0));
  if (state.step_index == 0 || !state.previous) return linear_combination<Scalar>(1, state.current, Scalar(dt), transport);
  return linear_combination<Scalar>(1, *state.previous, Scalar(2 * dt), transport);
}

/// Forward Euler update before shrinkage: u^n + dt i k (a * (i k u^n)).
template <typename Scalar>
SparseSpectrum<Scalar> step_parabolic(const SolverState<Scalar>& state, const SparseSpectrum<Scalar>& a_hat, double dt) {
  return linear_combination<Scalar>(1, state.current, Scalar(dt), detail::diffusion_flux_rhs(state.current, a_hat, false));
}

/// Two-stage TVD Runge-Kutta update before shrinkage; the flux u^2/2 is the
/// truncated self-convolution of the coefficients.
template <typename Scalar>
SparseSpectrum<Scalar> step_burgers(const SolverState<Scalar>& state, const SparseSpectrum<Scalar>& a_hat, double dt) {
  const auto& u = state.current;
  const auto u1 = linear_combination<Scalar>(1, u, Scalar(dt), detail::diffusion_flux_rhs(u, a_hat, true));
  const auto average = linear_combination<Scalar>(Scalar(0.5), u, Scalar(0.5), u1);
  return linear_combination<Scalar>(1, average, Scalar(dt / 2), detail::diffusion_flux_rhs(u1, a_hat, true));
}

/// Velocity components v = grad^perp lap^-1 u, i.e. v_hat = -i k^perp |k|^-2 u_hat
/// with k^perp = (-k2, k1); the k = 0 mode of lap^-1 is zero.
template <typename Scalar>
std::array<SparseSpectrum<Scalar>, 2> velocity_from_vorticity(const SparseSpectrum<Scalar>& u) {
  const double s = u.grid().wavenumber_scale();
  auto component = [&](int d) {
    return map_entries(u, [&](const Wavevector& k, std::complex<Scalar> z) {
      const double k0 = s * k[0], k1 = s * k[1];
      const double ksq = k0 * k0 + k1 * k1;
      if (ksq == 0.0) return std::complex<Scalar>(0);
      const double factor = d == 0 ? k1 / ksq : -k0 / ksq;
      return std::complex<Scalar>(0, Scalar(factor)) * z;
    });
  };
  return {component(0), component(1)};
}

/// Lagged advection term -(v . grad u)^ as two truncated sparse convolutions.
template <typename Scalar>
SparseSpectrum<Scalar> vorticity_advection(const SparseSpectrum<Scalar>& u) {
  if (u.grid().dims() != 2) throw NotTwoDimensional("vorticity advection needs a 2-D grid");
  const auto v = velocity_from_vorticity(u);
  const auto t0 = detail::galerkin_product(v[0], spectral_derivative(u, 0));
  const auto t1 = detail::galerkin_product(v[1], spectral_derivative(u, 1));
  return linear_combination<Scalar>(-1, t0, -1, t1);
}

/// Crank-Nicolson diffusion with lagged advection, before shrinkage:
///   v(k) = 2dt / (2 + gamma dt |k|^2) (N(u)(k) + f(k)) + (2 - gamma dt |k|^2) / (2 + gamma dt |k|^2) u(k)
template <typename Scalar>
SparseSpectrum<Scalar> step_vorticity(const SolverState<Scalar>& state, const SparseSpectrum<Scalar>& f_hat, double gamma,
                                      double dt) {
  const auto& u = state.current;
  if (u.grid().dims() != 2) throw NotTwoDimensional("vorticity step needs a 2-D grid");
  const double s = u.grid().wavenumber_scale();
  auto ksq_of = [s](const Wavevector& k) { return s * s * (double(k[0]) * k[0] + double(k[1]) * k[1]); };
  const auto source = vorticity_advection(u) + f_hat;
  const auto forced = map_entries(source, [&](const Wavevector& k, std::complex<Scalar> z) {
    return Scalar(2 * dt / (2 + gamma * dt * ksq_of(k))) * z;
  });
  const auto decayed = map_entries(u, [&](const Wavevector& k, std::complex<Scalar> z) {
    const double g = gamma * dt * ksq_of(k);
    return Scalar((2 - g) / (2 + g)) * z;
  });
  return forced + decayed;
}

enum class StabilityPolicy { Warn, Strict, Ignore };

/// Largest stable step of the explicit schemes: dt <= dx / max|a| for transport,
/// dt <= dx^2 / (2 max a) for explicit diffusion. Infinite when no guard applies.
inline double stability_limit(Equation eq, const GridSpec& grid, double max_abs_coeff) {
  if (max_abs_coeff <= 0.0) return std::numeric_limits<double>::infinity();
  switch (eq) {
    case Equation::Convection: return 1.0 * grid.dx() / max_abs_coeff;
    case Equation::Parabolic:
    case Equation::Burgers: return 0.5 * grid.dx() * grid.dx() / max_abs_coeff;
    case Equation::Vorticity2D: break;
  }
  return std::numeric_limits<double>::infinity();
}

using WarningSink = std::function<void(const std::string&)>;

inline void check_stability(Equation eq, const GridSpec& grid, double max_abs_coeff, double dt, StabilityPolicy policy,
                            const WarningSink& warn) {
  if (!(dt > 0.0)) throw NonpositiveDt("time step must be > 0, got " + std::to_string(dt));
  if (policy == StabilityPolicy::Ignore) return;
  const double limit = stability_limit(eq, grid, max_abs_coeff);
  if (dt <= limit) return;
  const std::string message = std::string(to_string(eq)) + ": dt = " + std::to_string(dt) +
                              " exceeds the stability guard " + std::to_string(limit);
  if (policy == StabilityPolicy::Strict) throw CflViolation(message);
  if (warn)
    warn(message);
  else
    std::cerr << "warning: " << message << "\n";
}

struct AdvanceOptions {
  ThresholdOptions threshold;
  StabilityPolicy stability = StabilityPolicy::Warn;
  WarningSink warn;
};

struct StepRecord {
  long step = 0;
  double time = 0.0;
  std::size_t n_s = 0;
  double sparsity_fraction = 0.0;
  std::complex<double> mean;
};

/// Update-then-shrink time integration on sparse coefficient vectors:
/// v = Q(history); u^{n+1} = S_lambda(v). Conjugate symmetry of v is restored
/// exactly before shrinkage so pairs are kept or dropped together.
template <typename Scalar>
class SparseSolver {
 public:
  SparseSolver(Problem<Scalar> problem, SparseSpectrum<Scalar> initial, double dt, LambdaSchedule schedule,
               AdvanceOptions options = {})
      : problem_(std::move(problem)),
        state_(std::move(initial)),
        dt_(dt),
        lambda_(Scalar(lambda_at(schedule, dt))),
        options_(std::move(options)) {
    require_same_grid(problem_.grid, state_.current.grid());
    check_stability(problem_.params.equation, problem_.grid, problem_.max_abs_coeff, dt_, options_.stability,
                    options_.warn);
  }

  void step() {
    auto proposal = hermitian_part(update());
    auto next = soft_threshold(proposal, lambda_, options_.threshold);
    if (problem_.params.equation == Equation::Convection) state_.previous = std::move(state_.current);
    state_.current = std::move(next);
    ++state_.step_index;
    state_.time = double(state_.step_index) * dt_;
  }

  /// Pre-shrinkage update of the selected scheme.
  SparseSpectrum<Scalar> update() const {
    switch (problem_.params.equation) {
      case Equation::Convection: return step_convection(state_, problem_.a_hat, dt_);
      case Equation::Parabolic: return step_parabolic(state_, problem_.a_hat, dt_);
      case Equation::Burgers: return step_burgers(state_, problem_.a_hat, dt_);
      case Equation::Vorticity2D: return step_vorticity(state_, problem_.f_hat, problem_.params.gamma, dt_);
    }
    return state_.current;
  }

  StepRecord record() const {
    const auto mean = state_.current.mean();
    return {state_.step_index, state_.time, state_.current.size(), sparsity_fraction(state_.current),
            {double(mean.real()), double(mean.imag())}};
  }

  const SolverState<Scalar>& state() const { return state_; }
  const Problem<Scalar>& problem() const { return problem_; }
  double dt() const { return dt_; }
  Scalar lambda() const { return lambda_; }

 private:
  Problem<Scalar> problem_;
  SolverState<Scalar> state_;
  double dt_;
  Scalar lambda_;
  AdvanceOptions options_;
};

template <typename Scalar>
struct AdvanceResult {
  SolverState<Scalar> state;
  std::vector<StepRecord> trace;  // n_steps + 1 records, initial state first
};

/// Runs n_steps of update-then-shrink from `initial`.
template <typename Scalar>
AdvanceResult<Scalar> advance(const SparseSpectrum<Scalar>& initial, const Problem<Scalar>& problem,
                              const LambdaSchedule& schedule, double dt, long n_steps, AdvanceOptions options = {}) {
  SparseSolver<Scalar> solver(problem, initial, dt, schedule, std::move(options));
  std::vector<StepRecord> trace;
  trace.reserve(std::size_t(n_steps) + 1);
  trace.push_back(solver.record());
  for (long i = 0; i < n_steps; ++i) {
    solver.step();
    trace.push_back(solver.record());
  }
  return {solver.state(), std::move(trace)};
}

}  // namespace sparsedyn
