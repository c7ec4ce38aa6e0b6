#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"

using namespace sparsedyn;
using namespace testing_support;

namespace {

const Equation all_equations[] = {Equation::Convection, Equation::Parabolic, Equation::Burgers, Equation::Vorticity2D};

SparseSpectrum<double> sine_mode(const GridSpec& g, double amplitude = 1.0) {
  return SparseSpectrum<double>::from_wavenumbers(g, {{{1, 0}, cd(0, -amplitude / 2)}, {{-1, 0}, cd(0, amplitude / 2)}});
}

// i k multiplier with the Nyquist slot zeroed, written independently of the library.
DenseSpectrum<double> ik_times(const DenseSpectrum<double>& u) {
  DenseSpectrum<double> out(u.grid());
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    const int k = u.grid().wavenumber_of(i)[0];
    if (k != -u.grid().n_per_dim() / 2) out.coeffs()[Eigen::Index(i)] = cd(0, k) * u.coeffs()[Eigen::Index(i)];
  }
  return out;
}

DenseSpectrum<double> oracle_product(const DenseSpectrum<double>& a, const DenseSpectrum<double>& b) {
  auto c = brute_force_convolution(a, b);
  c[{-a.grid().n_per_dim() / 2, 0}] = 0;
  return c;
}

DenseSpectrum<double> oracle_burgers_rhs(const DenseSpectrum<double>& u, const DenseSpectrum<double>& a) {
  DenseSpectrum<double> inner(u.grid(), oracle_product(a, ik_times(u)).coeffs() - 0.5 * oracle_product(u, u).coeffs());
  return ik_times(inner);
}

}  // namespace

TEST_CASE("zero state is a fixed point of the transport and diffusion steppers") {
  GridSpec g(1, 64);
  const SolverState<double> zero{SparseSpectrum<double>(g)};
  const auto a = make_problem({Equation::Convection, CoefficientSpec::transport(8)}, g).a_hat;
  CHECK(step_convection(zero, a, 1e-3).empty());
  CHECK(step_parabolic(zero, a, 1e-3).empty());
  CHECK(step_burgers(zero, a, 1e-3).empty());
  GridSpec g2(2, 16);
  CHECK(step_vorticity(SolverState<double>{SparseSpectrum<double>(g2)}, SparseSpectrum<double>(g2), 1e-3, 0.1).empty());
}

TEST_CASE("constant-coefficient transport follows the exact translation") {
  GridSpec g(1, 64);
  const double c = 1.0;
  const auto problem = make_problem({Equation::Convection, CoefficientSpec::constant(c)}, g);
  const double dt = g.dx() / (4 * c);
  const long steps = std::lround(1.0 / dt);
  const auto result = advance(sine_mode(g), problem, LambdaSchedule::fixed(0.0), dt, steps);
  const double t = steps * dt;
  const auto exact = SpatialField<double>::sample(g, [&](double x) { return std::sin(x + c * t); });
  const auto err = error_metrics(dft_inverse(result.state.current.to_dense()), exact);
  CHECK(err.l2 / field_norms(exact).l2 < 1e-3);
  CHECK(err.linf < 1e-3);
}

TEST_CASE("constant-coefficient diffusion decays like exp(-nu k^2 t)") {
  GridSpec g(1, 64);
  const double nu = 1.0;
  const auto problem = make_problem({Equation::Parabolic, CoefficientSpec::constant(nu)}, g);
  const double dt = 1e-4 * g.dx() * g.dx();
  const long steps = std::lround(0.01 / nu / dt);
  const auto result = advance(sine_mode(g), problem, LambdaSchedule::fixed(0.0), dt, steps);
  const double decay = std::exp(-nu * steps * dt);
  CHECK(std::abs(result.state.current.at({1, 0}) - cd(0, -0.5 * decay)) < 1e-4 * 0.5 * decay);

  // a mean-only state is left unchanged
  const auto mean_only = SparseSpectrum<double>::from_wavenumbers(g, {{{0, 0}, cd(2.0)}});
  CHECK(step_parabolic(SolverState<double>{mean_only}, problem.a_hat, dt) == mean_only);
}

TEST_CASE("one Burgers step matches a brute-force dense step") {
  GridSpec g(1, 32);
  const double eps = 1e-2, dt = 1e-3;
  const auto problem = make_problem({Equation::Burgers, CoefficientSpec::constant(0.1)}, g);
  const auto u0 = sine_mode(g, eps);
  const auto v = step_burgers(SolverState<double>{u0}, problem.a_hat, dt);

  const auto u = u0.to_dense(), a = problem.a_hat.to_dense();
  DenseSpectrum<double> u1(g, u.coeffs() + dt * oracle_burgers_rhs(u, a).coeffs());
  DenseSpectrum<double> expected(g, 0.5 * (u.coeffs() + u1.coeffs()) + (dt / 2) * oracle_burgers_rhs(u1, a).coeffs());
  CHECK(max_abs_diff(v, expected) < 1e-15);
  // second harmonic of size O(eps^2 dt)
  const double h2 = std::abs(v.at({2, 0}));
  CHECK(h2 > 0.1 * eps * eps * dt);
  CHECK(h2 < 10 * eps * eps * dt);
}

TEST_CASE("vorticity single modes: advection vanishes and the CN factor is exact") {
  GridSpec g(2, 32);
  const double gamma = 1e-2, dt = 0.1;
  for (Wavevector k : {Wavevector{1, 0}, Wavevector{2, 3}, Wavevector{-4, 1}, Wavevector{0, 5}}) {
    const cd z(0.3, -0.7);
    const auto u0 = SparseSpectrum<double>::from_wavenumbers(g, {{k, z}, {{-k[0], -k[1]}, std::conj(z)}});
    CHECK(max_magnitude(vorticity_advection(u0)) < 1e-12);

    const auto problem = make_problem({Equation::Vorticity2D, {}, gamma, CoefficientSpec::none()}, g);
    const auto result = advance(u0, problem, LambdaSchedule::fixed(0.0), dt, 100);
    const double ksq = double(k[0]) * k[0] + double(k[1]) * k[1];
    const double factor = std::pow((2 - gamma * dt * ksq) / (2 + gamma * dt * ksq), 100);
    CHECK(std::abs(result.state.current.at(k) - factor * z) < 1e-10);
  }
  CHECK_THROWS_AS(vorticity_advection(SparseSpectrum<double>(GridSpec(1, 16))), NotTwoDimensional);
}

TEST_CASE("velocity is the perpendicular gradient of the inverse Laplacian") {
  // u = cos x has stream function psi = lap^-1 u = -cos x, so v = (-psi_y, psi_x) = (0, sin x)
  GridSpec g(2, 16);
  const auto u = SparseSpectrum<double>::from_wavenumbers(g, {{{1, 0}, cd(0.5)}, {{-1, 0}, cd(0.5)}});
  const auto v = velocity_from_vorticity(u);
  CHECK(v[0].empty());
  CHECK(std::abs(v[1].at({1, 0}) - cd(0, -0.5)) < 1e-15);
  CHECK(std::abs(v[1].at({-1, 0}) - cd(0, 0.5)) < 1e-15);
}

TEST_CASE("lambda = 0 runs reproduce the dense solver") {
  for (Equation eq : all_equations) {
    CAPTURE(to_string(eq));
    CHECK(lambda_zero_deviation(eq, eq == Equation::Vorticity2D ? 20 : 100) <= 1e-10);
  }
}

TEST_CASE("huge lambda empties the state in one step") {
  for (Equation eq : {Equation::Convection, Equation::Parabolic, Equation::Burgers}) {
    const auto setup = small_setup(eq);
    const auto result = advance(setup.initial, setup.problem, LambdaSchedule::fixed(1e6), setup.dt, 1);
    CHECK(result.state.current.empty());
    CHECK(result.trace.back().n_s == 0);
  }
}

TEST_CASE("advance bookkeeping") {
  const auto setup = small_setup(Equation::Convection);
  const auto none = advance(setup.initial, setup.problem, LambdaSchedule::fixed(1e-4), setup.dt, 0);
  CHECK(none.state.current == setup.initial);
  CHECK(none.trace.size() == 1);
  CHECK(!none.state.previous);

  SparseSolver<double> solver(setup.problem, setup.initial, setup.dt, LambdaSchedule::fixed(1e-4));
  for (long n = 1; n <= 1000; ++n) {
    solver.step();
    REQUIRE(solver.state().step_index == n);
    REQUIRE(solver.state().time == double(n) * setup.dt);
    REQUIRE(solver.state().previous.has_value());
  }
  const auto trace = advance(setup.initial, setup.problem, LambdaSchedule::fixed(1e-4), setup.dt, 7).trace;
  CHECK(trace.size() == 8);
  CHECK(trace.front().n_s == setup.initial.size());
  CHECK(trace.back().sparsity_fraction == doctest::Approx(double(trace.back().n_s) / 64));

  const auto parabolic = small_setup(Equation::Parabolic);
  SparseSolver<double> p(parabolic.problem, parabolic.initial, parabolic.dt, LambdaSchedule::fixed(0.0));
  p.step();
  CHECK(!p.state().previous);
}

TEST_CASE("zero velocity leapfrog is period-2 stationary") {
  GridSpec g(1, 32);
  const auto problem = make_problem({Equation::Convection, CoefficientSpec::constant(0.0)}, g);
  const auto u0 = initial_condition({InitialSpec::Kind::SineLow}, g);
  SparseSolver<double> solver(problem, u0, 0.1, LambdaSchedule::fixed(0.0));
  for (int n = 0; n < 6; ++n) {
    solver.step();
    CHECK(solver.state().current == u0);
  }
}

TEST_CASE("Hermitian symmetry and mean drift under shrinkage") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lam(1e-6, 1e-3);
  int instances = 0;
  for (Equation eq : all_equations) {
    const auto setup = small_setup(eq);
    const int trials = eq == Equation::Vorticity2D ? 10 : 40;
    for (int trial = 0; trial < trials; ++trial, ++instances) {
      const double lambda = lam(rng);
      // random real initial data with a random mean
      auto initial = eq == Equation::Vorticity2D ? random_real_sparse(setup.problem.grid, 4, rng, 0.5)
                                                 : random_real_sparse(setup.problem.grid, 6, rng, 0.7);
      SparseSolver<double> solver(setup.problem, initial, setup.dt, LambdaSchedule::fixed(lambda));
      for (int n = 0; n < 5; ++n) {
        const cd before = solver.state().current.mean();
        solver.step();
        REQUIRE(hermitian_residual(solver.state().current) == 0.0);
        if (eq != Equation::Convection) REQUIRE(std::abs(solver.state().current.mean() - before) <= lambda + 1e-12);
      }
    }
  }
  CHECK(instances >= 100);
}

TEST_CASE("lambda = 0 keeps the mean for the diffusive steppers") {
  for (Equation eq : {Equation::Parabolic, Equation::Burgers, Equation::Vorticity2D}) {
    auto setup = small_setup(eq);
    auto initial = setup.initial + SparseSpectrum<double>::from_wavenumbers(setup.problem.grid, {{{0, 0}, cd(0.3)}});
    const auto result = advance(initial, setup.problem, LambdaSchedule::fixed(0.0), setup.dt, 20);
    CHECK(std::abs(result.state.current.mean() - initial.mean()) <= 1e-12);
  }
}

TEST_CASE("convergence in dt with a power-law lambda") {
  const auto setup = small_setup(Equation::Convection);
  const double t_end = 0.5;
  const double dt_ref = setup.dt / 64;
  const auto reference = dense_advance(setup.initial.to_dense(), setup.problem, dt_ref, std::lround(t_end / dt_ref)).back();
  double last = 1e300;
  for (int level = 0; level < 4; ++level) {
    const double dt = setup.dt / std::pow(2.0, level);
    const auto result = advance(setup.initial, setup.problem, LambdaSchedule::power_law(1.0, 2.0), dt, std::lround(t_end / dt));
    const double err = error_metrics(result.state.current, reference).l2;
    CAPTURE(level);
    CHECK(err <= last);
    last = err;
  }
}

TEST_CASE("stability guard") {
  GridSpec g(1, 64);
  const auto problem = make_problem({Equation::Parabolic, CoefficientSpec::diffusion(8)}, g);
  const double limit = stability_limit(Equation::Parabolic, g, problem.max_abs_coeff);
  const auto u0 = initial_condition({InitialSpec::Kind::SineLow}, g);
  AdvanceOptions strict{.stability = StabilityPolicy::Strict};
  CHECK_THROWS_AS(SparseSolver<double>(problem, u0, 2 * limit, LambdaSchedule::fixed(0.0), strict), CflViolation);
  CHECK_NOTHROW(SparseSolver<double>(problem, u0, 0.9 * limit, LambdaSchedule::fixed(0.0), strict));

  std::vector<std::string> warnings;
  AdvanceOptions warn{.warn = [&](const std::string& m) { warnings.push_back(m); }};
  SparseSolver<double>(problem, u0, 2 * limit, LambdaSchedule::fixed(0.0), warn);
  CHECK(warnings.size() == 1);
  AdvanceOptions ignore{.stability = StabilityPolicy::Ignore};
  CHECK_NOTHROW(SparseSolver<double>(problem, u0, 2 * limit, LambdaSchedule::fixed(0.0), ignore));
  CHECK_THROWS_AS(SparseSolver<double>(problem, u0, 0.0, LambdaSchedule::fixed(0.0)), NonpositiveDt);

  CHECK(stability_limit(Equation::Convection, g, 2.0) == doctest::Approx(g.dx() / 2));
  CHECK(stability_limit(Equation::Burgers, g, 0.1) == doctest::Approx(5 * g.dx() * g.dx()));
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(make_problem({Equation::Vorticity2D, {}, 0.0, CoefficientSpec::vorticity_forcing(4)}, GridSpec(2, 32)),
                  InvalidParameters);
  CHECK_THROWS_AS(make_problem({Equation::Vorticity2D, {}, 1e-3, CoefficientSpec::none()}, GridSpec(1, 32)),
                  NotTwoDimensional);
  CHECK_THROWS_AS(make_problem({Equation::Parabolic, CoefficientSpec::constant(-1.0)}, GridSpec(1, 32)), InvalidParameters);
  CHECK_THROWS_AS(make_problem({Equation::Burgers, CoefficientSpec::constant(0.0)}, GridSpec(1, 32)), InvalidParameters);
  CHECK_NOTHROW(make_problem({Equation::Convection, CoefficientSpec::constant(-1.0)}, GridSpec(1, 32)));
  CHECK_THROWS_AS(make_problem({Equation::Convection, CoefficientSpec::transport()}, GridSpec(1, 64)), UnderResolved);
  CHECK_THROWS_AS(make_problem({Equation::Burgers, CoefficientSpec::burgers(4)}, GridSpec(2, 32)), GridError);
}

TEST_CASE("initial conditions") {
  SUBCASE("sine_low support") {
    GridSpec g(1, 64);
    const auto u = initial_condition({InitialSpec::Kind::SineLow}, g);
    CHECK(u.size() == 6);
    for (const auto& e : u.entries()) CHECK(std::abs(g.wavenumber_of(e.index)[0]) <= 3);
    CHECK(initial_condition({InitialSpec::Kind::SineLow}, g) == u);
    CHECK(!(initial_condition({InitialSpec::Kind::SineLow, 0.0, 1.0, 7}, g) == u));
    GridSpec g2(2, 16);
    const auto u2 = initial_condition({InitialSpec::Kind::SineLow}, g2);
    for (const auto& e : u2.entries()) {
      const Wavevector k = g2.wavenumber_of(e.index);
      CHECK(std::abs(k[0]) <= 3);
      CHECK(std::abs(k[1]) <= 3);
    }
  }
  SUBCASE("two_vortices has zero mean") {
    const auto u = initial_condition({InitialSpec::Kind::TwoVortices}, GridSpec(2, 64));
    CHECK(std::abs(u.mean()) < 1e-10);
    CHECK(hermitian_residual(u) == 0.0);
    CHECK_THROWS_AS(initial_condition({InitialSpec::Kind::TwoVortices}, GridSpec(1, 64)), NotTwoDimensional);
  }
  SUBCASE("gauss_bump decays monotonically beyond k = 2") {
    GridSpec g(1, 256);
    const auto u = initial_condition({InitialSpec::Kind::GaussBump, 0.5}, g);
    // above the roundoff floor (|u_k| ~ e^{-k^2 / 8})
    for (int k = 3; k < 14; ++k) CHECK(std::abs(u.at({k + 1, 0})) < std::abs(u.at({k, 0})));
    const auto field = dft_inverse(u.to_dense());
    CHECK(field.values().maxCoeff() == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(initial_kind_from_name("vortex"), UnknownInitialSpec);
  CHECK(initial_kind_from_name("sine_low") == InitialSpec::Kind::SineLow);
}
