#include "sparsedyn/harness/recipes.hpp"

namespace sparsedyn::harness {

namespace {

// Thresholds are in coefficient amplitude units (coefficients normalized by 1/N).

constexpr std::string_view convection_fig1 = R"(# Variable-coefficient transport, leapfrog, 512 points.
name = convection_fig1
equation = convection
dims = 1
n_per_dim = 512
dt = 0.002
t_end = 1
lambda_mode = fixed
lambda = 9.765625e-06
coefficient = transport
coefficient_frequency = 64
initial = gauss_bump
initial_width = 1
baselines = dense,low_frequency
output_dir = out/convection_fig1
snapshot_times = 0,0.5,1
)";

constexpr std::string_view parabolic_fig2 = R"(# Oscillatory-coefficient diffusion, forward Euler, 2048 points.
# dt sits at the explicit stability limit, so the run covers 20000 steps.
name = parabolic_fig2
equation = parabolic
dims = 1
n_per_dim = 2048
dt = 1.5e-08
t_end = 0.0003
lambda_mode = fixed
lambda = 1.220703125e-09
coefficient = diffusion
coefficient_frequency = 256
initial = gauss_bump
initial_width = 1
baselines = dense
output_dir = out/parabolic_fig2
snapshot_times = 0,0.0003
)";

constexpr std::string_view burgers_fig3 = R"(# Viscous Burgers with an oscillatory viscosity, TVD-RK2, 1024 points.
name = burgers_fig3
equation = burgers
dims = 1
n_per_dim = 1024
dt = 7.6e-06
t_end = 0.038
lambda_mode = fixed
lambda = 6.15234375e-08
coefficient = burgers
coefficient_frequency = 128
initial = sine_low
seed = 42
baselines = dense,low_frequency
output_dir = out/burgers_fig3
snapshot_times = 0,0.038
)";

constexpr std::string_view vorticity_fig4 = R"(# Forced 2-D vorticity, Crank-Nicolson with lagged advection, 256 x 256.
name = vorticity_fig4
equation = vorticity
dims = 2
n_per_dim = 256
dt = 0.025
t_end = 5
lambda_mode = fixed
lambda = 7.5836181640625e-07
gamma = 0.001
forcing = vorticity_forcing
forcing_frequency = 32
initial = two_vortices
initial_width = 0.4
baselines = dense
output_dir = out/vorticity_fig4
snapshot_times = 0,5
)";

constexpr std::string_view burgers_n256 = R"(# Small Burgers run for comparing the sparse and low-frequency solutions.
name = burgers_n256
equation = burgers
dims = 1
n_per_dim = 256
dt = 0.0001
t_end = 0.1
lambda_mode = fixed
lambda = 2.4e-07
coefficient = burgers
coefficient_frequency = 64
initial = sine_low
seed = 42
baselines = dense,low_frequency
output_dir = out/burgers_n256
)";

constexpr std::string_view vorticity_convergence = R"(# Resolution study base: use with converge --resolutions 32,64,128.
name = vorticity_convergence
equation = vorticity
dims = 2
n_per_dim = 32
dt = 0.05
t_end = 2
lambda_mode = power_law
lambda_c = 0.001
lambda_p = 2
gamma = 0.001
forcing = vorticity_forcing
forcing_frequency = 4
initial = two_vortices
baselines = dense
output_dir = out/vorticity_convergence
)";

constexpr std::string_view parabolic_convergence = R"(# Constant-coefficient heat equation; converge compares with the exact solution.
name = parabolic_convergence
equation = parabolic
dims = 1
n_per_dim = 32
dt = 0.01
t_end = 0.1
lambda_mode = power_law
lambda_c = 0.01
lambda_p = 2
coefficient = constant
coefficient_value = 0.1
initial = gauss_bump
initial_width = 0.5
baselines = dense
output_dir = out/parabolic_convergence
)";

}  // namespace

const std::vector<Recipe>& bundled_recipes() {
  static const std::vector<Recipe> recipes = {
      {"convection_fig1", "variable-coefficient transport, N = 512", convection_fig1},
      {"parabolic_fig2", "oscillatory diffusion, N = 2048", parabolic_fig2},
      {"burgers_fig3", "viscous Burgers, N = 1024", burgers_fig3},
      {"vorticity_fig4", "forced 2-D vorticity, 256 x 256", vorticity_fig4},
      {"burgers_n256", "viscous Burgers, N = 256, sparse vs low-frequency", burgers_n256},
      {"vorticity_convergence", "vorticity resolution study base (32 x 32)", vorticity_convergence},
      {"parabolic_convergence", "heat equation resolution study base (N = 32)", parabolic_convergence},
  };
  return recipes;
}

ExperimentConfig recipe_config(std::string_view name) {
  for (const auto& r : bundled_recipes())
    if (r.name == name) return parse_config(r.text);
  throw ConfigError("unknown recipe '" + std::string(name) + "'");
}

ExperimentConfig resolve_config(std::string_view source) {
  constexpr std::string_view prefix = "recipe:";
  if (source.substr(0, prefix.size()) == prefix) return recipe_config(source.substr(prefix.size()));
  return load_config(std::filesystem::path(source));
}

}  // namespace sparsedyn::harness
