#pragma once

#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sparsedyn/solvers.hpp"

namespace sparsedyn::harness {

Equation equation_from_name(std::string_view name);
CoefficientSpec::Kind coefficient_kind_from_name(std::string_view name);

/// One experiment: equation, discretization, shrinkage rule, data and outputs.
///
/// File form is flat `key = value` lines with `#` comments. Every key is
/// optional and falls back to the defaults below; unknown keys are errors.
///
///   name                 free-form label
///   equation             convection | parabolic | burgers | vorticity
///   dims, n_per_dim      grid shape; domain_length is the period (default 2 pi)
///   dt, t_end            time step and final time; t_end / dt must be whole
///   lambda_mode          fixed | power_law
///   lambda               fixed threshold
///   lambda_c, lambda_p   power law lambda = C dt^p
///   coefficient          none | constant | transport | diffusion | burgers
///   coefficient_value    constant coefficient value
///   coefficient_frequency  fast frequency m of the oscillatory coefficients (0 = default)
///   gamma                vorticity viscosity
///   forcing              none | vorticity_forcing; forcing_frequency as above
///   initial              gauss_bump | sine_low | two_vortices
///   initial_width, initial_amplitude, seed
///   protect_mean         true | false
///   baselines            comma list of dense, low_frequency (or none)
///   stability            warn | strict | ignore
///   output_dir           default output directory of `run`
///   snapshot_times       comma list of times for spectrum and field dumps
struct ExperimentConfig {
  std::string name;
  Equation equation = Equation::Convection;
  int dims = 1;
  int n_per_dim = 64;
  double domain_length = 2 * std::numbers::pi;
  double dt = 1e-3;
  double t_end = 1.0;
  LambdaSchedule lambda;
  CoefficientSpec coefficient;
  double gamma = 0.0;
  CoefficientSpec forcing;
  InitialSpec initial;
  bool protect_mean = false;
  bool dense_baseline = false;
  bool low_frequency_baseline = false;
  StabilityPolicy stability = StabilityPolicy::Warn;
  std::string output_dir = "out";
  std::vector<double> snapshot_times;

  GridSpec grid() const;
  EquationParams params() const;

  /// Number of steps to t_end; throws ConfigError unless t_end / dt is whole within 1e-9.
  long n_steps() const;

  /// Step index nearest to a snapshot time.
  long step_of(double time) const;

  /// Checks value ranges and that the problem can be built; throws ConfigError
  /// naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Writes every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Shortest text that reads back to the same double.
std::string format_double(double value);

}  // namespace sparsedyn::harness
