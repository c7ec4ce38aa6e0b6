#include "sparsedyn/harness/convergence.hpp"

#include <cmath>

#include "sparsedyn/evaluation.hpp"

namespace sparsedyn::harness {

namespace {

// Exact heat-equation solution with a constant coefficient: each mode decays
// by exp(-nu |k|^2 t).
DenseSpectrum<double> heat_solution(const SparseSpectrum<double>& initial, double nu, double t) {
  const double s = initial.grid().wavenumber_scale();
  return map_entries(initial, [&](const Wavevector& k, std::complex<double> z) {
           const double ksq = s * s * (double(k[0]) * k[0] + double(k[1]) * k[1]);
           return z * std::exp(-nu * ksq * t);
         })
      .to_dense();
}

std::optional<double> order(double e_prev, double e, double dx_prev, double dx) {
  if (!(e_prev > 0.0) || !(e > 0.0)) return std::nullopt;
  return std::log(e_prev / e) / std::log(dx_prev / dx);
}

}  // namespace

ConvergenceTable convergence_study(const ExperimentConfig& config, const std::vector<int>& resolutions,
                                   std::ostream* log) {
  if (resolutions.size() < 3) throw ConfigError("resolutions: need at least 3, got " + std::to_string(resolutions.size()));
  for (std::size_t i = 1; i < resolutions.size(); ++i)
    if (resolutions[i] <= resolutions[i - 1]) throw ConfigError("resolutions: must be strictly ascending");
  if (config.lambda.mode != LambdaSchedule::Mode::PowerLaw)
    throw ConfigError("lambda_mode: a convergence study needs power_law");

  const bool diffusive = config.equation == Equation::Parabolic || config.equation == Equation::Burgers;
  const double dt_exponent = diffusive ? 2.0 : 1.0;

  // Per-resolution configs, each validated like a standalone run.
  std::vector<ExperimentConfig> runs;
  for (int n : resolutions) {
    ExperimentConfig c = config;
    c.n_per_dim = n;
    c.dt = config.dt * std::pow(double(config.n_per_dim) / double(n), dt_exponent);
    c.snapshot_times.clear();
    try {
      c.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("resolution " + std::to_string(n) + ": " + e.what());
    }
    runs.push_back(c);
  }

  const ExperimentConfig& finest = runs.back();
  const GridSpec fine_grid = finest.grid();
  AdvanceOptions options;
  options.threshold.protect_mean = config.protect_mean;
  options.stability = config.stability;
  options.warn = [log](const std::string& m) {
    if (log) *log << "warning: " << m << '\n';
  };

  ConvergenceTable table;
  DenseSpectrum<double> reference(fine_grid);
  const bool analytic = config.equation == Equation::Parabolic && config.coefficient.kind == CoefficientSpec::Kind::Constant;
  if (analytic) {
    table.reference = "analytic";
    reference = heat_solution(initial_condition(config.initial, fine_grid), config.coefficient.value,
                              double(finest.n_steps()) * finest.dt);
  } else {
    table.reference = "dense " + fine_grid.shape_string();
    if (log) *log << "reference: dense run on " << fine_grid.shape_string() << '\n';
    const auto problem = make_problem(finest.params(), fine_grid);
    AdvanceOptions quiet = options;
    quiet.stability = StabilityPolicy::Ignore;
    DenseSolver<double> dense(problem, initial_condition(finest.initial, fine_grid).to_dense(), finest.dt, std::nullopt, quiet);
    for (long n = 0; n < finest.n_steps(); ++n) dense.step();
    reference = dense.current();
  }

  for (const auto& c : runs) {
    const GridSpec grid = c.grid();
    if (log) *log << "sparse run on " << grid.shape_string() << ", dt = " << format_double(c.dt) << '\n';
    const auto result = advance(initial_condition(c.initial, grid), make_problem(c.params(), grid), c.lambda, c.dt,
                                c.n_steps(), options);
    const auto err = error_metrics(inject(result.state.current.to_dense(), fine_grid), reference);
    ConvergenceRow row;
    row.n_per_dim = c.n_per_dim;
    row.dx = grid.dx();
    row.dt = c.dt;
    row.lambda = lambda_at(c.lambda, c.dt);
    row.steps = c.n_steps();
    row.final_n_s = result.state.current.size();
    row.l2 = err.l2;
    row.linf = err.linf;
    if (!table.rows.empty()) {
      const auto& prev = table.rows.back();
      row.l2_order = order(prev.l2, row.l2, prev.dx, row.dx);
      row.linf_order = order(prev.linf, row.linf, prev.dx, row.dx);
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "n_per_dim,dx,dt,lambda,steps,final_n_s,l2_error,linf_error,l2_order,linf_order\n";
  for (const auto& r : table.rows) {
    out << r.n_per_dim << ',' << format_double(r.dx) << ',' << format_double(r.dt) << ',' << format_double(r.lambda) << ','
        << r.steps << ',' << r.final_n_s << ',' << format_double(r.l2) << ',' << format_double(r.linf) << ','
        << (r.l2_order ? format_double(*r.l2_order) : "") << ',' << (r.linf_order ? format_double(*r.linf_order) : "")
        << '\n';
  }
}

}  // namespace sparsedyn::harness
