#include "sparsedyn/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "sparsedyn/harness/io.hpp"
#include "sparsedyn/spectrum_io.hpp"

namespace sparsedyn::harness {

namespace {

using Clock = std::chrono::steady_clock;

ReportRecord make_record(long step, double time, std::size_t n_s, std::size_t total, std::complex<double> mean) {
  ReportRecord r;
  r.step = step;
  r.time = time;
  r.n_s = n_s;
  r.sparsity_fraction = double(n_s) / double(total);
  r.mean = mean;
  return r;
}

void attach_error(ReportRecord& r, const ErrorPair& e) {
  r.l2_error = e.l2;
  r.linf_error = e.linf;
}

std::size_t count_nonzero(const DenseSpectrum<double>& spec) {
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < spec.coeffs().size(); ++i)
    if (std::abs(spec.coeffs()[i]) >= underflow_threshold<double>()) ++n;
  return n;
}

bool finite(const SparseSpectrum<double>& spec) {
  for (const auto& e : spec.entries())
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) return false;
  return true;
}

bool finite(const DenseSpectrum<double>& spec) { return spec.coeffs().allFinite(); }

// Runs one step and turns library errors or a blow-up into a SolverFailure.
template <typename Solver, typename State>
void guarded_step(Solver& solver, long step, const char* which, State&& state_of) {
  try {
    solver.step();
  } catch (const Error& e) {
    throw SolverFailure(step, std::string(which) + ": " + e.what());
  }
  if (!finite(state_of(solver))) throw SolverFailure(step, std::string(which) + ": non-finite coefficients");
}

std::string rule_string(const LambdaSchedule& s, double dt) {
  if (s.mode == LambdaSchedule::Mode::Fixed) return "fixed " + format_double(s.fixed_lambda);
  return "power_law C=" + format_double(s.C) + " p=" + format_double(s.p) + " (" + format_double(lambda_at(s, dt)) + ")";
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream* log) {
  config.validate();
  const long n_steps = config.n_steps();
  const GridSpec grid = config.grid();
  const auto problem = make_problem(config.params(), grid);
  const auto initial = initial_condition(config.initial, grid);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  AdvanceOptions options;
  options.threshold.protect_mean = config.protect_mean;
  options.stability = config.stability;
  options.warn = [log](const std::string& m) {
    if (log) *log << "warning: " << m << '\n';
  };
  AdvanceOptions baseline_options = options;
  baseline_options.stability = StabilityPolicy::Ignore;  // reported once, by the sparse solver

  RunOutcome outcome;
  outcome.sparse.equation = std::string(to_string(config.equation));
  outcome.sparse.grid = grid.shape_string();
  outcome.sparse.dt = config.dt;
  outcome.sparse.lambda_rule = rule_string(config.lambda, config.dt);

  std::set<long> snapshots;
  for (double t : config.snapshot_times) snapshots.insert(config.step_of(t));
  snapshots.insert(n_steps);

  auto write_file = [&](const std::string& name, auto&& writer) {
    const auto path = out_dir / name;
    auto out = open_output(path);
    writer(out);
    outcome.files.push_back(path);
  };
  auto dump_snapshot = [&](long step, const SparseSpectrum<double>& state) {
    if (!snapshots.count(step)) return;
    const std::string tag = "step" + std::to_string(step);
    write_file("spectrum_" + tag + ".txt", [&](std::ostream& o) { write_spectrum(o, state); });
    write_file("field_" + tag + ".csv", [&](std::ostream& o) { write_field_csv(o, dft_inverse(state.to_dense())); });
  };

  // Sparse run, with the dense reference advanced in lockstep when requested.
  SparseSolver<double> sparse(problem, initial, config.dt, config.lambda, options);
  std::optional<DenseSolver<double>> dense;
  if (config.dense_baseline) dense.emplace(problem, initial.to_dense(), config.dt, std::nullopt, baseline_options);

  auto sparse_record = [&] {
    const auto r = sparse.record();
    auto rec = make_record(r.step, r.time, r.n_s, grid.size(), r.mean);
    if (dense) attach_error(rec, error_metrics(sparse.state().current, dense->current()));
    return rec;
  };
  outcome.sparse.records.push_back(sparse_record());
  dump_snapshot(0, sparse.state().current);

  double sparse_seconds = 0.0;
  for (long n = 1; n <= n_steps; ++n) {
    const auto t0 = Clock::now();
    guarded_step(sparse, n, "sparse", [](const auto& s) -> const auto& { return s.state().current; });
    sparse_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
    if (dense) guarded_step(*dense, n, "dense", [](const auto& s) -> const auto& { return s.current(); });
    outcome.sparse.records.push_back(sparse_record());
    dump_snapshot(n, sparse.state().current);
    if (log && n_steps >= 10 && n % (n_steps / 10) == 0)
      *log << "  step " << n << "/" << n_steps << "  n_s = " << sparse.state().current.size() << '\n';
  }
  outcome.sparse.seconds_per_step = n_steps > 0 ? sparse_seconds / double(n_steps) : 0.0;

  if (dense) {
    outcome.final_error = error_metrics(sparse.state().current, dense->current());
    const auto reference = dft_inverse(dense->current());
    outcome.reference_norms = field_norms(reference);
    write_file("dense_field_final.csv", [&](std::ostream& o) { write_field_csv(o, reference); });
  }
  write_file("report.csv", [&](std::ostream& o) { write_report_csv(o, outcome.sparse); });

  // Low-frequency baseline with as many modes as the final sparse state.
  if (config.low_frequency_baseline) {
    const int cutoff = std::min(match_mode_count(outcome.sparse, grid.dims()), grid.n_per_dim() / 2 - 1);
    outcome.low_frequency_cutoff = cutoff;
    RunReport report;
    report.equation = outcome.sparse.equation;
    report.grid = outcome.sparse.grid;
    report.dt = config.dt;
    report.lambda_rule = "low_frequency K=" + std::to_string(cutoff);

    DenseSolver<double> low(problem, initial.to_dense(), config.dt, cutoff, baseline_options);
    std::optional<DenseSolver<double>> reference;
    if (config.dense_baseline) reference.emplace(problem, initial.to_dense(), config.dt, std::nullopt, baseline_options);
    auto low_record = [&] {
      auto rec = make_record(low.step_index(), low.time(), count_nonzero(low.current()), grid.size(), low.current().mean());
      if (reference) attach_error(rec, error_metrics(low.current(), reference->current()));
      return rec;
    };
    report.records.push_back(low_record());
    const auto t0 = Clock::now();
    for (long n = 1; n <= n_steps; ++n) {
      guarded_step(low, n, "low_frequency", [](const auto& s) -> const auto& { return s.current(); });
      if (reference) guarded_step(*reference, n, "dense", [](const auto& s) -> const auto& { return s.current(); });
      report.records.push_back(low_record());
    }
    report.seconds_per_step = n_steps > 0 ? std::chrono::duration<double>(Clock::now() - t0).count() / double(n_steps) : 0.0;
    if (reference) outcome.low_frequency_error = error_metrics(low.current(), reference->current());
    write_file("lowfreq_field_final.csv", [&](std::ostream& o) { write_field_csv(o, dft_inverse(low.current())); });
    write_file("lowfreq_report.csv", [&](std::ostream& o) { write_report_csv(o, report); });
    outcome.low_frequency = std::move(report);
  }

  write_file("summary.txt", [&](std::ostream& o) {
    auto put = [&](std::string_view key, const std::string& value) { o << key << " = " << value << '\n'; };
    put("name", config.name);
    put("equation", outcome.sparse.equation);
    put("grid", outcome.sparse.grid);
    put("dt", format_double(config.dt));
    put("steps", std::to_string(n_steps));
    put("lambda", outcome.sparse.lambda_rule);
    put("final_n_s", std::to_string(outcome.sparse.final_n_s()));
    put("final_sparsity_fraction", format_double(outcome.sparse.records.back().sparsity_fraction));
    if (outcome.final_error) {
      const auto& e = *outcome.final_error;
      const auto& r = *outcome.reference_norms;
      put("final_l2_error", format_double(e.l2));
      put("final_linf_error", format_double(e.linf));
      put("final_relative_l2_error", format_double(r.l2 > 0 ? e.l2 / r.l2 : 0.0));
      put("final_relative_linf_error", format_double(r.linf > 0 ? e.linf / r.linf : 0.0));
    }
    if (outcome.low_frequency) {
      put("low_frequency_cutoff", std::to_string(outcome.low_frequency_cutoff));
      put("low_frequency_final_n_s", std::to_string(outcome.low_frequency->final_n_s()));
      if (outcome.low_frequency_error) {
        const auto& e = *outcome.low_frequency_error;
        const auto& r = *outcome.reference_norms;
        put("low_frequency_final_l2_error", format_double(e.l2));
        put("low_frequency_final_linf_error", format_double(e.linf));
        put("low_frequency_final_relative_l2_error", format_double(r.l2 > 0 ? e.l2 / r.l2 : 0.0));
      }
    }
  });
  return outcome;
}

}  // namespace sparsedyn::harness
