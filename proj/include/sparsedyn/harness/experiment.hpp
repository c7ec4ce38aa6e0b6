#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "sparsedyn/evaluation.hpp"
#include "sparsedyn/harness/config.hpp"

namespace sparsedyn::harness {

/// A solver failure during a run, tagged with the step that failed.
class SolverFailure : public Error {
 public:
  SolverFailure(long step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

struct RunOutcome {
  RunReport sparse;
  std::optional<RunReport> low_frequency;
  int low_frequency_cutoff = -1;
  std::optional<ErrorPair> final_error;         // sparse vs dense at t_end
  std::optional<ErrorPair> reference_norms;     // dense field norms at t_end
  std::optional<ErrorPair> low_frequency_error;  // low-frequency vs dense at t_end
  std::vector<std::filesystem::path> files;
};

/// Runs the sparse solver and the requested baselines and writes into out_dir:
///   report.csv                 one row per step of the sparse run
///   lowfreq_report.csv         the same for the low-frequency baseline
///   spectrum_step<n>.txt       sparse spectrum dumps at snapshot steps and the last step
///   field_step<n>.csv          matching spatial fields
///   dense_field_final.csv, lowfreq_field_final.csv
///   summary.txt                final statistics
/// All files are deterministic for a given config. Progress and stability
/// warnings go to `log` when given.
RunOutcome run(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream* log = nullptr);

}  // namespace sparsedyn::harness
