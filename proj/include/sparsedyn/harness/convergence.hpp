#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sparsedyn/harness/config.hpp"

namespace sparsedyn::harness {

struct ConvergenceRow {
  int n_per_dim = 0;
  double dx = 0.0;
  double dt = 0.0;
  double lambda = 0.0;
  long steps = 0;
  std::size_t final_n_s = 0;
  double l2 = 0.0;
  double linf = 0.0;
  std::optional<double> l2_order;  // log(e_prev / e) / log(dx_prev / dx)
  std::optional<double> linf_order;
};

struct ConvergenceTable {
  std::string reference;  // "analytic" or "dense <n>"
  std::vector<ConvergenceRow> rows;
};

/// Sparse runs of `config` at each resolution. dt is rescaled from the config's
/// own resolution, proportional to dx for convection and vorticity and to dx^2
/// for parabolic and Burgers; lambda follows the config's power law at each dt.
/// Final states are injected into the finest grid and compared with the finest
/// dense run, or with the exact solution for constant-coefficient parabolic runs.
ConvergenceTable convergence_study(const ExperimentConfig& config, const std::vector<int>& resolutions,
                                   std::ostream* log = nullptr);

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

}  // namespace sparsedyn::harness
