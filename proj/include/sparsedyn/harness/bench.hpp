#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace sparsedyn::harness {

struct BenchRow {
  int n = 0;
  std::size_t n_s = 0;
  int repetitions = 0;
  double sparse_seconds = 0.0;  // median
  double dense_seconds = 0.0;   // median
  double max_difference = 0.0;
};

/// Times sparse_convolve against the padded-transform product on random 1-D
/// n_s-sparse spectra, one row per (n, n_s) pair. The two results are checked
/// to agree within 1e-10 before timing.
std::vector<BenchRow> bench_convolution(const std::vector<int>& sizes, const std::vector<std::size_t>& sparsities,
                                        int repetitions, std::uint64_t seed = 42);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace sparsedyn::harness
