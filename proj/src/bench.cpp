#include "sparsedyn/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "sparsedyn/convolution.hpp"
#include "sparsedyn/harness/config.hpp"

namespace sparsedyn::harness {

namespace {

SparseSpectrum<double> random_spectrum(const GridSpec& grid, std::size_t n_s, std::mt19937_64& rng) {
  std::vector<std::size_t> slots(grid.size());
  std::iota(slots.begin(), slots.end(), std::size_t(0));
  std::shuffle(slots.begin(), slots.end(), rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<SparseSpectrum<double>::Entry> entries;
  for (std::size_t i = 0; i < n_s; ++i) {
    const double re = normal(rng);
    entries.push_back({slots[i], {re, normal(rng)}});
  }
  return SparseSpectrum<double>::from_entries(grid, std::move(entries));
}

template <typename Fn>
double median_seconds(int repetitions, Fn&& fn) {
  fn();  // warm-up: transform plans, allocations
  std::vector<double> times;
  for (int r = 0; r < repetitions; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

}  // namespace

std::vector<BenchRow> bench_convolution(const std::vector<int>& sizes, const std::vector<std::size_t>& sparsities,
                                        int repetitions, std::uint64_t seed) {
  if (repetitions < 1) throw ConfigError("reps: must be >= 1");
  if (sizes.empty() || sparsities.empty()) throw ConfigError("sizes and sparsities must be non-empty");
  std::vector<BenchRow> rows;
  for (int n : sizes) {
    GridSpec grid(1, 4);
    try {
      grid = GridSpec(1, n);
    } catch (const GridError& e) {
      throw ConfigError(std::string("sizes: ") + e.what());
    }
    for (std::size_t n_s : sparsities) {
      if (n_s > grid.size())
        throw ConfigError("sparsities: n_s = " + std::to_string(n_s) + " exceeds N = " + std::to_string(n));
      std::mt19937_64 rng(seed ^ (std::uint64_t(n) << 32) ^ std::uint64_t(n_s));
      const auto a = random_spectrum(grid, n_s, rng);
      const auto b = random_spectrum(grid, n_s, rng);
      const auto da = a.to_dense(), db = b.to_dense();

      BenchRow row{n, n_s, repetitions, 0.0, 0.0, 0.0};
      row.max_difference = (sparse_convolve(a, b).to_dense().coeffs() - dense_convolve(da, db).coeffs()).cwiseAbs().maxCoeff();
      if (!(row.max_difference <= 1e-10))
        throw Error("sparse and transform products differ by " + format_double(row.max_difference));
      row.sparse_seconds = median_seconds(repetitions, [&] { (void)sparse_convolve(a, b); });
      row.dense_seconds = median_seconds(repetitions, [&] { (void)dense_convolve(da, db); });
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,n_s,reps,sparse_median_s,dense_median_s,speedup,max_difference\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.n_s << ',' << r.repetitions << ',' << format_double(r.sparse_seconds) << ','
        << format_double(r.dense_seconds) << ',' << format_double(r.dense_seconds / r.sparse_seconds) << ','
        << format_double(r.max_difference) << '\n';
}

}  // namespace sparsedyn::harness
