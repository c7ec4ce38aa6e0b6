#include <chrono>

#include "doctest.h"
#include "test_support.hpp"

using namespace sparsedyn;
using namespace testing_support;

TEST_CASE("single-mode products") {
  GridSpec g(1, 16);
  auto mode = [&](int k, cd v) { return SparseSpectrum<double>::from_wavenumbers(g, {{{k, 0}, v}}); };

  const auto c = sparse_convolve(mode(2, cd(1, 1)), mode(3, cd(2, 0)));
  CHECK(c.size() == 1);
  CHECK(c.at({5, 0}) == cd(2, 2));

  // e^{ix} * e^{-ix} = 1
  CHECK(sparse_convolve(mode(1, 1.0), mode(-1, 1.0)).mean() == cd(1.0));
  // 5 + 3 = 8 leaves the box; truncation drops it rather than wrapping to -8
  CHECK(sparse_convolve(mode(5, 1.0), mode(3, 1.0)).empty());
  CHECK(sparse_convolve(mode(-5, 1.0), mode(-3, 1.0)).at({-8, 0}) == cd(1.0));
  CHECK(sparse_convolve(mode(-5, 1.0), mode(-4, 1.0)).empty());
  CHECK(sparse_convolve(SparseSpectrum<double>(g), mode(1, 1.0)).empty());
}

TEST_CASE("delta identity and shift") {
  std::mt19937_64 rng(20);
  GridSpec g(1, 64);
  const auto delta = SparseSpectrum<double>::from_wavenumbers(g, {{{0, 0}, cd(1.0)}});
  const auto b = random_sparse(g, 20, rng);
  CHECK(sparse_convolve(delta, b) == b);
  const auto a = SparseSpectrum<double>::from_wavenumbers(g, {{{1, 0}, cd(1.0)}, {{2, 0}, cd(1.0)}});
  const auto one = SparseSpectrum<double>::from_wavenumbers(g, {{{1, 0}, cd(1.0)}});
  CHECK(sparse_convolve(a, one) == SparseSpectrum<double>::from_wavenumbers(g, {{{2, 0}, cd(1.0)}, {{3, 0}, cd(1.0)}}));
}

TEST_CASE("sin x squared") {
  GridSpec g(1, 32);
  const auto s = SparseSpectrum<double>::from_wavenumbers(g, {{{1, 0}, cd(0, -0.5)}, {{-1, 0}, cd(0, 0.5)}});
  const auto sq = sparse_convolve(s, s);
  // sin^2 x = 1/2 - cos(2x)/2
  CHECK(std::abs(sq.mean() - cd(0.5)) < 1e-15);
  CHECK(std::abs(sq.at({2, 0}) - cd(-0.25)) < 1e-15);
  CHECK(std::abs(sq.at({-2, 0}) - cd(-0.25)) < 1e-15);
  CHECK(sq.size() == 3);
}

TEST_CASE("sparse convolution matches the brute-force oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int dims = trial % 2 ? 2 : 1;
    GridSpec g(dims, dims == 2 ? 8 : 32);
    // alternate between sparse supports (pair-sort path) and dense ones (accumulator path)
    const std::size_t n_s = trial % 3 == 0 ? g.size() / 2 : 3;
    const auto a = random_sparse(g, n_s, rng);
    const auto b = random_sparse(g, n_s + 1, rng);
    const auto oracle = brute_force_convolution(a.to_dense(), b.to_dense());
    CHECK(max_abs_diff(sparse_convolve(a, b), oracle) < 1e-12);
    CHECK(max_abs_diff(dense_convolve(a.to_dense(), b.to_dense()), oracle) < 1e-12);
  }
}

TEST_CASE("algebraic properties") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    GridSpec g(trial % 2 ? 2 : 1, trial % 2 ? 16 : 64);
    const auto a = random_sparse(g, 20, rng);
    const auto b = random_sparse(g, 15, rng);
    const auto c = random_sparse(g, 10, rng);
    CHECK(max_abs_diff(sparse_convolve(a, b), sparse_convolve(b, a).to_dense()) < 1e-12);
    const auto lhs = sparse_convolve(a, b + c);
    const auto rhs = sparse_convolve(a, b) + sparse_convolve(a, c);
    CHECK(max_abs_diff(lhs, rhs.to_dense()) < 1e-12);
  }
}

TEST_CASE("real times real stays Hermitian") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    GridSpec g(trial % 2 ? 2 : 1, 32);
    const auto a = random_real_sparse(g, 6, rng, 0.6);
    const auto b = random_real_sparse(g, 6, rng, 0.6);
    const auto c = drop_nyquist(sparse_convolve(a, b));
    CHECK(hermitian_residual(c) < 1e-13);
    // the product of the physical fields, sampled, equals the product spectrum
    const auto pa = dft_inverse(a.to_dense()), pb = dft_inverse(b.to_dense());
    SpatialField<double> prod(g, pa.values().cwiseProduct(pb.values()));
    CHECK(max_abs_diff(c, dft_forward(prod)) < 1e-12);
  }
}

TEST_CASE("deterministic results") {
  std::mt19937_64 rng(24);
  GridSpec g(2, 32);
  const auto a = random_sparse(g, 60, rng);
  const auto b = random_sparse(g, 80, rng);
  const auto first = sparse_convolve(a, b);
  for (int rep = 0; rep < 3; ++rep) CHECK(sparse_convolve(a, b) == first);
}

TEST_CASE("grid mismatch") {
  const SparseSpectrum<double> a(GridSpec(1, 16)), b(GridSpec(1, 32));
  CHECK_THROWS_AS(sparse_convolve(a, b), GridMismatch);
}

TEST_CASE("sparse route is faster for very sparse inputs") {
  std::mt19937_64 rng(25);
  GridSpec g(1, 4096);
  const auto a = random_sparse(g, 20, rng);
  const auto b = random_sparse(g, 20, rng);
  const auto da = a.to_dense(), db = b.to_dense();
  REQUIRE(max_abs_diff(sparse_convolve(a, b), dense_convolve(da, db)) < 1e-12);
  using clock = std::chrono::steady_clock;
  auto time = [](auto&& fn) {
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = clock::now();
      fn();
      best = std::min(best, std::chrono::duration<double>(clock::now() - t0).count());
    }
    return best;
  };
  const double ts = time([&] { (void)sparse_convolve(a, b); });
  const double td = time([&] { (void)dense_convolve(da, db); });
  CHECK(ts < td);
}
