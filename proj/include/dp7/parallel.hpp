#pragma once

#include <cstddef>
#include <vector>

namespace dp7 {

// Execution policy for the hot reduction kernels. Serial is the reference
// implementation kept for testing; OpenMP is the production path.
enum class ExecMode { Serial, OpenMP };

// Deterministic sum of f(i) for i in [0, n). The index range is split into
// fixed-size blocks; block partials are accumulated in index order regardless
// of thread count, so results are byte-identical across runs and thread
// counts (and very close between the two modes, which tests assert).
template <class F>
double block_sum(std::size_t n, F&& f, ExecMode mode) {
  constexpr std::size_t kBlock = 4096;
  if (mode == ExecMode::Serial) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += f(i);
    return acc;
  }
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += f(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

// Deterministic max of f(i) over [0, n); n must be positive.
template <class F>
double block_max(std::size_t n, F&& f, ExecMode mode) {
  constexpr std::size_t kBlock = 4096;
  if (mode == ExecMode::Serial || n <= kBlock) {
    double best = f(0);
    for (std::size_t i = 1; i < n; ++i) {
      const double v = f(i);
      if (v > best) best = v;
    }
    return best;
  }
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double best = f(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double v = f(i);
      if (v > best) best = v;
    }
    partial[static_cast<std::size_t>(b)] = best;
  }
  double best = partial[0];
  for (double p : partial)
    if (p > best) best = p;
  return best;
}

}  // namespace dp7
