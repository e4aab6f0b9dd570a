#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dp7/geometry.hpp"

namespace dp7 {

// Seed-deterministic sample points of one chart. Radii are tan-distributed
// so the whole chart is covered; phases uniform. Points are generated in a
// fixed sequential order so downstream parallel evaluation stays
// reproducible.
inline std::vector<ChartPoint> random_chart_points(Chart chart, int count,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  const double half_pi = 1.57079632679489661923;
  for (int i = 0; i < count; ++i) {
    double r1 = std::tan(half_pi * uni(rng));
    double t1 = 2.0 * half_pi * uni(rng);
    double r2 = std::tan(half_pi * uni(rng));
    double t2 = 2.0 * half_pi * uni(rng);
    ChartPoint p;
    p.chart = chart;
    p.c1 = std::polar(r1, t1);
    p.c2 = std::polar(r2, t2);
    out.push_back(p);
  }
  return out;
}

// Sample points restricted to the unit polydisc of the chart.
inline std::vector<ChartPoint> random_polydisc_points(Chart chart, int count,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  const double two_pi = 6.28318530717958647692;
  for (int i = 0; i < count; ++i) {
    ChartPoint p;
    p.chart = chart;
    p.c1 = std::polar(uni(rng), two_pi * uni(rng));
    p.c2 = std::polar(uni(rng), two_pi * uni(rng));
    out.push_back(p);
  }
  return out;
}

}  // namespace dp7
