#include "dp7/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dp7 {

namespace {

GaussRule compute_gauss(int n) {
  // Newton iteration on Legendre polynomials; standard symmetric layout.
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

RadialGrid make_radial_grid(int panels) {
  if (panels < 1) throw std::invalid_argument("make_radial_grid: panels must be positive");
  const GaussRule& g = gauss_legendre(4);
  RadialGrid grid;
  grid.panels = panels;
  grid.r.reserve(static_cast<size_t>(panels) * g.x.size());
  grid.w.reserve(static_cast<size_t>(panels) * g.x.size());
  const double h = (M_PI / 2.0) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (size_t k = 0; k < g.x.size(); ++k) {
      const double theta = a + 0.5 * h * (g.x[k] + 1.0);
      const double c = std::cos(theta);
      grid.r.push_back(std::tan(theta));
      grid.w.push_back(0.5 * h * g.w[k] / (c * c));
    }
  }
  return grid;
}

namespace {

double eval_1d(const std::function<double(double)>& f, const RadialGrid& g, ExecMode mode) {
  return block_sum(g.r.size(), [&](size_t i) { return g.w[i] * f(g.r[i]); }, mode);
}

double eval_2d(const std::function<double(double, double)>& f, const RadialGrid& g,
               ExecMode mode) {
  const size_t n = g.r.size();
  return block_sum(n * n, [&](size_t idx) {
    const size_t i = idx / n, j = idx % n;
    return g.w[i] * g.w[j] * f(g.r[i], g.r[j]);
  }, mode);
}

template <class Eval>
double refine(Eval eval, const QuadratureGrid& grid, const std::string& label) {
  int panels = grid.panels;
  double prev = eval(panels);
  for (int k = 0; k < grid.max_doublings; ++k) {
    panels *= 2;
    const double cur = eval(panels);
    const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
    if (std::abs(cur - prev) <= grid.rel_tol * scale) return cur;
    prev = cur;
  }
  const double last = eval(panels * 2);
  const double scale = std::max({std::abs(last), std::abs(prev), 1e-300});
  if (std::abs(last - prev) <= grid.rel_tol * scale) return last;
  throw AccuracyError(label + ": quadrature did not settle", prev, last);
}

}  // namespace

double converged_radial_integral_1d(const std::function<double(double)>& f,
                                    const QuadratureGrid& grid,
                                    const std::string& label) {
  return refine(
      [&](int panels) { return eval_1d(f, make_radial_grid(panels), grid.mode); }, grid,
      label);
}

double converged_radial_integral_2d(const std::function<double(double, double)>& f,
                                    const QuadratureGrid& grid,
                                    const std::string& label) {
  return refine(
      [&](int panels) { return eval_2d(f, make_radial_grid(panels), grid.mode); }, grid,
      label);
}

double radial_integral_2d_once(const std::function<double(double, double)>& f, int panels,
                               ExecMode mode) {
  return eval_2d(f, make_radial_grid(panels), mode);
}

}  // namespace dp7
