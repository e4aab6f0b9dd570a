#include "dp7/cp1.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dp7::cp1 {

namespace {

void check_mk(int m, int k) {
  if (m < 1) throw std::invalid_argument("cp1: power m must be >= 1");
  if (k < 0 || k > m) throw std::invalid_argument("cp1: exponent k out of [0, m]");
}

double log_monomial_norm_sq(int m, int k, double r) {
  if (k > 0 && r == 0.0) return -std::numeric_limits<double>::infinity();
  double v = -m * std::log1p(r * r);
  if (k > 0) v += 2.0 * k * std::log(r);
  return v;
}

}  // namespace

double volume_integral(const std::function<double(double)>& f,
                       const QuadratureGrid& quad) {
  auto g = [&](double r) { return 2.0 * f(r) * r / ((1.0 + r * r) * (1.0 + r * r)); };
  return converged_radial_integral_1d(g, quad, "cp1_volume_integral");
}

double monomial_norm_sq(int m, int k, double r) {
  check_mk(m, k);
  double lv = log_monomial_norm_sq(m, k, r);
  return std::isinf(lv) ? 0.0 : std::exp(lv);
}

double exact_monomial_norm(int m, int k) {
  check_mk(m, k);
  return std::exp(std::lgamma(k + 1.0) + std::lgamma(m - k + 1.0) -
                  std::lgamma(m + 2.0));
}

double monomial_norm_quadrature(int m, int k, const QuadratureGrid& quad) {
  check_mk(m, k);
  return volume_integral([=](double r) { return monomial_norm_sq(m, k, r); },
                         quad);
}

double weighted_monomial_norm(int m, int k,
                              const std::function<double(double)>& phi,
                              const QuadratureGrid& quad) {
  check_mk(m, k);
  return volume_integral(
      [=, &phi](double r) {
        return monomial_norm_sq(m, k, r) * std::exp(-m * phi(r));
      },
      quad);
}

double density(int m, double r) {
  double acc = 0.0;
  for (int k = 0; k <= m; ++k)
    acc += monomial_norm_sq(m, k, r) / exact_monomial_norm(m, k);
  return acc;
}

double density_quadrature(int m, double r, const QuadratureGrid& quad) {
  double acc = 0.0;
  for (int k = 0; k <= m; ++k)
    acc += monomial_norm_sq(m, k, r) / monomial_norm_quadrature(m, k, quad);
  return acc;
}

double log_section_approx(int m, double r,
                          const std::function<double(double)>& phi,
                          const QuadratureGrid& quad) {
  std::vector<double> log_terms;
  log_terms.reserve(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    double g = weighted_monomial_norm(m, k, phi, quad);
    if (g <= 0.0)
      throw std::runtime_error("cp1::log_section_approx: nonpositive weighted norm");
    log_terms.push_back(log_monomial_norm_sq(m, k, r) - std::log(g));
  }
  double mx = -std::numeric_limits<double>::infinity();
  for (double t : log_terms) mx = std::max(mx, t);
  if (std::isinf(mx)) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double t : log_terms) acc += std::exp(t - mx);
  return (mx + std::log(acc)) / m;
}

}  // namespace dp7::cp1
