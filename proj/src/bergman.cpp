#include "dp7/bergman.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dp7/cp1.hpp"
#include "dp7/fdiff.hpp"
#include "dp7/parallel.hpp"

namespace dp7 {

std::vector<double> group_norm_integrals_weighted(
    int N, const std::function<double(double, double)>& phi_u0_radial,
    const QuadratureGrid& quad) {
  const auto groups = multidegree_groups(N);
  std::vector<double> out;
  out.reserve(groups.size());
  for (const auto& g : groups)
    out.push_back(
        multidegree_norm_integral_weighted(g.deg, N, phi_u0_radial, quad));
  return out;
}

std::vector<double> group_norm_integrals(int N, const QuadratureGrid& quad) {
  return group_norm_integrals_weighted(N, nullptr, quad);
}

double bergman_density(const OrthoBasis& basis, const ChartPoint& p) {
  const auto n = static_cast<Eigen::Index>(basis.tuples.size());
  if (basis.coeffs.cols() != n)
    throw std::invalid_argument("bergman_density: coefficient shape mismatch");
  Eigen::VectorXcd vals(n);
  for (Eigen::Index a = 0; a < n; ++a)
    vals(a) = section_value(basis.tuples[static_cast<std::size_t>(a)], p);
  double weight = std::exp(-basis.N * chart_potential(p));
  double acc = 0.0;
  for (Eigen::Index k = 0; k < basis.coeffs.rows(); ++k) {
    std::complex<double> v{0.0, 0.0};
    for (Eigen::Index a = 0; a < n; ++a) v += basis.coeffs(k, a) * vals(a);
    acc += std::norm(v) * weight;
  }
  return acc;
}

double bergman_density_closed(int N, const std::vector<DegreeGroup>& groups,
                              const std::vector<double>& gammas,
                              const ChartPoint& p) {
  if (groups.size() != gammas.size())
    throw std::invalid_argument("bergman_density_closed: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i)
    acc += multidegree_norm_sq_at(groups[i].deg, N, p) / gammas[i];
  return acc;
}

double bergman_density_integral(int N, const std::vector<DegreeGroup>& groups,
                                const std::vector<double>& gammas,
                                const QuadratureGrid& quad) {
  if (groups.size() != gammas.size())
    throw std::invalid_argument("bergman_density_integral: size mismatch");
  auto f = [&](double r1, double r2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < groups.size(); ++i)
      acc += norm_sq_u0_radial(groups[i].deg, N, r1, r2) / gammas[i];
    return 4.0 * acc * density_u0_radial(r1, r2) * r1 * r2;
  };
  return converged_radial_integral_2d(f, quad, "bergman_density_integral");
}

LeadingFit fit_leading(const std::vector<double>& levels,
                       const std::vector<double>& ratios) {
  if (levels.size() != ratios.size())
    throw std::invalid_argument("fit_leading: size mismatch");
  if (levels.size() < 2)
    throw std::invalid_argument("fit_leading: need at least two levels");
  // regress ratio on 1/m
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double x = 1.0 / levels[i];
    double y = ratios[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30)
    throw std::invalid_argument("fit_leading: degenerate level set");
  LeadingFit f;
  f.slope_est = (n * sxy - sx * sy) / denom;
  f.a0_est = (sy - f.slope_est * sx) / n;
  return f;
}

LeadingFit tyz_check_cp1(const std::vector<int>& levels, double r,
                         const QuadratureGrid& quad) {
  std::vector<double> xs, ys;
  for (int m : levels) {
    double acc = 0.0;
    for (int k = 0; k <= m; ++k)
      acc += cp1::monomial_norm_sq(m, k, r) / cp1::monomial_norm_quadrature(m, k, quad);
    xs.push_back(static_cast<double>(m));
    ys.push_back(acc / m);
  }
  return fit_leading(xs, ys);
}

DensityProfile tyz_check_surface(const std::vector<int>& levels,
                                 const std::vector<ChartPoint>& points,
                                 const QuadratureGrid& quad) {
  if (levels.size() < 2)
    throw std::invalid_argument("tyz_check_surface: need at least two levels");
  if (points.empty())
    throw std::invalid_argument("tyz_check_surface: empty sample set");
  DensityProfile prof;
  prof.levels = levels;
  prof.points = points;
  std::vector<double> xs, ys;
  for (int N : levels) {
    const auto groups = multidegree_groups(N);
    const auto gammas = group_norm_integrals(N, quad);
    for (const auto& p : points) {
      double d = bergman_density_closed(N, groups, gammas, p);
      double ratio = d / (static_cast<double>(N) * N);
      prof.ratios.push_back(ratio);
      xs.push_back(static_cast<double>(N));
      ys.push_back(ratio);
    }
  }
  prof.fit = fit_leading(xs, ys);
  return prof;
}

double log_section_approx_at(int N, const std::vector<DegreeGroup>& groups,
                             const std::vector<double>& weighted_gammas,
                             const ChartPoint& p) {
  if (groups.size() != weighted_gammas.size())
    throw std::invalid_argument("log_section_approx_at: size mismatch");
  // log-sum-exp over the class terms; norms evaluated in the unweighted
  // metric while the gammas carry the weighted orthonormalization
  double mx = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  logs.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    double nrm = multidegree_norm_sq_at(groups[i].deg, N, p);
    double lg = nrm > 0.0 ? std::log(nrm) - std::log(weighted_gammas[i])
                          : -std::numeric_limits<double>::infinity();
    logs.push_back(lg);
    mx = std::max(mx, lg);
  }
  if (std::isinf(mx)) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double lg : logs) acc += std::exp(lg - mx);
  return (mx + std::log(acc)) / N;
}

namespace {

void check_perturbed_positive(
    const std::function<double(double, double)>& phi_u0_radial,
    const std::vector<ChartPoint>& grid) {
  RealField2 psi = [&](std::complex<double> z1, std::complex<double> z2) {
    ChartPoint q;
    q.chart = Chart::U0;
    q.c1 = z1;
    q.c2 = z2;
    return chart_potential(q) + phi_u0_radial(std::abs(z1), std::abs(z2));
  };
  for (const auto& p : grid) {
    ChartPoint q = p.chart == Chart::U0 ? p : chart_transition(p, Chart::U0);
    auto h = fd_complex_hessian(psi, q.c1, q.c2, 1e-4);
    if (!h.positive())
      throw std::domain_error(
          "log_section_approx: perturbed potential not positive on the grid");
  }
}

}  // namespace

double log_section_sup_error(
    int N, const std::function<double(double, double)>& phi_u0_radial,
    const std::vector<ChartPoint>& grid, const QuadratureGrid& quad) {
  if (grid.empty())
    throw std::invalid_argument("log_section_sup_error: empty grid");
  check_perturbed_positive(phi_u0_radial, grid);
  const auto groups = multidegree_groups(N);
  const auto gammas = group_norm_integrals_weighted(N, phi_u0_radial, quad);
  double sup = 0.0;
  for (const auto& p : grid) {
    ChartPoint q = p.chart == Chart::U0 ? p : chart_transition(p, Chart::U0);
    double approx = log_section_approx_at(N, groups, gammas, q);
    double target = phi_u0_radial(std::abs(q.c1), std::abs(q.c2));
    sup = std::max(sup, std::abs(approx - target));
  }
  return sup;
}

double log_section_grid_min(
    int N, const std::function<double(double, double)>& phi_u0_radial,
    const std::vector<ChartPoint>& grid, const QuadratureGrid& quad) {
  if (grid.empty())
    throw std::invalid_argument("log_section_grid_min: empty grid");
  const auto groups = multidegree_groups(N);
  const auto gammas = group_norm_integrals_weighted(N, phi_u0_radial, quad);
  double mn = std::numeric_limits<double>::infinity();
  for (const auto& p : grid) {
    ChartPoint q = p.chart == Chart::U0 ? p : chart_transition(p, Chart::U0);
    mn = std::min(mn, log_section_approx_at(N, groups, gammas, q));
  }
  return mn;
}

Lemma31Result lemma31_bound(int n, const std::vector<ChartPoint>& grid) {
  if (n < 1) throw std::invalid_argument("lemma31_bound: n must be >= 1");
  if (grid.empty()) throw std::invalid_argument("lemma31_bound: empty grid");
  const auto groups = multidegree_groups(n);
  std::vector<double> sups(grid.size());
  auto eval = [&](std::size_t i) {
    const ChartPoint& p = grid[i];
    double acc = 0.0;
    for (const auto& g : groups)
      acc += g.count * multidegree_norm_sq_at(g.deg, n, p);
    return std::log(acc) / n;
  };
  Lemma31Result res;
  res.sup_found = block_max(
      grid.size(), [&](std::size_t i) { return eval(i); }, ExecMode::OpenMP);
  res.bound = std::log(static_cast<double>(expected_dimension(n))) / n;
  return res;
}

}  // namespace dp7
