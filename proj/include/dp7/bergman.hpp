#pragma once

#include <functional>
#include <vector>

#include "dp7/sections.hpp"

namespace dp7 {

// gamma(e) for every multidegree class at level N, aligned with
// multidegree_groups(N). The weighted variant multiplies the measure by
// exp(-N*phi) for a rotation-invariant phi given in U0 radii.
std::vector<double> group_norm_integrals(int N, const QuadratureGrid& quad);
std::vector<double> group_norm_integrals_weighted(
    int N, const std::function<double(double, double)>& phi_u0_radial,
    const QuadratureGrid& quad);

// Density sum of squared norms over an orthonormalized basis.
double bergman_density(const OrthoBasis& basis, const ChartPoint& p);

// Same density from the block closed form: one term per multidegree class.
double bergman_density_closed(int N, const std::vector<DegreeGroup>& groups,
                              const std::vector<double>& gammas,
                              const ChartPoint& p);

// Integral of the closed-form density over the surface; equals the number
// of orthonormal directions (one per class) up to quadrature error.
double bergman_density_integral(int N, const std::vector<DegreeGroup>& groups,
                                const std::vector<double>& gammas,
                                const QuadratureGrid& quad);

struct LeadingFit {
  double a0_est = 0.0;
  double slope_est = 0.0;
};

// Least squares fit density/m^n = a0 + slope/m over (level, ratio) pairs.
LeadingFit fit_leading(const std::vector<double>& levels,
                       const std::vector<double>& ratios);

// Large-power leading coefficient of the single-factor control model at
// radius r, fitted across the level ladder. Exact answer: density = m+1.
LeadingFit tyz_check_cp1(const std::vector<int>& levels, double r,
                         const QuadratureGrid& quad);

// Surface version: pooled fit of density/N^2 over the given sample points.
struct DensityProfile {
  std::vector<int> levels;
  std::vector<ChartPoint> points;
  // ratios[l*points.size()+p] = density(level l, point p) / N^2
  std::vector<double> ratios;
  LeadingFit fit;
};
DensityProfile tyz_check_surface(const std::vector<int>& levels,
                                 const std::vector<ChartPoint>& points,
                                 const QuadratureGrid& quad);
inline LeadingFit tyz_leading_check(const std::vector<int>& levels,
                                    const std::vector<ChartPoint>& points,
                                    const QuadratureGrid& quad) {
  return tyz_check_surface(levels, points, quad).fit;
}

// (1/N) log of the density built from sections orthonormalized against the
// exp(-N*phi)-weighted measure, evaluated in the unweighted metric. The
// gammas argument must come from group_norm_integrals_weighted with the
// same phi.
double log_section_approx_at(int N, const std::vector<DegreeGroup>& groups,
                             const std::vector<double>& weighted_gammas,
                             const ChartPoint& p);

// Sup over the grid of |approximant - phi|. Rejects phi whose perturbed
// potential fails the sampled positivity check.
double log_section_sup_error(
    int N, const std::function<double(double, double)>& phi_u0_radial,
    const std::vector<ChartPoint>& grid, const QuadratureGrid& quad);

// Grid minimum of the approximant itself (drift watch across level ladders).
double log_section_grid_min(
    int N, const std::function<double(double, double)>& phi_u0_radial,
    const std::vector<ChartPoint>& grid, const QuadratureGrid& quad);

struct Lemma31Result {
  double sup_found = 0.0;
  double bound = 0.0;
  double margin() const { return bound - sup_found; }
};

// Sup over the grid of (1/n) log sum over all level-n monomials of the
// squared section norm, against the dimension bound
// (1/n) log((n+1)^3(n+2)/2).
Lemma31Result lemma31_bound(int n, const std::vector<ChartPoint>& grid);

}  // namespace dp7
