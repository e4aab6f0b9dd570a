#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dp7/parallel.hpp"

namespace dp7 {

// Thrown when a refinement ladder fails to settle. Carries the last two
// estimates so callers can report how far apart they were.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double prev, double last)
      : std::runtime_error(what), previous_estimate(prev), last_estimate(last) {}
  double previous_estimate;
  double last_estimate;
};

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int n);

// Nodes and weights for integrals of f over r in [0, inf), compactified by
// r = tan(theta), theta in [0, pi/2), with `panels` composite panels and a
// fixed 4-point rule per panel. Weights absorb the sec^2 Jacobian only; any
// polar r factor belongs to the integrand.
struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w;
  int panels = 0;
};

RadialGrid make_radial_grid(int panels);

// Quadrature configuration for the section inner products. `panels` is the
// per-axis panel count of the coarsest level; levels double panels until the
// estimate moves by less than rel_tol, up to max_doublings.
struct QuadratureGrid {
  int panels = 256;
  double rel_tol = 1e-6;
  int max_doublings = 4;
  ExecMode mode = ExecMode::OpenMP;
};

// Integral of f(r) over [0, inf) with the tan substitution, refined by panel
// doubling until |change| < rel_tol * |estimate|. Throws AccuracyError (with
// the label in the message) if the ladder never settles.
double converged_radial_integral_1d(const std::function<double(double)>& f,
                                    const QuadratureGrid& grid,
                                    const std::string& label = "radial_1d");

// Same for a 2D radial integrand over [0, inf)^2 on a tensor grid.
double converged_radial_integral_2d(const std::function<double(double, double)>& f,
                                    const QuadratureGrid& grid,
                                    const std::string& label = "radial_2d");

// Single-level tensor evaluation (no refinement), used by cross-checks.
double radial_integral_2d_once(const std::function<double(double, double)>& f,
                               int panels, ExecMode mode);

}  // namespace dp7
