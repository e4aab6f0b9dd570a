#pragma once

#include <functional>

#include "dp7/quadrature.hpp"

namespace dp7::cp1 {

// Single-factor control model: the line bundle O(m) on the projective line
// with the Fubini-Study metric. Monomial norms have exact Beta closed forms,
// so every density computation downstream has an independent oracle here.
// Measure convention: integral of f over the line is
//   int_0^inf 2 f(r) r/(1+r^2)^2 dr   (total volume 1).

double volume_integral(const std::function<double(double)>& f,
                       const QuadratureGrid& quad);

// |z^k|^2 at radius r under the m-th power metric: r^(2k)/(1+r^2)^m.
double monomial_norm_sq(int m, int k, double r);

// gamma_k = k!(m-k)!/(m+1)!
double exact_monomial_norm(int m, int k);

// Same value by radial quadrature.
double monomial_norm_quadrature(int m, int k, const QuadratureGrid& quad);

// Weighted norm against exp(-m*phi(r)) for a rotation-invariant potential.
double weighted_monomial_norm(int m, int k,
                              const std::function<double(double)>& phi,
                              const QuadratureGrid& quad);

// Bergman density sum_k |z^k|^2/gamma_k from exact norms (identically m+1).
double density(int m, double r);

// Density with quadrature norms, for oracle comparison.
double density_quadrature(int m, double r, const QuadratureGrid& quad);

// (1/m) log sum_k |z^k|^2_h / gamma_k(phi), sections orthonormalized against
// the exp(-m*phi)-weighted measure but evaluated in the unweighted metric.
// Approximates phi as m grows.
double log_section_approx(int m, double r,
                          const std::function<double(double)>& phi,
                          const QuadratureGrid& quad);

}  // namespace dp7::cp1
