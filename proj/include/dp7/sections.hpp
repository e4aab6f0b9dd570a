#pragma once

#include <compare>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dp7/geometry.hpp"
#include "dp7/quadrature.hpp"

namespace dp7 {

// Monomial Z0^i0 Z1^i1 Z2^i2 X0^j0 X1^j1 Y0^k0 Y2^k2 at bundle power N,
// with i0+i1+i2 = j0+j1 = k0+k2 = N.
struct ExponentTuple {
  int N = 1;
  int i0 = 0, i1 = 0, i2 = 0;
  int j0 = 0, j1 = 0;
  int k0 = 0, k2 = 0;

  // Effective exponents of (Z0, Z1, Z2) after eliminating X, Y on the surface.
  int e0() const { return i0 + j0 + k0; }
  int e1() const { return i1 + j1; }
  int e2() const { return i2 + k2; }

  bool valid() const {
    return N >= 1 && i0 >= 0 && i1 >= 0 && i2 >= 0 && j0 >= 0 && j1 >= 0 &&
           k0 >= 0 && k2 >= 0 && i0 + i1 + i2 == N && j0 + j1 == N &&
           k0 + k2 == N;
  }

  friend auto operator<=>(const ExponentTuple&, const ExponentTuple&) = default;
};

struct MonomialSection {
  ExponentTuple exps;
  std::complex<double> coeff{1.0, 0.0};
};

long expected_dimension(int N);
std::vector<ExponentTuple> enumerate_basis(int N);

struct MultiDegree {
  int e0 = 0, e1 = 0, e2 = 0;
  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;
};

MultiDegree multidegree(const ExponentTuple& t);

struct DegreeGroup {
  MultiDegree deg;
  int count = 0;
};

// Distinct (e0,e1,e2) classes at level N with multiplicities, sorted.
std::vector<DegreeGroup> multidegree_groups(int N);

// Involution swapping (i1,j-block) with (i2,k-block); pairs with tau_point.
ExponentTuple tau_swap(const ExponentTuple& t);

// Value of the monomial in the local trivialization of the given chart.
// Monomials of equal multidegree restrict to the same function on the
// surface, so the value depends on the tuple only through (e0,e1,e2).
std::complex<double> multidegree_value(const MultiDegree& e, const ChartPoint& p);
std::complex<double> section_value(const ExponentTuple& t, const ChartPoint& p);

// Unit-coefficient pointwise norm of the multidegree class at level N.
double multidegree_norm_sq_at(const MultiDegree& e, int N, const ChartPoint& p);

// Pointwise Hermitian norm of the section at level N.
double section_norm_sq(const MonomialSection& s, const ChartPoint& p);
double section_norm(const MonomialSection& s, const ChartPoint& p);

// Radial closed form of the unit-coefficient norm on U0, for quadrature.
double norm_sq_u0_radial(const MultiDegree& e, int N, double r1, double r2);

// gamma(e) = integral over the surface of the unit-coefficient norm of any
// monomial with multidegree e. The optional weight multiplies the integrand
// by exp(-N*phi(r1,r2)) for a rotation-invariant potential given in U0 radii.
double multidegree_norm_integral(const MultiDegree& e, int N,
                                 const QuadratureGrid& quad);
double multidegree_norm_integral_weighted(
    const MultiDegree& e, int N,
    const std::function<double(double, double)>& phi_u0_radial,
    const QuadratureGrid& quad);

// Inner product under the level-N metric and the surface volume form.
// Phases are factored out exactly: off-multidegree pairs give exactly zero,
// matching pairs reduce to a radial integral.
std::complex<double> inner_product(const MonomialSection& s,
                                   const MonomialSection& t,
                                   const QuadratureGrid& quad);

// Cross-check path: full (r1,theta1,r2,theta2) quadrature with a phase
// trapezoid rule of n_phase points per angle (exact once n_phase exceeds the
// largest exponent difference).
std::complex<double> inner_product_generic(const MonomialSection& s,
                                           const MonomialSection& t,
                                           const QuadratureGrid& quad,
                                           int n_phase);

struct GramMatrix {
  int N = 1;
  std::vector<ExponentTuple> tuples;
  Eigen::MatrixXd values;  // real symmetric; phases integrate out exactly
};

GramMatrix gram_matrix(int N, const QuadratureGrid& quad);

struct OrthoBasis {
  int N = 1;
  std::vector<ExponentTuple> tuples;
  // Row k holds the coefficients of the k-th orthonormal combination.
  Eigen::MatrixXd coeffs;
};

// Orthonormal combinations from a PSD Gram matrix. Numerically diagonal
// input keeps the original order (rows scaled by 1/sqrt(diagonal)); general
// input goes through a symmetric eigendecomposition. Directions with
// eigenvalue <= drop_tol * max eigenvalue are discarded.
Eigen::MatrixXd orthonormal_combinations(const Eigen::MatrixXd& gram,
                                         double drop_tol = 1e-8);
OrthoBasis orthonormalize(const GramMatrix& g, double drop_tol = 1e-8);

}  // namespace dp7
