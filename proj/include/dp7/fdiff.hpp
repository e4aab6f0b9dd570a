#pragma once

#include <complex>
#include <functional>

namespace dp7 {

// Complex Hessian (d^2 f / dz_a dz_bar_b) of a real-valued function of two
// complex variables, by second-order central differences. Used to cross
// check closed-form metric determinants and to test positivity of perturbed
// potentials on sample grids.
struct ComplexHessian {
  double h11 = 0.0;
  double h22 = 0.0;
  std::complex<double> h12{0.0, 0.0};

  double det() const { return h11 * h22 - std::norm(h12); }
  bool positive() const { return h11 > 0.0 && det() > 0.0; }
};

using RealField2 = std::function<double(std::complex<double>, std::complex<double>)>;

ComplexHessian fd_complex_hessian(const RealField2& f, std::complex<double> z1,
                                  std::complex<double> z2, double step = 1e-4);

}  // namespace dp7
