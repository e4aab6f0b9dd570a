#pragma once

#include <complex>
#include <string>

namespace dp7 {

// The surface is the plane blown up at the two torus-fixed points [0,1,0]
// and [0,0,1], carried as three affine charts:
//   U0: (z1, z2) = (Z1/Z0, Z2/Z0)
//   U1: (v0, v1) = (Z0/Z1, Z2/Z1)
//   U2: (w0, w1) = (Z0/Z2, Z1/Z2)
// U1 is U2 composed with the swap Z1 <-> Z2, so both carry the same closed
// forms. Homogeneous coordinates are never stored.
enum class Chart { U0, U1, U2 };

std::string chart_name(Chart c);

struct ChartPoint {
  Chart chart = Chart::U0;
  std::complex<double> c1{0.0, 0.0};
  std::complex<double> c2{0.0, 0.0};
};

// Kahler potential of the reference metric in the given chart.
//   U0: log(1+|z1|^2+|z2|^2) + log(1+|z1|^2) + log(1+|z2|^2)
//   U1/U2: log(1+|a|^2+|b|^2) + log(1+|a|^2) + log(|a|^2+|b|^2)
// The U1/U2 potential requires (a, b) != (0, 0).
double chart_potential(const ChartPoint& p);

// Determinant of the complex Hessian of the chart potential (the volume
// density of omega^2/2 against Lebesgue measure up to the factor 4).
// Closed forms; throws std::domain_error at the U1/U2 singular point (0,0).
double volume_density(const ChartPoint& p);

// One of the two explicit metric models, selected by chart.
struct MetricModel {
  Chart chart = Chart::U0;
  double potential(const ChartPoint& p) const;
  double density(const ChartPoint& p) const;
};

MetricModel metric_for_chart(Chart c);

// Transition map between charts on their overlap. Throws std::domain_error
// when the target chart's denominator coordinate vanishes at p.
ChartPoint chart_transition(const ChartPoint& p, Chart target);

// Involution swapping the two blown-up points (Z1 <-> Z2 together with the
// two exceptional CP1 factors). On U0 it swaps the coordinates; it exchanges
// U1 and U2 keeping the coordinate values.
ChartPoint tau_point(const ChartPoint& p);

// Radial closed forms used by the quadrature kernels (moduli only; both
// potentials and densities are phase invariant).
double density_u0_radial(double r1, double r2);
double density_u2_radial(double r0, double r1);

}  // namespace dp7
