#include "dp7/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "dp7/fdiff.hpp"

namespace dp7 {

std::string chart_name(Chart c) {
  switch (c) {
    case Chart::U0: return "U0";
    case Chart::U1: return "U1";
    case Chart::U2: return "U2";
  }
  throw std::invalid_argument("chart_name: bad chart");
}

namespace {

double sq(double x) { return x * x; }

double potential_u0(double s1, double s2) {
  // s1 = |z1|^2, s2 = |z2|^2
  return std::log1p(s1 + s2) + std::log1p(s1) + std::log1p(s2);
}

double potential_u2(double s0, double s1) {
  // s0 = |w0|^2, s1 = |w1|^2; singular locus s0 + s1 = 0 excluded
  double s = s0 + s1;
  if (s <= 0.0)
    throw std::domain_error("chart_potential: U1/U2 potential undefined at the origin");
  return std::log1p(s0 + s1) + std::log1p(s0) + std::log(s);
}

double density_u0(double s1, double s2) {
  double a = 1.0 + s1 + s2;
  double b = 1.0 + s1;
  double c = 1.0 + s2;
  return 1.0 / (a * a * a) + 1.0 / (a * a * b) + 1.0 / (a * a * c) +
         1.0 / (sq(b) * sq(c));
}

double density_u2(double s0, double s1) {
  double s = s0 + s1;
  if (s <= 0.0)
    throw std::domain_error("volume_density: U1/U2 density undefined at the origin");
  double a = 1.0 + s;
  double b = 1.0 + s0;
  return 1.0 / (a * a * a) + 1.0 / (a * a * s) + 1.0 / (a * a * b) +
         s0 / (sq(b) * sq(s));
}

}  // namespace

double chart_potential(const ChartPoint& p) {
  double s1 = std::norm(p.c1);
  double s2 = std::norm(p.c2);
  if (p.chart == Chart::U0) return potential_u0(s1, s2);
  return potential_u2(s1, s2);
}

double volume_density(const ChartPoint& p) {
  double s1 = std::norm(p.c1);
  double s2 = std::norm(p.c2);
  if (p.chart == Chart::U0) return density_u0(s1, s2);
  return density_u2(s1, s2);
}

double MetricModel::potential(const ChartPoint& p) const {
  ChartPoint q = p;
  q.chart = chart;
  return chart_potential(q);
}

double MetricModel::density(const ChartPoint& p) const {
  ChartPoint q = p;
  q.chart = chart;
  return volume_density(q);
}

MetricModel metric_for_chart(Chart c) { return MetricModel{c}; }

namespace {

using C = std::complex<double>;

void require_nonzero(const C& d, const char* what) {
  if (d == C{0.0, 0.0})
    throw std::domain_error(std::string("chart_transition: ") + what +
                            " vanishes, point outside target chart");
}

}  // namespace

ChartPoint chart_transition(const ChartPoint& p, Chart target) {
  if (p.chart == target) return p;
  ChartPoint out;
  out.chart = target;
  const C& a = p.c1;
  const C& b = p.c2;
  switch (p.chart) {
    case Chart::U0:
      if (target == Chart::U1) {
        require_nonzero(a, "z1");
        out.c1 = 1.0 / a;
        out.c2 = b / a;
      } else {
        require_nonzero(b, "z2");
        out.c1 = 1.0 / b;
        out.c2 = a / b;
      }
      return out;
    case Chart::U1:
      if (target == Chart::U0) {
        require_nonzero(a, "v0");
        out.c1 = 1.0 / a;
        out.c2 = b / a;
      } else {
        require_nonzero(b, "v1");
        out.c1 = a / b;
        out.c2 = 1.0 / b;
      }
      return out;
    case Chart::U2:
      if (target == Chart::U0) {
        require_nonzero(a, "w0");
        out.c1 = b / a;
        out.c2 = 1.0 / a;
      } else {
        require_nonzero(b, "w1");
        out.c1 = a / b;
        out.c2 = 1.0 / b;
      }
      return out;
  }
  throw std::invalid_argument("chart_transition: bad chart");
}

ChartPoint tau_point(const ChartPoint& p) {
  ChartPoint out = p;
  switch (p.chart) {
    case Chart::U0:
      out.c1 = p.c2;
      out.c2 = p.c1;
      return out;
    case Chart::U1:
      out.chart = Chart::U2;
      return out;
    case Chart::U2:
      out.chart = Chart::U1;
      return out;
  }
  throw std::invalid_argument("tau_point: bad chart");
}

double density_u0_radial(double r1, double r2) {
  return density_u0(r1 * r1, r2 * r2);
}

double density_u2_radial(double r0, double r1) {
  return density_u2(r0 * r0, r1 * r1);
}

ComplexHessian fd_complex_hessian(const RealField2& f, std::complex<double> z1,
                                  std::complex<double> z2, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_complex_hessian: step <= 0");
  using C = std::complex<double>;
  auto g = [&](double x1, double y1, double x2, double y2) {
    return f(z1 + C{x1, y1}, z2 + C{x2, y2});
  };
  const double h = step;
  const double h2 = h * h;
  double f0 = g(0, 0, 0, 0);
  auto dxx = [&](int axis) {
    double p, m;
    switch (axis) {
      case 0: p = g(h, 0, 0, 0); m = g(-h, 0, 0, 0); break;
      case 1: p = g(0, h, 0, 0); m = g(0, -h, 0, 0); break;
      case 2: p = g(0, 0, h, 0); m = g(0, 0, -h, 0); break;
      default: p = g(0, 0, 0, h); m = g(0, 0, 0, -h); break;
    }
    return (p - 2.0 * f0 + m) / h2;
  };
  // mixed second derivative between axes a and b, four-point stencil
  auto dab = [&](int a, int b) {
    double s[4] = {0, 0, 0, 0};
    double pp, pm, mp, mm;
    auto at = [&](double sa, double sb) {
      s[0] = s[1] = s[2] = s[3] = 0.0;
      s[a] = sa;
      s[b] = sb;
      return g(s[0], s[1], s[2], s[3]);
    };
    pp = at(h, h);
    pm = at(h, -h);
    mp = at(-h, h);
    mm = at(-h, -h);
    return (pp - pm - mp + mm) / (4.0 * h2);
  };
  ComplexHessian out;
  out.h11 = 0.25 * (dxx(0) + dxx(1));
  out.h22 = 0.25 * (dxx(2) + dxx(3));
  out.h12 = 0.25 * std::complex<double>(dab(0, 2) + dab(1, 3), dab(0, 3) - dab(1, 2));
  return out;
}

}  // namespace dp7
