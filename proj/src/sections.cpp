#include "dp7/sections.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dp7/parallel.hpp"

namespace dp7 {

long expected_dimension(int N) {
  if (N < 1) throw std::invalid_argument("expected_dimension: N must be >= 1");
  long n = N;
  return (n + 1) * (n + 1) * (n + 1) * (n + 2) / 2;
}

std::vector<ExponentTuple> enumerate_basis(int N) {
  if (N < 1) throw std::invalid_argument("enumerate_basis: N must be >= 1");
  std::vector<ExponentTuple> out;
  out.reserve(static_cast<std::size_t>(expected_dimension(N)));
  // Ascending loops produce lexicographic order in (i0,i1,i2,j0,j1,k0,k2)
  // because i2, j1, k2 are determined by the loop variables.
  for (int i0 = 0; i0 <= N; ++i0)
    for (int i1 = 0; i1 + i0 <= N; ++i1)
      for (int j0 = 0; j0 <= N; ++j0)
        for (int k0 = 0; k0 <= N; ++k0) {
          ExponentTuple t;
          t.N = N;
          t.i0 = i0;
          t.i1 = i1;
          t.i2 = N - i0 - i1;
          t.j0 = j0;
          t.j1 = N - j0;
          t.k0 = k0;
          t.k2 = N - k0;
          out.push_back(t);
        }
  return out;
}

MultiDegree multidegree(const ExponentTuple& t) {
  return MultiDegree{t.e0(), t.e1(), t.e2()};
}

std::vector<DegreeGroup> multidegree_groups(int N) {
  std::map<MultiDegree, int> counts;
  for (const auto& t : enumerate_basis(N)) ++counts[multidegree(t)];
  std::vector<DegreeGroup> out;
  out.reserve(counts.size());
  for (const auto& [deg, c] : counts) out.push_back(DegreeGroup{deg, c});
  return out;
}

ExponentTuple tau_swap(const ExponentTuple& t) {
  ExponentTuple s;
  s.N = t.N;
  s.i0 = t.i0;
  s.i1 = t.i2;
  s.i2 = t.i1;
  s.j0 = t.k0;
  s.j1 = t.k2;
  s.k0 = t.j0;
  s.k2 = t.j1;
  return s;
}

namespace {

std::complex<double> ipow(std::complex<double> z, int n) {
  std::complex<double> acc{1.0, 0.0};
  for (int i = 0; i < n; ++i) acc *= z;
  return acc;
}

// log of the level-N metric denominator in the given chart
double log_denominator(const ChartPoint& p) {
  double s1 = std::norm(p.c1);
  double s2 = std::norm(p.c2);
  if (p.chart == Chart::U0)
    return std::log1p(s1 + s2) + std::log1p(s1) + std::log1p(s2);
  double s = s1 + s2;
  if (s <= 0.0)
    throw std::domain_error("section norm: chart degenerates at the U1/U2 origin");
  return std::log1p(s) + std::log1p(s1) + std::log(s);
}

}  // namespace

std::complex<double> multidegree_value(const MultiDegree& e, const ChartPoint& p) {
  switch (p.chart) {
    case Chart::U0: return ipow(p.c1, e.e1) * ipow(p.c2, e.e2);
    case Chart::U1: return ipow(p.c1, e.e0) * ipow(p.c2, e.e2);
    case Chart::U2: return ipow(p.c1, e.e0) * ipow(p.c2, e.e1);
  }
  throw std::invalid_argument("multidegree_value: bad chart");
}

std::complex<double> section_value(const ExponentTuple& t, const ChartPoint& p) {
  return multidegree_value(multidegree(t), p);
}

double multidegree_norm_sq_at(const MultiDegree& e, int N, const ChartPoint& p) {
  // log space: moduli^(2e) overflows at large radii even when the norm is
  // bounded by 1
  int a = 0, b = 0;
  switch (p.chart) {
    case Chart::U0: a = e.e1; b = e.e2; break;
    case Chart::U1: a = e.e0; b = e.e2; break;
    case Chart::U2: a = e.e0; b = e.e1; break;
  }
  double m1 = std::abs(p.c1);
  double m2 = std::abs(p.c2);
  double lognum = 0.0;
  if (a > 0) {
    if (m1 == 0.0) return 0.0;
    lognum += 2.0 * a * std::log(m1);
  }
  if (b > 0) {
    if (m2 == 0.0) return 0.0;
    lognum += 2.0 * b * std::log(m2);
  }
  return std::exp(lognum - N * log_denominator(p));
}

double section_norm_sq(const MonomialSection& s, const ChartPoint& p) {
  std::complex<double> v = s.coeff * section_value(s.exps, p);
  double n2 = std::norm(v);
  if (n2 == 0.0) return 0.0;
  return n2 * std::exp(-s.exps.N * log_denominator(p));
}

double section_norm(const MonomialSection& s, const ChartPoint& p) {
  return std::sqrt(section_norm_sq(s, p));
}

double norm_sq_u0_radial(const MultiDegree& e, int N, double r1, double r2) {
  // computed in log space: r^(2e)/(ABC)^N overflows long before it matters
  double s1 = r1 * r1;
  double s2 = r2 * r2;
  double logden = std::log1p(s1 + s2) + std::log1p(s1) + std::log1p(s2);
  double lognum = 0.0;
  if (e.e1 > 0) {
    if (r1 == 0.0) return 0.0;
    lognum += 2.0 * e.e1 * std::log(r1);
  }
  if (e.e2 > 0) {
    if (r2 == 0.0) return 0.0;
    lognum += 2.0 * e.e2 * std::log(r2);
  }
  return std::exp(lognum - N * logden);
}

double multidegree_norm_integral_weighted(
    const MultiDegree& e, int N,
    const std::function<double(double, double)>& phi_u0_radial,
    const QuadratureGrid& quad) {
  auto f = [&](double r1, double r2) {
    double kern = norm_sq_u0_radial(e, N, r1, r2);
    if (phi_u0_radial) kern *= std::exp(-N * phi_u0_radial(r1, r2));
    return 4.0 * kern * density_u0_radial(r1, r2) * r1 * r2;
  };
  return converged_radial_integral_2d(f, quad, "multidegree_norm_integral");
}

double multidegree_norm_integral(const MultiDegree& e, int N,
                                 const QuadratureGrid& quad) {
  return multidegree_norm_integral_weighted(e, N, nullptr, quad);
}

std::complex<double> inner_product(const MonomialSection& s,
                                   const MonomialSection& t,
                                   const QuadratureGrid& quad) {
  if (s.exps.N != t.exps.N)
    throw std::invalid_argument("inner_product: mixed bundle powers");
  if (multidegree(s.exps) != multidegree(t.exps)) return {0.0, 0.0};
  double gamma = multidegree_norm_integral(multidegree(s.exps), s.exps.N, quad);
  return s.coeff * std::conj(t.coeff) * gamma;
}

std::complex<double> inner_product_generic(const MonomialSection& s,
                                           const MonomialSection& t,
                                           const QuadratureGrid& quad,
                                           int n_phase) {
  if (s.exps.N != t.exps.N)
    throw std::invalid_argument("inner_product_generic: mixed bundle powers");
  if (n_phase < 1)
    throw std::invalid_argument("inner_product_generic: n_phase must be >= 1");
  const int N = s.exps.N;
  std::vector<std::complex<double>> ph(static_cast<std::size_t>(n_phase));
  for (int k = 0; k < n_phase; ++k) {
    double a = 2.0 * M_PI * k / n_phase;
    ph[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
  }
  // single-pass cross-check at the grid's base resolution; the factorized
  // path is the production route
  RadialGrid rg = make_radial_grid(quad.panels);
  const std::size_t nr = rg.r.size();
  auto eval = [&](std::size_t idx) {
    std::size_t a = idx / nr;
    std::size_t b = idx % nr;
    double r1 = rg.r[a];
    double r2 = rg.r[b];
    double meas = 4.0 * density_u0_radial(r1, r2) * r1 * r2 * rg.w[a] * rg.w[b];
    std::complex<double> phase_avg{0.0, 0.0};
    for (int p1 = 0; p1 < n_phase; ++p1)
      for (int p2 = 0; p2 < n_phase; ++p2) {
        ChartPoint pt;
        pt.c1 = r1 * ph[static_cast<std::size_t>(p1)];
        pt.c2 = r2 * ph[static_cast<std::size_t>(p2)];
        std::complex<double> vs = s.coeff * section_value(s.exps, pt);
        std::complex<double> vt = t.coeff * section_value(t.exps, pt);
        phase_avg += vs * std::conj(vt);
      }
    phase_avg /= static_cast<double>(n_phase) * static_cast<double>(n_phase);
    double weight = std::exp(-N * (std::log1p(r1 * r1 + r2 * r2) +
                                   std::log1p(r1 * r1) + std::log1p(r2 * r2)));
    return phase_avg * weight * meas;
  };
  double re = block_sum(
      nr * nr, [&](std::size_t i) { return eval(i).real(); }, quad.mode);
  double im = block_sum(
      nr * nr, [&](std::size_t i) { return eval(i).imag(); }, quad.mode);
  return {re, im};
}

GramMatrix gram_matrix(int N, const QuadratureGrid& quad) {
  GramMatrix g;
  g.N = N;
  g.tuples = enumerate_basis(N);
  const auto groups = multidegree_groups(N);
  std::map<MultiDegree, double> gamma;
  for (const auto& grp : groups)
    gamma[grp.deg] = multidegree_norm_integral(grp.deg, N, quad);
  const auto n = static_cast<Eigen::Index>(g.tuples.size());
  g.values = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    MultiDegree da = multidegree(g.tuples[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = a; b < n; ++b) {
      MultiDegree db = multidegree(g.tuples[static_cast<std::size_t>(b)]);
      if (da == db) {
        double v = gamma[da];
        g.values(a, b) = v;
        g.values(b, a) = v;
      }
    }
  }
  return g;
}

Eigen::MatrixXd orthonormal_combinations(const Eigen::MatrixXd& gram,
                                         double drop_tol) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("orthonormal_combinations: matrix not square");
  const Eigen::Index n = gram.rows();
  double max_diag = gram.diagonal().maxCoeff();
  double max_off = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (a != b) max_off = std::max(max_off, std::abs(gram(a, b)));
  if (max_off <= 1e-14 * std::max(1.0, max_diag)) {
    // diagonal case: rescale in place, keeping the input order
    std::vector<Eigen::Index> keep;
    for (Eigen::Index a = 0; a < n; ++a)
      if (gram(a, a) > drop_tol * max_diag) keep.push_back(a);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(keep.size()), n);
    for (std::size_t k = 0; k < keep.size(); ++k)
      c(static_cast<Eigen::Index>(k), keep[k]) =
          1.0 / std::sqrt(gram(keep[k], keep[k]));
    return c;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("orthonormal_combinations: eigensolver failed");
  const auto& lam = es.eigenvalues();
  double lam_max = lam.maxCoeff();
  if (lam_max <= 0.0)
    throw std::runtime_error("orthonormal_combinations: matrix not positive");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < n; ++k)
    if (lam(k) > drop_tol * lam_max) keep.push_back(k);
  Eigen::MatrixXd c(static_cast<Eigen::Index>(keep.size()), n);
  for (std::size_t k = 0; k < keep.size(); ++k)
    c.row(static_cast<Eigen::Index>(k)) =
        es.eigenvectors().col(keep[k]).transpose() / std::sqrt(lam(keep[k]));
  return c;
}

OrthoBasis orthonormalize(const GramMatrix& g, double drop_tol) {
  OrthoBasis b;
  b.N = g.N;
  b.tuples = g.tuples;
  b.coeffs = orthonormal_combinations(g.values, drop_tol);
  return b;
}

}  // namespace dp7
