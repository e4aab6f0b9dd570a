#include "dp7/threshold.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dp7/quadrature.hpp"
#include "dp7/sections.hpp"

namespace dp7 {

double log_x_ratio(const ChartPoint& p) {
  double x = multidegree_norm_sq_at(MultiDegree{3, 0, 0}, 1, p);
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(x);
}

double PhiEps::value(const ChartPoint& p) const {
  if (eps < 0.0) throw std::invalid_argument("PhiEps: negative eps");
  double x = multidegree_norm_sq_at(MultiDegree{3, 0, 0}, 1, p);
  if (eps == 0.0) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(x);
  }
  return std::log(x + eps) - std::log1p(eps);
}

double phi_eps_grid_max(double eps, const std::vector<ChartPoint>& grid) {
  if (grid.empty()) throw std::invalid_argument("phi_eps_grid_max: empty grid");
  PhiEps phi{eps};
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto& p : grid) mx = std::max(mx, phi.value(p));
  return mx;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Convergent: return "Convergent";
    case Verdict::Divergent: return "Divergent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  throw std::invalid_argument("verdict_name: bad verdict");
}

namespace {

using AxisCells = std::vector<std::pair<double, double>>;

AxisCells dyadic_cells(int from_k, int to_k) {
  AxisCells c;
  for (int k = from_k; k < to_k; ++k)
    c.emplace_back(std::ldexp(1.0, -(k + 1)), std::ldexp(1.0, -k));
  return c;
}

AxisCells axis_cells(bool singular, int depth, const ScanParams& sp) {
  if (singular) return dyadic_cells(0, depth);
  AxisCells c = dyadic_cells(0, sp.fixed_depth);
  c.emplace_back(0.0, std::ldexp(1.0, -sp.fixed_depth));
  return c;
}

double sum_cells(const std::function<double(double, double)>& f,
                 const AxisCells& xs, const AxisCells& ys,
                 const ScanParams& sp) {
  if (xs.empty() || ys.empty()) return 0.0;
  const GaussRule& g = gauss_legendre(sp.cell_rule);
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  auto cell = [&](std::size_t idx) {
    const auto& cx = xs[idx / ny];
    const auto& cy = ys[idx % ny];
    double mx = 0.5 * (cx.first + cx.second), hx = 0.5 * (cx.second - cx.first);
    double my = 0.5 * (cy.first + cy.second), hy = 0.5 * (cy.second - cy.first);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double x = mx + hx * g.x[i];
      for (std::size_t j = 0; j < g.x.size(); ++j)
        acc += g.w[i] * g.w[j] * f(x, my + hy * g.x[j]);
    }
    return acc * hx * hy;
  };
  return block_sum(nx * ny, cell, sp.mode);
}

}  // namespace

double dyadic_patch_integral(const ScanTarget& t, int depth,
                             const ScanParams& sp) {
  return sum_cells(t.f, axis_cells(t.sing_x, depth, sp),
                   axis_cells(t.sing_y, depth, sp), sp);
}

AlphaScanResult alpha_scan_targets(const std::vector<ScanTarget>& targets,
                                   double alpha, const ScanParams& sp) {
  if (sp.rungs < 4)
    throw std::invalid_argument("alpha_scan_targets: need at least 4 rungs");
  AlphaScanResult res;
  res.alpha = alpha;

  double fixed_part = 0.0;
  std::vector<const ScanTarget*> varying;
  for (const auto& t : targets) {
    if (!t.sing_x && !t.sing_y)
      fixed_part += dyadic_patch_integral(t, 0, sp);
    else
      varying.push_back(&t);
  }

  // running totals per varying target, extended incrementally so nested
  // estimates are nondecreasing by construction
  std::vector<double> totals(varying.size(), 0.0);
  int prev_k = 0;
  for (int i = 0; i < sp.rungs; ++i) {
    int k = sp.k_start + i * sp.k_stride;
    for (std::size_t v = 0; v < varying.size(); ++v) {
      const ScanTarget& t = *varying[v];
      double inc = 0.0;
      if (t.sing_x)
        inc += sum_cells(t.f, dyadic_cells(prev_k, k),
                         axis_cells(t.sing_y, k, sp), sp);
      if (t.sing_y)
        inc += sum_cells(t.f,
                         t.sing_x ? dyadic_cells(0, prev_k)
                                  : axis_cells(false, 0, sp),
                         dyadic_cells(prev_k, k), sp);
      totals[v] += inc;
    }
    prev_k = k;
    double est = fixed_part;
    for (double v : totals) est += v;
    res.ladder.push_back(LadderRung{k, est});

    if (!std::isfinite(est) || est > sp.blowup) {
      res.verdict = Verdict::Divergent;
      return res;
    }
    const auto& lad = res.ladder;
    if (i >= 3) {
      bool grew = true;
      for (int back = 0; back < 3; ++back) {
        double num = lad[lad.size() - 1 - back].estimate;
        double den = lad[lad.size() - 2 - back].estimate;
        if (!(den > 0.0) || num / den < sp.growth_factor) {
          grew = false;
          break;
        }
      }
      if (grew) {
        res.verdict = Verdict::Divergent;
        return res;
      }
    }
  }

  const auto& lad = res.ladder;
  bool flat = lad.size() >= 4;
  for (int back = 0; flat && back < 3; ++back) {
    double cur = lad[lad.size() - 1 - back].estimate;
    double prev = lad[lad.size() - 2 - back].estimate;
    if (!(cur > 0.0) || (cur - prev) / cur >= sp.flat_tol) flat = false;
  }
  res.verdict = flat ? Verdict::Convergent : Verdict::Inconclusive;
  return res;
}

namespace {

// integrand weight exp(-alpha * phi_eps) as a function of log X
double family_weight(double logx, double alpha, double eps) {
  if (eps == 0.0) return std::exp(-alpha * logx);
  return std::exp(-alpha * (std::log(std::exp(logx) + eps) - std::log1p(eps)));
}

}  // namespace

std::vector<ScanTarget> phi_family_targets(double alpha, double eps) {
  if (eps < 0.0) throw std::invalid_argument("phi_family_targets: negative eps");
  bool singular = (eps == 0.0) && (alpha > 0.0);
  ScanTarget u0;
  u0.f = [alpha, eps](double r1, double r2) {
    double s1 = r1 * r1, s2 = r2 * r2;
    double logx = -(std::log1p(s1 + s2) + std::log1p(s1) + std::log1p(s2));
    return family_weight(logx, alpha, eps) * 4.0 * density_u0_radial(r1, r2) *
           r1 * r2;
  };
  u0.sing_x = false;
  u0.sing_y = false;
  auto blowup_patch = [alpha, eps](double r0, double r1) {
    double s0 = r0 * r0, s1 = r1 * r1;
    double s = s0 + s1;
    double logx = 6.0 * std::log(r0) -
                  (std::log1p(s) + std::log(s) + std::log1p(s0));
    return family_weight(logx, alpha, eps) * 4.0 * density_u2_radial(r0, r1) *
           r0 * r1;
  };
  ScanTarget u1;
  u1.f = blowup_patch;
  u1.sing_x = singular;
  u1.sing_y = false;
  ScanTarget u2;
  u2.f = blowup_patch;
  u2.sing_x = singular;
  u2.sing_y = false;
  return {u0, u1, u2};
}

AlphaScanResult alpha_scan_phi0(double alpha, const ScanParams& sp) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha_scan_phi0: alpha <= 0");
  return alpha_scan_targets(phi_family_targets(alpha, 0.0), alpha, sp);
}

std::vector<ScanTarget> model_targets(double a, double b, double alpha) {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("model_targets: exponents must be positive");
  ScanTarget t;
  double px = 1.0 - 2.0 * a * alpha;
  double py = 1.0 - 2.0 * b * alpha;
  t.f = [px, py](double x, double y) {
    return 4.0 * std::exp(px * std::log(x) + py * std::log(y));
  };
  t.sing_x = true;
  t.sing_y = true;
  return {t};
}

AlphaScanResult alpha_scan_model(double a, double b, double alpha,
                                 const ScanParams& sp) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha_scan_model: alpha <= 0");
  return alpha_scan_targets(model_targets(a, b, alpha), alpha, sp);
}

BracketResult bisect_threshold(
    const std::function<AlphaScanResult(double)>& scan_at, double lo,
    double hi, double width_target, double edge_tol) {
  if (!(lo < hi)) throw std::invalid_argument("bisect_threshold: lo >= hi");
  if (width_target <= 0.0 || edge_tol <= 0.0)
    throw std::invalid_argument("bisect_threshold: bad tolerances");
  BracketResult br;
  br.lo = lo;
  br.hi = hi;
  auto probe = [&](double a) {
    AlphaScanResult r = scan_at(a);
    ++br.scan_count;
    br.history.push_back(std::move(r));
    return br.history.back().verdict;
  };
  while (br.width() > width_target) {
    double mid = 0.5 * (br.lo + br.hi);
    Verdict v = probe(mid);
    if (v == Verdict::Convergent) {
      br.lo = mid;
    } else if (v == Verdict::Divergent) {
      br.hi = mid;
    } else {
      // midpoint sits in the undecidable band: hunt both edges directly
      double cl = br.lo, cu = mid;
      while (cu - cl > edge_tol) {
        double cm = 0.5 * (cl + cu);
        if (probe(cm) == Verdict::Convergent)
          cl = cm;
        else
          cu = cm;
      }
      br.lo = cl;
      double dl = mid, du = br.hi;
      while (du - dl > edge_tol) {
        double dm = 0.5 * (dl + du);
        if (probe(dm) == Verdict::Divergent)
          du = dm;
        else
          dl = dm;
      }
      br.hi = du;
      break;
    }
  }
  br.width_ok = br.width() <= width_target;
  return br;
}

Rational lct_oracle(const Rational& a, const Rational& b) {
  if (a.num <= 0 || b.num <= 0)
    throw std::invalid_argument("lct_oracle: exponents must be positive");
  return rational_min(Rational(1) / a, Rational(1) / b);
}

double phi_eps_volume(double alpha, double eps, const ScanParams& sp) {
  if (eps < 0.0) throw std::invalid_argument("phi_eps_volume: negative eps");
  auto targets = phi_family_targets(alpha, eps);
  double total = 0.0;
  for (const auto& t : targets)
    total += dyadic_patch_integral(t, sp.fixed_depth, sp);
  return total;
}

std::vector<std::vector<double>> phi_eps_table(
    const std::vector<double>& alphas, const std::vector<double>& eps_ladder,
    const ScanParams& sp) {
  for (std::size_t i = 1; i < eps_ladder.size(); ++i)
    if (!(eps_ladder[i] < eps_ladder[i - 1]))
      throw std::invalid_argument("phi_eps_table: ladder must strictly decrease");
  std::vector<std::vector<double>> table;
  table.reserve(alphas.size());
  for (double a : alphas) {
    std::vector<double> row;
    row.reserve(eps_ladder.size());
    for (double e : eps_ladder) row.push_back(phi_eps_volume(a, e, sp));
    table.push_back(std::move(row));
  }
  return table;
}

namespace {

void check_unit_interval(const Rational& p, const char* what) {
  if (p < Rational(0) || p > Rational(1))
    throw std::invalid_argument(std::string(what) + ": parameter outside [0, 1]");
}

}  // namespace

Rational case1_bound(const Rational& p) {
  check_unit_interval(p, "case1_bound");
  Rational first = (Rational(1) - p) / (Rational(3) - p);
  return rational_min(first, rational_min(Rational(2, 3), Rational(1)));
}

Rational case2_bound(const Rational& q) {
  check_unit_interval(q, "case2_bound");
  Rational third = (Rational(1) - q) / (Rational(3, 2) - q);
  return rational_min(Rational(1), rational_min(Rational(2, 3), third));
}

Rational case_analysis(const Rational& m_over_N, const Rational& p) {
  if (m_over_N <= Rational(0) || m_over_N > Rational(3))
    throw std::invalid_argument("case_analysis: m/N outside (0, 3]");
  if (m_over_N >= Rational(1)) return case1_bound(p);
  return case2_bound(Rational(1) - p);
}

CaseTable build_case_table(int denominator) {
  if (denominator < 2)
    throw std::invalid_argument("build_case_table: denominator must be >= 2");
  CaseTable t;
  t.rows.reserve(static_cast<std::size_t>(denominator));
  for (int k = 0; k < denominator; ++k) {
    Rational p(k, denominator);
    CaseRow row;
    row.p = p;
    row.case1 = case1_bound(p);
    row.case2 = case2_bound(Rational(1) - p);
    t.rows.push_back(row);
  }
  t.sup_case1 = t.rows.front().case1;
  t.sup_case2 = t.rows.front().case2;
  for (const auto& r : t.rows) {
    t.sup_case1 = rational_max(t.sup_case1, r.case1);
    t.sup_case2 = rational_max(t.sup_case2, r.case2);
  }
  t.overall = rational_min(t.sup_case1, t.sup_case2);
  return t;
}

double lower_bound_witness(int N, int m, const ChartPoint& p) {
  if (N < 1) throw std::invalid_argument("lower_bound_witness: N must be >= 1");
  if (m < 0 || m > 3 * N)
    throw std::invalid_argument("lower_bound_witness: m outside [0, 3N]");
  if ((3 * N - m) % 2 != 0)
    throw std::invalid_argument(
        "lower_bound_witness: 3N - m must be even for the symmetric witness");
  int half = (3 * N - m) / 2;
  double v = multidegree_norm_sq_at(MultiDegree{m, half, half}, N, p);
  if (v <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(v) / N;
}

}  // namespace dp7
