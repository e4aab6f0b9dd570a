#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dp7/geometry.hpp"
#include "dp7/parallel.hpp"
#include "dp7/rational.hpp"

namespace dp7 {

// Regularized test family phi_eps = log(X + eps) - log(1 + eps) where
// X = |Z0|^6 / ((|Z0|^2+|Z1|^2+|Z2|^2)(|Z0|^2+|Z1|^2)(|Z0|^2+|Z2|^2)).
// sup over the surface is 0 (attained where X = 1); the value on the
// exceptional locus (X = 0) is log(eps/(1+eps)).
struct PhiEps {
  double eps = 0.0;
  double value(const ChartPoint& p) const;
};

// log X; minus infinity on the exceptional locus.
double log_x_ratio(const ChartPoint& p);

double phi_eps_grid_max(double eps, const std::vector<ChartPoint>& grid);

enum class Verdict { Convergent, Divergent, Inconclusive };
std::string verdict_name(Verdict v);

struct ScanParams {
  int k_start = 12;       // first dyadic depth
  int k_stride = 6;       // depth step between rungs
  int rungs = 19;         // depths 12, 18, ..., 120
  int fixed_depth = 60;   // dyadic depth on nonsingular axes (plus closing cell)
  int cell_rule = 8;      // Gauss points per axis per cell
  double growth_factor = 1.5;
  double flat_tol = 1e-3;
  double blowup = 1e200;  // estimate above this is declared Divergent outright
  ExecMode mode = ExecMode::OpenMP;
};

struct LadderRung {
  int depth = 0;
  double estimate = 0.0;
};

struct AlphaScanResult {
  double alpha = 0.0;
  std::vector<LadderRung> ladder;
  Verdict verdict = Verdict::Inconclusive;
};

// A positive integrand on the unit square in the two chart radii, with
// flags marking which axes carry a singularity at zero. Singular axes are
// covered by dyadic cells [2^-(k+1), 2^-k] down to the rung depth (the
// remaining sliver is what the ladder refines into); nonsingular axes use a
// fixed dyadic decomposition plus a closing cell at zero.
struct ScanTarget {
  std::function<double(double, double)> f;
  bool sing_x = false;
  bool sing_y = false;
};

double dyadic_patch_integral(const ScanTarget& t, int depth,
                             const ScanParams& sp);

// Ladder of nested estimates summed over the targets. Divergence exits
// early (ratios only grow once the singular part dominates); convergence is
// judged on the full ladder.
AlphaScanResult alpha_scan_targets(const std::vector<ScanTarget>& targets,
                                   double alpha, const ScanParams& sp);
inline AlphaScanResult alpha_scan(const std::vector<ScanTarget>& targets,
                                  double alpha, const ScanParams& sp) {
  return alpha_scan_targets(targets, alpha, sp);
}

// The three unit-polydisc patches (max-|coordinate| regions of the three
// charts) covering the surface up to measure zero, with integrand
// exp(-alpha * phi) against the volume form. eps = 0 gives the singular
// limit family.
std::vector<ScanTarget> phi_family_targets(double alpha, double eps);
AlphaScanResult alpha_scan_phi0(double alpha, const ScanParams& sp);

// Separable model |z1|^(-2a) |z2|^(-2b) on the unit polydisc, scanned at
// exponent scale alpha (integrand radii^(1-2*a*alpha) etc).
std::vector<ScanTarget> model_targets(double a, double b, double alpha);
AlphaScanResult alpha_scan_model(double a, double b, double alpha,
                                 const ScanParams& sp);

struct BracketResult {
  double lo = 0.0;
  double hi = 0.0;
  int scan_count = 0;
  bool width_ok = false;
  std::vector<AlphaScanResult> history;
  double width() const { return hi - lo; }
};

// Bisection over alpha. Callers guarantee the true threshold lies in
// [lo, hi] (hi may equal it). Definite verdicts move the endpoints; an
// inconclusive midpoint switches to independent edge searches for the
// largest-convergent and smallest-divergent probes.
BracketResult bisect_threshold(
    const std::function<AlphaScanResult(double)>& scan_at, double lo,
    double hi, double width_target = 0.10, double edge_tol = 0.005);

// Integrability threshold of the separable monomial model: min(1/a, 1/b).
Rational lct_oracle(const Rational& a, const Rational& b);

// Regularized volume integral of exp(-alpha*phi_eps) over the surface, by
// fixed-depth dyadic quadrature on the three patches.
double phi_eps_volume(double alpha, double eps, const ScanParams& sp);
std::vector<std::vector<double>> phi_eps_table(
    const std::vector<double>& alphas, const std::vector<double>& eps_ladder,
    const ScanParams& sp);
inline std::vector<std::vector<double>> phi_eps_divergence(
    const std::vector<double>& alphas, const std::vector<double>& eps_ladder,
    const ScanParams& sp) {
  return phi_eps_table(alphas, eps_ladder, sp);
}

// Exponent case analysis with exact rationals. p (and q = 1-p) in [0, 1];
// the p = 0 row carries the closure limit of the first bound.
Rational case1_bound(const Rational& p);
Rational case2_bound(const Rational& q);
Rational case_analysis(const Rational& m_over_N, const Rational& p);

struct CaseRow {
  Rational p;
  Rational case1;
  Rational case2;
};

struct CaseTable {
  std::vector<CaseRow> rows;
  Rational sup_case1{0};
  Rational sup_case2{0};
  Rational overall{0};  // min of the two suprema
};

CaseTable build_case_table(int denominator);

// Symmetric witness (1/N) log of the squared norm of
// Z0^m Z1^((3N-m)/2) Z2^((3N-m)/2) under the level-N metric.
double lower_bound_witness(int N, int m, const ChartPoint& p);

}  // namespace dp7
