// Acceptance gate: eleven checks with pinned tolerances and runtime budgets.
// Run with no arguments for the full list, or with a single criterion number.
// Exit code is the number of failed criteria.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dp7/bergman.hpp"
#include "dp7/cli.hpp"
#include "dp7/cp1.hpp"
#include "dp7/io.hpp"
#include "dp7/rational.hpp"
#include "dp7/sampling.hpp"
#include "dp7/sections.hpp"
#include "dp7/sphere.hpp"
#include "dp7/threshold.hpp"

using namespace dp7;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260825;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) { return format_double(x); }

QuadratureGrid accept_quad() {
  QuadratureGrid q;
  q.panels = 128;
  q.rel_tol = 1e-7;
  q.max_doublings = 5;
  return q;
}

Outcome criterion_dimension_formula() {
  for (int n = 1; n <= 10; ++n) {
    const long expected = static_cast<long>(n + 1) * (n + 1) * (n + 1) * (n + 2) / 2;
    const long got = static_cast<long>(enumerate_basis(n).size());
    if (got != expected || got != expected_dimension(n))
      return {false, "N=" + std::to_string(n) + " got " + std::to_string(got) +
                         " expected " + std::to_string(expected)};
  }
  return {true, "N=1..10 exact"};
}

Outcome criterion_section_sup_bound() {
  double worst = 1e300;
  for (int n = 1; n <= 6; ++n) {
    std::vector<ChartPoint> grid;
    grid.reserve(30000);
    for (Chart c : {Chart::U0, Chart::U1, Chart::U2}) {
      auto pts = random_chart_points(
          c, 10000, kSeed + 7919ULL * n + 104729ULL * static_cast<int>(c));
      grid.insert(grid.end(), pts.begin(), pts.end());
    }
    Lemma31Result r = lemma31_bound(n, grid);
    worst = std::min(worst, r.margin());
    if (!(r.sup_found <= r.bound))
      return {false, "n=" + std::to_string(n) + " sup " + fmt(r.sup_found) +
                         " exceeds bound " + fmt(r.bound)};
  }
  return {true, "n=1..6, 3x10^4 points each, min margin " + fmt(worst)};
}

Outcome criterion_threshold_bracket() {
  ScanParams sp;
  AlphaScanResult low = alpha_scan_phi0(0.30, sp);
  AlphaScanResult high = alpha_scan_phi0(0.37, sp);
  if (low.verdict != Verdict::Convergent)
    return {false, "alpha=0.30 verdict " + verdict_name(low.verdict)};
  if (high.verdict != Verdict::Divergent)
    return {false, "alpha=0.37 verdict " + verdict_name(high.verdict)};
  BracketResult br = bisect_threshold(
      [&](double a) { return alpha_scan_phi0(a, sp); }, 0.05, 1.0, 0.10, 0.005);
  const double third = 1.0 / 3.0;
  bool ok = br.width_ok && br.width() <= 0.10 && br.lo <= third && third <= br.hi;
  return {ok, "bracket=[" + fmt(br.lo) + ", " + fmt(br.hi) + "] width " +
                  fmt(br.width()) + ", scans " + std::to_string(br.scan_count)};
}

Outcome criterion_degenerate_family() {
  ScanParams sp;
  const std::vector<double> alphas{0.20, 0.30, 0.40, 0.50};
  const std::vector<double> ladder{1e-1, 1e-2, 1e-3, 1e-4};
  auto table = phi_eps_table(alphas, ladder, sp);
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto& row = table[i];
    for (std::size_t j = 1; j < row.size(); ++j)
      if (!(row[j] > row[j - 1])) pass = false;
    const double last_ratio = row[row.size() - 1] / row[row.size() - 2];
    const double rel_change =
        std::abs(row[row.size() - 1] - row[row.size() - 2]) / row[row.size() - 1];
    if (!detail.empty()) detail += "; ";
    if (alphas[i] >= 0.40 - 1e-12) {
      if (!(last_ratio >= 1.5)) pass = false;
      detail += "a=" + fmt(alphas[i]) + " ratio=" + fmt(last_ratio) +
                " (need >=1.5)";
    } else {
      if (!(rel_change <= 1e-2)) pass = false;
      detail += "a=" + fmt(alphas[i]) + " rel=" + fmt(rel_change) +
                " (need <=0.01)";
    }
  }
  return {pass, detail};
}

Outcome criterion_case_table() {
  for (int den : {2, 3, 4, 6, 12}) {
    CaseTable t = build_case_table(den);
    if (!(t.sup_case1 == Rational(1, 3)) || !(t.overall == Rational(1, 3)))
      return {false, "denominator " + std::to_string(den) + " overall " +
                         t.overall.str()};
  }
  return {true, "overall sup = 1/3 exactly for all ladder refinements"};
}

Outcome criterion_density_leading_order() {
  QuadratureGrid quad = accept_quad();
  LeadingFit fit = tyz_check_cp1({4, 8, 16, 32}, 0.7, quad);
  if (!(fit.a0_est >= 0.95 && fit.a0_est <= 1.05))
    return {false, "control-case a0 " + fmt(fit.a0_est) + " outside [0.95, 1.05]"};

  auto points = random_polydisc_points(Chart::U0, 12, kSeed + 5);
  DensityProfile prof = tyz_check_surface({2, 4}, points, quad);
  double lo = 1e300, hi = 0.0;
  for (double r : prof.ratios) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  bool ok = lo > 0.5 && hi < 2.0;
  return {ok, "control a0 " + fmt(fit.a0_est) + "; surface density/N^2 in [" +
                  fmt(lo) + ", " + fmt(hi) + "] (need within factor 2)"};
}

Outcome criterion_gram_structure() {
  QuadratureGrid quad = accept_quad();
  double worst_off = 0.0, worst_round = 0.0;
  for (int n = 1; n <= 3; ++n) {
    GramMatrix g = gram_matrix(n, quad);
    for (long i = 0; i < g.values.rows(); ++i)
      for (long j = 0; j < g.values.cols(); ++j)
        if (!(multidegree(g.tuples[i]) == multidegree(g.tuples[j])))
          worst_off = std::max(worst_off, std::abs(g.values(i, j)));
    OrthoBasis ob = orthonormalize(g);
    Eigen::MatrixXd round = ob.coeffs * g.values * ob.coeffs.transpose();
    long k = round.rows();
    worst_round = std::max(
        worst_round,
        (round - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff());
  }
  bool ok = worst_off < 1e-10 && worst_round < 1e-8;
  return {ok, "N<=3 max off-block " + fmt(worst_off) + ", round-trip dev " +
                  fmt(worst_round)};
}

Outcome criterion_sphere_energy_inequality() {
  SphereMesh mesh = make_sphere_mesh();
  SpherePotential zero =
      make_potential(mesh, Eigen::VectorXd::Zero(mesh.nodes()));
  MtResult r0 = mt_sphere_check(zero);
  if (!(std::abs(r0.lhs - r0.rhs) <= 1e-8))
    return {false, "equality gap at zero " + fmt(std::abs(r0.lhs - r0.rhs))};
  int violations = 0;
  double min_slack = 1e300;
  for (auto& p : random_battery(mesh, 50, 8, kSeed)) {
    MtResult r = mt_sphere_check(p);
    if (!(r.lhs <= r.rhs * (1.0 + 1e-6))) ++violations;
    min_slack = std::min(min_slack, r.rhs - r.lhs);
  }
  return {violations == 0, "50 potentials, violations " +
                               std::to_string(violations) + ", min slack " +
                               fmt(min_slack)};
}

Outcome criterion_chained_estimate() {
  SphereMesh mesh = make_sphere_mesh();
  GreenKernel gk = make_green_kernel(mesh);
  HoelderSplit split = HoelderSplit::standard();
  split.validate();
  double min_slack = 1e300;
  int bad_links = 0, bad_sandwich = 0;
  for (auto& p : random_battery(mesh, 50, 8, kSeed)) {
    ChainReport r = hoelder_chain_check(p, split, gk);
    for (const auto& link : r.links) {
      min_slack = std::min(min_slack, link.rhs - link.lhs);
      if (!(link.rhs - link.lhs >= -1e-6)) ++bad_links;
    }
    double J = compute_J(p);
    double I = compute_I(p);
    if (!(J <= I + 1e-9 && I <= 2.0 * J + 1e-9)) ++bad_sandwich;
  }
  bool ok = bad_links == 0 && bad_sandwich == 0;
  return {ok, "50 potentials x 9 links, min slack " + fmt(min_slack) +
                  ", sandwich violations " + std::to_string(bad_sandwich)};
}

Outcome criterion_curvature_identity() {
  SphereMesh mesh = make_sphere_mesh();
  RicciCheck exact = ricci_identity_check(mesh, 1.0, {});
  if (!(exact.residual_sup < 1e-14))
    return {false, "t=1 flat residual " + fmt(exact.residual_sup)};
  double worst = 0.0;
  for (double t : {0.5, 0.9, 1.0}) {
    RicciCheck r = ricci_identity_check(mesh, t, {0.0, 0.25});
    worst = std::max(worst, r.residual_sup);
    if (!(r.residual_sup < 1e-4))
      return {false, "t=" + fmt(t) + " residual " + fmt(r.residual_sup)};
  }
  return {true, "t in {0.5, 0.9, 1.0} max residual " + fmt(worst) +
                    ", flat case exact (" + fmt(exact.residual_sup) + ")"};
}

Outcome criterion_determinism() {
  fs::path root = fs::temp_directory_path() /
                  ("dp7-accept-" + std::to_string(::getpid()));
  fs::create_directories(root);
  const std::vector<std::pair<std::string, std::map<std::string, std::string>>>
      commands{
          {"dims", {}},
          {"gram", {{"N", "2"}}},
          {"lemma31", {{"n-max", "3"}, {"points", "2000"}}},
          {"alpha-scan", {{"alpha", "0.3"}}},
          {"phi-eps", {{"alpha", "0.3,0.5"}, {"eps-ladder", "0.1,0.01,0.001"}}},
          {"case-table", {}},
          {"mt-battery", {{"count", "12"}}},
          {"hoelder", {{"count", "12"}}},
          {"bergman", {{"levels", "1,2"}, {"points", "6"}}},
      };
  int mismatches = 0;
  std::vector<std::string> first_paths;
  for (OutputFormat fmt_kind : {OutputFormat::StructuredText, OutputFormat::Csv}) {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::string blob[2];
      for (int rep = 0; rep < 2; ++rep) {
        RunConfig cfg;
        cfg.command = commands[i].first;
        cfg.parameters = commands[i].second;
        cfg.format = fmt_kind;
        cfg.seed = kSeed;
        cfg.output_path =
            (root / (commands[i].first + "-" + std::to_string(i) + "-" +
                     format_name(fmt_kind) + "-" + std::to_string(rep)))
                .string();
        std::ostringstream out, err;
        int rc = run_command(cfg, out, err);
        if (rc != kExitOk) {
          fs::remove_all(root);
          return {false, commands[i].first + " exited " + std::to_string(rc)};
        }
        blob[rep] = read_file(cfg.output_path);
        if (rep == 0 && fmt_kind == OutputFormat::StructuredText)
          first_paths.push_back(cfg.output_path);
      }
      if (blob[0] != blob[1]) ++mismatches;
    }
  }

  // The summary tool must accept its own artifacts deterministically too.
  std::string joined;
  for (const auto& p : first_paths) joined += (joined.empty() ? "" : ":") + p;
  std::string rep_blob[2];
  for (int rep = 0; rep < 2; ++rep) {
    RunConfig cfg;
    cfg.command = "report";
    cfg.parameters = {{"files", joined}};
    cfg.seed = kSeed;
    cfg.output_path = (root / ("report-" + std::to_string(rep))).string();
    std::ostringstream out, err;
    if (run_command(cfg, out, err) != kExitOk) {
      fs::remove_all(root);
      return {false, "report exited nonzero"};
    }
    rep_blob[rep] = read_file(cfg.output_path);
  }
  if (rep_blob[0] != rep_blob[1]) ++mismatches;
  fs::remove_all(root);
  return {mismatches == 0,
          "9 commands x 2 formats + report, mismatching pairs " +
              std::to_string(mismatches)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> cs{
      {1, "section dimension formula", 1.0, criterion_dimension_formula},
      {2, "global section sup bound", 30.0, criterion_section_sup_bound},
      {3, "integrability threshold bracket", 600.0, criterion_threshold_bracket},
      {4, "degenerate family integrals", 600.0, criterion_degenerate_family},
      {5, "combinatorial threshold table", 1.0, criterion_case_table},
      {6, "density leading order", 300.0, criterion_density_leading_order},
      {7, "gram block structure", 300.0, criterion_gram_structure},
      {8, "sphere energy inequality", 60.0, criterion_sphere_energy_inequality},
      {9, "chained exponent estimate", 60.0, criterion_chained_estimate},
      {10, "curvature identity residual", 60.0, criterion_curvature_identity},
      {11, "deterministic artifacts", 600.0, criterion_determinism},
  };
  return cs;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1..11]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " [over budget " + format_double(c.budget_seconds) + "s]";
    }
    std::printf("[%s] criterion %2d %-32s %s (%.1fs)\n",
                o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
