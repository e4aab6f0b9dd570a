#include "dp7/cli.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dp7/bergman.hpp"
#include "dp7/sampling.hpp"
#include "dp7/sections.hpp"
#include "dp7/sphere.hpp"
#include "dp7/threshold.hpp"
#include "dp7/version.hpp"

namespace dp7 {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

class Params {
 public:
  Params(const RunConfig& cfg, std::set<std::string> allowed) : map_(cfg.parameters) {
    for (const auto& [k, v] : map_)
      if (allowed.find(k) == allowed.end())
        throw UsageError("unknown parameter for this command: " + k);
  }

  bool has(const std::string& key) const { return map_.find(key) != map_.end(); }

  std::string str(const std::string& key, const std::string& fallback) const {
    const auto it = map_.find(key);
    return it == map_.end() ? fallback : it->second;
  }

  int integer(const std::string& key, int fallback) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    return to_int(key, it->second);
  }

  double real(const std::string& key, double fallback) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    return to_double(key, it->second);
  }

  std::vector<int> int_list(const std::string& key, const std::string& fallback) const {
    std::vector<int> out;
    for (const std::string& tok : split_list(str(key, fallback), ','))
      out.push_back(to_int(key, tok));
    return out;
  }

  std::vector<double> real_list(const std::string& key, const std::string& fallback) const {
    std::vector<double> out;
    for (const std::string& tok : split_list(str(key, fallback), ','))
      out.push_back(to_double(key, tok));
    return out;
  }

 private:
  static int to_int(const std::string& key, const std::string& value) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw UsageError("parameter " + key + " expects an integer, got: " + value);
    }
  }

  static double to_double(const std::string& key, const std::string& value) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw UsageError("parameter " + key + " expects a number, got: " + value);
    }
  }

  const std::map<std::string, std::string>& map_;
};

void emit(Document& doc, const RunConfig& cfg) {
  doc.config = cfg;
  const std::string rendered = render_document(doc);
  if (!cfg.output_path.empty()) write_atomic(cfg.output_path, rendered);
}

std::string tuple_label(const ExponentTuple& t) {
  std::ostringstream s;
  s << '(' << t.i0 << ',' << t.i1 << ',' << t.i2 << ")(" << t.j0 << ',' << t.j1
    << ")(" << t.k0 << ',' << t.k2 << ')';
  return s.str();
}

ScanParams scan_params_from(const Params& ps) {
  ScanParams sp;
  sp.rungs = ps.integer("rungs", sp.rungs);
  sp.k_start = ps.integer("k-start", sp.k_start);
  sp.k_stride = ps.integer("k-stride", sp.k_stride);
  sp.fixed_depth = ps.integer("fixed-depth", sp.fixed_depth);
  sp.cell_rule = ps.integer("cell-rule", sp.cell_rule);
  if (sp.rungs < 4 || sp.k_start < 1 || sp.k_stride < 1 || sp.fixed_depth < 4 ||
      sp.cell_rule < 2)
    throw UsageError("scan ladder parameters out of range");
  return sp;
}

int cmd_dims(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"N"});
  std::vector<int> levels;
  if (ps.has("N")) {
    levels.push_back(ps.integer("N", 1));
  } else {
    for (int n = 1; n <= 10; ++n) levels.push_back(n);
  }
  for (int n : levels)
    if (n < 1 || n > 60) throw UsageError("dims: N must lie in [1, 60]");

  Document doc;
  Table t;
  t.name = "dimensions";
  t.columns = {"N", "expected", "enumerated"};
  bool ok = true;
  for (int n : levels) {
    const long expected = expected_dimension(n);
    const long counted = static_cast<long>(enumerate_basis(n).size());
    ok = ok && expected == counted;
    t.rows.push_back({std::to_string(n), std::to_string(expected),
                      std::to_string(counted)});
    if (levels.size() == 1)
      out << counted << '\n';
    else
      out << "N=" << n << " dim=" << counted << '\n';
  }
  doc.add_scalar("status", ok ? "pass" : "violation");
  doc.tables.push_back(std::move(t));
  emit(doc, cfg);
  if (!ok) err << "dims: enumeration disagrees with the closed form\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_gram(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"N", "panels", "drop-tol"});
  const int N = ps.integer("N", 1);
  if (N < 1 || N > 6) throw UsageError("gram: N must lie in [1, 6]");
  QuadratureGrid quad;
  quad.panels = ps.integer("panels", quad.panels);
  const double drop_tol = ps.real("drop-tol", 1e-8);

  const GramMatrix g = gram_matrix(N, quad);
  const OrthoBasis basis = orthonormalize(g, drop_tol);
  const int dim = static_cast<int>(g.tuples.size());

  std::vector<MultiDegree> degs(g.tuples.size());
  for (std::size_t i = 0; i < g.tuples.size(); ++i) degs[i] = multidegree(g.tuples[i]);

  double max_offblock = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (!(degs[i] == degs[j]))
        max_offblock = std::max(max_offblock, std::abs(g.values(i, j)));

  Document doc;
  Table diag;
  diag.name = "diagonal";
  diag.columns = {"index", "label", "e0", "e1", "e2", "gamma"};
  for (int i = 0; i < dim; ++i)
    diag.rows.push_back({std::to_string(i), tuple_label(g.tuples[i]),
                         std::to_string(degs[i].e0), std::to_string(degs[i].e1),
                         std::to_string(degs[i].e2), format_double(g.values(i, i))});
  doc.tables.push_back(std::move(diag));

  if (cfg.format == OutputFormat::StructuredText) {
    Table blocks;
    blocks.name = "blocks";
    blocks.columns = {"row", "col", "row_label", "col_label", "value"};
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        if (degs[i] == degs[j])
          blocks.rows.push_back({std::to_string(i), std::to_string(j),
                                 tuple_label(g.tuples[i]), tuple_label(g.tuples[j]),
                                 format_double(g.values(i, j))});
    doc.tables.push_back(std::move(blocks));
  }

  const bool ok = max_offblock < 1e-10;
  doc.add_scalar("status", ok ? "pass" : "violation");
  doc.add_scalar("N", std::to_string(N));
  doc.add_scalar("dim", std::to_string(dim));
  doc.add_scalar("groups", std::to_string(multidegree_groups(N).size()));
  doc.add_scalar("ortho_directions", std::to_string(basis.coeffs.rows()));
  doc.add_scalar("max_offblock", max_offblock);
  emit(doc, cfg);

  out << "dim=" << dim << " groups=" << multidegree_groups(N).size()
      << " ortho=" << basis.coeffs.rows() << " max_offblock=" << format_double(max_offblock)
      << '\n';
  if (!ok) err << "gram: off-block entry above 1e-10\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_bergman(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Params ps(cfg, {"levels", "points", "panels"});
  const std::vector<int> levels = ps.int_list("levels", "2,4");
  const int n_points = ps.integer("points", 40);
  if (n_points < 1) throw UsageError("bergman: points must be positive");
  for (int n : levels)
    if (n < 1 || n > 8) throw UsageError("bergman: levels must lie in [1, 8]");
  QuadratureGrid quad;
  quad.panels = ps.integer("panels", quad.panels);

  const std::vector<ChartPoint> pts =
      random_polydisc_points(Chart::U0, n_points, cfg.seed);
  const DensityProfile prof = tyz_check_surface(levels, pts, quad);

  Document doc;
  Table t;
  t.name = "density";
  t.columns = {"N", "point-id", "density", "density/N^n"};
  double ratio_min = prof.ratios.empty() ? 0.0 : prof.ratios[0];
  double ratio_max = ratio_min;
  for (std::size_t li = 0; li < prof.levels.size(); ++li) {
    const int n = prof.levels[li];
    for (std::size_t pi = 0; pi < prof.points.size(); ++pi) {
      const double ratio = prof.ratios[li * prof.points.size() + pi];
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
      t.rows.push_back({std::to_string(n), std::to_string(pi),
                        format_double(ratio * n * n), format_double(ratio)});
    }
  }
  doc.tables.push_back(std::move(t));
  doc.add_scalar("status", "info");
  doc.add_scalar("a0_est", prof.fit.a0_est);
  doc.add_scalar("slope_est", prof.fit.slope_est);
  doc.add_scalar("ratio_min", ratio_min);
  doc.add_scalar("ratio_max", ratio_max);
  emit(doc, cfg);

  out << "a0=" << format_double(prof.fit.a0_est)
      << " ratio_range=[" << format_double(ratio_min) << ", "
      << format_double(ratio_max) << "]\n";
  return kExitOk;
}

int cmd_lemma31(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"n-max", "points"});
  const int n_max = ps.integer("n-max", 6);
  const int points = ps.integer("points", 10000);
  if (n_max < 1 || n_max > 8) throw UsageError("lemma31: n-max must lie in [1, 8]");
  if (points < 1) throw UsageError("lemma31: points must be positive");

  Document doc;
  Table t;
  t.name = "bounds";
  t.columns = {"n", "sup_found", "bound", "margin"};
  bool ok = true;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<ChartPoint> grid;
    grid.reserve(3 * static_cast<std::size_t>(points));
    const Chart charts[3] = {Chart::U0, Chart::U1, Chart::U2};
    for (int ci = 0; ci < 3; ++ci) {
      const std::uint64_t seed = cfg.seed + 7919ull * n + 104729ull * ci;
      const auto pts = random_chart_points(charts[ci], points, seed);
      grid.insert(grid.end(), pts.begin(), pts.end());
    }
    const Lemma31Result r = lemma31_bound(n, grid);
    ok = ok && r.margin() >= 0.0;
    t.rows.push_back({std::to_string(n), format_double(r.sup_found),
                      format_double(r.bound), format_double(r.margin())});
    out << "n=" << n << " sup=" << format_double(r.sup_found)
        << " bound=" << format_double(r.bound) << '\n';
  }
  doc.add_scalar("status", ok ? "pass" : "violation");
  doc.tables.push_back(std::move(t));
  emit(doc, cfg);
  if (!ok) err << "lemma31: sampled sup exceeds the dimension bound\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_alpha_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"alpha", "phi", "a", "b", "bisect", "lo", "hi", "width",
                  "edge-tol", "rungs", "k-start", "k-stride", "fixed-depth",
                  "cell-rule"});
  const ScanParams sp = scan_params_from(ps);
  const std::string family = ps.str("phi", "phi0");
  const double model_a = ps.real("a", 1.0);
  const double model_b = ps.real("b", 1.0);
  if (family != "phi0" && family != "model")
    throw UsageError("alpha-scan: phi must be phi0 or model");

  const auto scan_at = [&](double alpha) {
    return family == "model" ? alpha_scan_model(model_a, model_b, alpha, sp)
                             : alpha_scan_phi0(alpha, sp);
  };

  Document doc;
  if (ps.integer("bisect", 0) != 0) {
    const double lo = ps.real("lo", 0.02);
    const double hi = ps.real("hi", 2.0);
    const double width = ps.real("width", 0.10);
    const double edge_tol = ps.real("edge-tol", 0.005);
    const BracketResult br = bisect_threshold(scan_at, lo, hi, width, edge_tol);

    Table t;
    t.name = "bracket_history";
    t.columns = {"alpha", "verdict", "rungs", "last_estimate"};
    for (const AlphaScanResult& r : br.history) {
      const double last = r.ladder.empty() ? 0.0 : r.ladder.back().estimate;
      t.rows.push_back({format_double(r.alpha), verdict_name(r.verdict),
                        std::to_string(r.ladder.size()), format_double(last)});
    }
    doc.tables.push_back(std::move(t));
    doc.add_scalar("status", br.width_ok ? "pass" : "inconclusive");
    doc.add_scalar("lo", br.lo);
    doc.add_scalar("hi", br.hi);
    doc.add_scalar("width", br.width());
    doc.add_scalar("scan_count", std::to_string(br.scan_count));
    emit(doc, cfg);

    out << "bracket=[" << format_double(br.lo) << ", " << format_double(br.hi)
        << "] width=" << format_double(br.width()) << " scans=" << br.scan_count
        << '\n';
    if (!br.width_ok) {
      err << "alpha-scan: bracket wider than requested\n";
      return kExitAccuracy;
    }
    return kExitOk;
  }

  if (!ps.has("alpha")) throw UsageError("alpha-scan: alpha is required");
  const double alpha = ps.real("alpha", 0.0);
  if (!(alpha > 0.0)) throw UsageError("alpha-scan: alpha must be positive");

  const AlphaScanResult res = scan_at(alpha);
  Table t;
  t.name = "ladder";
  t.columns = {"alpha", "depth", "estimate", "verdict"};
  for (const LadderRung& rung : res.ladder)
    t.rows.push_back({format_double(alpha), std::to_string(rung.depth),
                      format_double(rung.estimate), verdict_name(res.verdict)});
  doc.tables.push_back(std::move(t));
  doc.add_scalar("status",
                 res.verdict == Verdict::Inconclusive ? "inconclusive" : "pass");
  doc.add_scalar("verdict", verdict_name(res.verdict));
  emit(doc, cfg);

  out << "verdict: " << verdict_name(res.verdict) << '\n';
  if (res.verdict == Verdict::Inconclusive) {
    err << "alpha-scan: ladder inconclusive at alpha=" << format_double(alpha)
        << '\n';
    for (const LadderRung& rung : res.ladder)
      err << "  depth=" << rung.depth << " estimate=" << format_double(rung.estimate)
          << '\n';
    return kExitAccuracy;
  }
  return kExitOk;
}

int cmd_phi_eps(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Params ps(cfg, {"alpha", "eps-ladder", "fixed-depth", "cell-rule", "rungs",
                  "k-start", "k-stride"});
  const ScanParams sp = scan_params_from(ps);
  const std::vector<double> alphas = ps.real_list("alpha", "0.2,0.3,0.4,0.5");
  const std::vector<double> ladder = ps.real_list("eps-ladder", "0.1,0.01,0.001,0.0001");

  const auto table = phi_eps_table(alphas, ladder, sp);

  Document doc;
  Table t;
  t.name = "integrals";
  t.columns = {"alpha", "eps", "integral", "ratio_to_prev", "rel_change"};
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t ei = 0; ei < ladder.size(); ++ei) {
      const double cur = table[ai][ei];
      const double prev = ei ? table[ai][ei - 1] : 0.0;
      const double ratio = ei ? cur / prev : 0.0;
      const double rel = ei ? std::abs(cur - prev) / std::abs(cur) : 0.0;
      t.rows.push_back({format_double(alphas[ai]), format_double(ladder[ei]),
                        format_double(cur), ei ? format_double(ratio) : "",
                        ei ? format_double(rel) : ""});
    }
    const std::size_t last = ladder.size() - 1;
    out << "alpha=" << format_double(alphas[ai])
        << " last_integral=" << format_double(table[ai][last]);
    if (last > 0)
      out << " last_ratio=" << format_double(table[ai][last] / table[ai][last - 1]);
    out << '\n';
  }
  doc.tables.push_back(std::move(t));
  doc.add_scalar("status", "info");
  emit(doc, cfg);
  return kExitOk;
}

int cmd_case_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"denominator"});
  const int den = ps.integer("denominator", 6);
  if (den < 2 || den > 1000) throw UsageError("case-table: denominator must lie in [2, 1000]");

  const CaseTable ct = build_case_table(den);

  Document doc;
  Table t;
  t.name = "cases";
  t.columns = {"p", "case1_bound", "case2_bound"};
  for (const CaseRow& row : ct.rows)
    t.rows.push_back({row.p.str(), row.case1.str(), row.case2.str()});
  doc.tables.push_back(std::move(t));

  const bool ok = ct.overall == Rational(1, 3);
  doc.add_scalar("status", ok ? "pass" : "violation");
  doc.add_scalar("sup_case1", ct.sup_case1.str());
  doc.add_scalar("sup_case2", ct.sup_case2.str());
  doc.add_scalar("overall_sup", ct.overall.str());
  doc.add_scalar("overall_sup_decimal", ct.overall.value());
  emit(doc, cfg);

  out << "overall sup = " << ct.overall.str() << '\n';
  if (!ok) err << "case-table: overall supremum is not 1/3\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_mt_battery(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"count", "band", "l-max", "n-theta", "n-phi"});
  const int count = ps.integer("count", 50);
  const int band = ps.integer("band", 8);
  const int l_max = ps.integer("l-max", 24);
  const int n_theta = ps.integer("n-theta", 32);
  const int n_phi = ps.integer("n-phi", 64);
  if (count < 1 || count > 10000) throw UsageError("mt-battery: count out of range");

  const SphereMesh mesh = make_sphere_mesh(l_max, n_theta, n_phi);
  const std::vector<SpherePotential> battery =
      random_battery(mesh, count, band, cfg.seed);

  Document doc;
  Table t;
  t.name = "battery";
  t.columns = {"potential-id", "F", "J", "I", "mean", "lambda1_norm",
               "mt_lhs", "mt_rhs"};
  int violations = 0;
  for (int i = 0; i < count; ++i) {
    const FunctionalValues fv = compute_F(battery[i]);
    const MtResult mt = mt_sphere_check(battery[i]);
    if (mt.lhs > mt.rhs * (1.0 + 1e-6)) ++violations;
    t.rows.push_back({std::to_string(i), format_double(fv.F), format_double(fv.J),
                      format_double(fv.I), format_double(fv.mean),
                      format_double(fv.lambda1_norm), format_double(mt.lhs),
                      format_double(mt.rhs)});
  }
  doc.tables.push_back(std::move(t));
  doc.add_scalar("status", violations == 0 ? "pass" : "violation");
  doc.add_scalar("violations", std::to_string(violations));
  emit(doc, cfg);

  out << "count=" << count << " violations=" << violations << '\n';
  if (violations) err << "mt-battery: energy inequality violated\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_hoelder(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"count", "band", "eps", "eps-prime", "eps-second", "l-max",
                  "n-theta", "n-phi"});
  const int count = ps.integer("count", 50);
  const int band = ps.integer("band", 8);
  if (count < 1 || count > 10000) throw UsageError("hoelder: count out of range");
  HoelderSplit split;
  try {
    split = HoelderSplit::standard(ps.real("eps", 0.02), ps.real("eps-prime", 0.002),
                                   ps.real("eps-second", 0.0002));
    split.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("hoelder: ") + e.what());
  }

  const SphereMesh mesh = make_sphere_mesh(
      ps.integer("l-max", 24), ps.integer("n-theta", 32), ps.integer("n-phi", 64));
  const std::vector<SpherePotential> battery =
      random_battery(mesh, count, band, cfg.seed);
  const GreenKernel gk = make_green_kernel(mesh);

  Document doc;
  Table t;
  t.name = "links";
  t.columns = {"potential-id", "link", "lhs", "rhs", "slack"};
  int violations = 0;
  double min_slack = 0.0;
  bool first = true;
  for (int i = 0; i < count; ++i) {
    const ChainReport report = hoelder_chain_check(battery[i], split, gk);
    for (const ChainLink& link : report.links) {
      const double slack = link.rhs - link.lhs;
      if (first || slack < min_slack) min_slack = slack;
      first = false;
      if (!link.holds) ++violations;
      t.rows.push_back({std::to_string(i), link.name, format_double(link.lhs),
                        format_double(link.rhs), format_double(slack)});
    }
  }
  doc.tables.push_back(std::move(t));
  doc.add_scalar("status", violations == 0 ? "pass" : "violation");
  doc.add_scalar("violations", std::to_string(violations));
  doc.add_scalar("min_slack", min_slack);
  doc.add_scalar("alpha1", split.alpha1);
  doc.add_scalar("alpha2", split.alpha2);
  doc.add_scalar("alpha", split.alpha());
  doc.add_scalar("delta", split.alpha2 / split.alpha());
  emit(doc, cfg);

  out << "count=" << count << " violations=" << violations
      << " min_slack=" << format_double(min_slack) << '\n';
  if (violations) err << "hoelder: a chain link failed\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

std::string check_name_for(const std::string& command) {
  if (command == "dims") return "section-dimension-formula";
  if (command == "gram") return "gram-block-structure";
  if (command == "bergman") return "density-leading-order";
  if (command == "lemma31") return "global-section-sup-bound";
  if (command == "alpha-scan") return "integrability-threshold";
  if (command == "phi-eps") return "degenerate-family-integrals";
  if (command == "case-table") return "combinatorial-threshold-table";
  if (command == "mt-battery") return "sphere-energy-inequality";
  if (command == "hoelder") return "chained-exponent-estimate";
  if (command == "report") return "summary";
  return "unknown";
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params ps(cfg, {"files"});
  const std::string joined = ps.str("files", "");
  std::vector<std::string> paths;
  for (const std::string& tok : split_list(joined, ':'))
    if (!tok.empty()) paths.push_back(tok);

  Document doc;
  Table t;
  t.name = "summary";
  t.columns = {"file", "command", "check", "status", "detail"};
  for (const std::string& path : paths) {
    std::string content;
    Document artifact;
    try {
      content = read_file(path);
      artifact = parse_document(content);
    } catch (const std::exception& e) {
      err << "report: " << path << ": " << e.what() << '\n';
      return kExitUsage;
    }
    std::string status = "info";
    std::string detail;
    for (const auto& [k, v] : artifact.scalars) {
      if (k == "status") status = v;
      if (k == "verdict" || k == "overall_sup" || k == "lo") {
        if (!detail.empty()) detail += "; ";
        detail += k + "=" + v;
      }
    }
    t.rows.push_back({path, artifact.config.command,
                      check_name_for(artifact.config.command), status, detail});
    out << path << ": " << check_name_for(artifact.config.command) << " -> "
        << status << '\n';
  }
  doc.tables.push_back(std::move(t));
  doc.add_scalar("status", "info");
  doc.add_scalar("artifact_count", std::to_string(paths.size()));
  emit(doc, cfg);
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "dims") return cmd_dims(config, out, err);
    if (config.command == "gram") return cmd_gram(config, out, err);
    if (config.command == "bergman") return cmd_bergman(config, out, err);
    if (config.command == "lemma31") return cmd_lemma31(config, out, err);
    if (config.command == "alpha-scan") return cmd_alpha_scan(config, out, err);
    if (config.command == "phi-eps") return cmd_phi_eps(config, out, err);
    if (config.command == "case-table") return cmd_case_table(config, out, err);
    if (config.command == "mt-battery") return cmd_mt_battery(config, out, err);
    if (config.command == "hoelder") return cmd_hoelder(config, out, err);
    if (config.command == "report") return cmd_report(config, out, err);
    err << "unknown command: " << config.command << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const AccuracyError& e) {
    err << "accuracy failure: " << e.what()
        << " previous=" << format_double(e.previous_estimate)
        << " last=" << format_double(e.last_estimate) << '\n';
    if (!config.output_path.empty()) {
      Document doc;
      doc.config = config;
      doc.add_scalar("status", "accuracy-failure");
      doc.add_scalar("previous_estimate", e.previous_estimate);
      doc.add_scalar("last_estimate", e.last_estimate);
      write_atomic(config.output_path, render_document(doc));
    }
    return kExitAccuracy;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitAccuracy;
  }
}

}  // namespace dp7
