#include "dp7/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dp7/quadrature.hpp"

namespace dp7 {

namespace {

constexpr double kPi = 3.14159265358979323846;

int tri_index(int l, int m) { return l * (l + 1) / 2 + m; }

// Fully normalized associated Legendre values at a single abscissa, all
// 0 <= m <= l <= l_max, flat-indexed by tri_index. Normalization makes the
// m = 0 chain equal to the zonal harmonics and pairs with sqrt(2)*cos/sin
// factors for m > 0.
std::vector<double> normalized_assoc_legendre(int l_max, double x) {
  std::vector<double> p(static_cast<std::size_t>(tri_index(l_max, l_max)) + 1, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  p[tri_index(0, 0)] = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= l_max; ++m) {
    p[tri_index(m, m)] =
        std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p[tri_index(m - 1, m - 1)];
  }
  for (int m = 0; m < l_max; ++m) {
    p[tri_index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * p[tri_index(m, m)];
  }
  for (int m = 0; m <= l_max; ++m) {
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) /
                                 (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) -
                                  static_cast<double>(m) * m) /
                                 (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      p[tri_index(l, m)] =
          a * (x * p[tri_index(l - 1, m)] - b * p[tri_index(l - 2, m)]);
    }
  }
  return p;
}

void require_same_mesh(const SpherePotential& p, const SphereMesh* mesh) {
  if (p.mesh == nullptr || p.values.size() != p.mesh->nodes())
    throw std::invalid_argument("sphere: potential is not bound to a mesh");
  if (mesh != nullptr && p.mesh != mesh)
    throw std::invalid_argument("sphere: mesh mismatch");
}

Eigen::VectorXd positive_density_or_throw(const SpherePotential& p) {
  Eigen::VectorXd rho = perturbed_density(p);
  if (rho.minCoeff() <= 0.0)
    throw std::domain_error("sphere: perturbed density is not positive on the mesh");
  return rho;
}

}  // namespace

double SphereMesh::volume() const { return 4.0 * kPi; }

SphereMesh make_sphere_mesh(int l_max, int n_theta, int n_phi) {
  if (l_max < 1) throw std::invalid_argument("make_sphere_mesh: l_max must be at least 1");
  if (2 * l_max > 2 * n_theta - 1)
    throw std::invalid_argument("make_sphere_mesh: n_theta too small for exact basis products");
  if (n_phi <= 2 * l_max)
    throw std::invalid_argument("make_sphere_mesh: n_phi too small for exact basis products");

  SphereMesh mesh;
  mesh.n_theta = n_theta;
  mesh.n_phi = n_phi;
  mesh.l_max = l_max;

  const GaussRule& rule = gauss_legendre(n_theta);
  mesh.mu = rule.x;
  mesh.mu_w = rule.w;
  mesh.az.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) mesh.az[j] = 2.0 * kPi * j / n_phi;

  const int n_modes = (l_max + 1) * (l_max + 1);
  mesh.mode_l.reserve(n_modes);
  mesh.mode_m.reserve(n_modes);
  for (int l = 0; l <= l_max; ++l) {
    mesh.mode_l.push_back(l);
    mesh.mode_m.push_back(0);
    for (int m = 1; m <= l; ++m) {
      mesh.mode_l.push_back(l);
      mesh.mode_m.push_back(m);
      mesh.mode_l.push_back(l);
      mesh.mode_m.push_back(-m);
    }
  }

  const int n_nodes = n_theta * n_phi;
  mesh.w.resize(n_nodes);
  mesh.Y.resize(n_nodes, n_modes);
  const double az_weight = 2.0 * kPi / n_phi;
  const double sqrt2 = std::sqrt(2.0);

  for (int i = 0; i < n_theta; ++i) {
    const std::vector<double> leg = normalized_assoc_legendre(l_max, mesh.mu[i]);
    for (int j = 0; j < n_phi; ++j) {
      const int node = mesh.node_index(i, j);
      mesh.w(node) = mesh.mu_w[i] * az_weight;
      for (int k = 0; k < n_modes; ++k) {
        const int l = mesh.mode_l[k];
        const int m = mesh.mode_m[k];
        if (m == 0) {
          mesh.Y(node, k) = leg[tri_index(l, 0)];
        } else if (m > 0) {
          mesh.Y(node, k) = sqrt2 * leg[tri_index(l, m)] * std::cos(m * mesh.az[j]);
        } else {
          mesh.Y(node, k) = sqrt2 * leg[tri_index(l, -m)] * std::sin(-m * mesh.az[j]);
        }
      }
    }
  }
  return mesh;
}

SpherePotential make_potential(const SphereMesh& mesh, const Eigen::VectorXd& values) {
  if (values.size() != mesh.nodes())
    throw std::invalid_argument("make_potential: value count does not match the mesh");
  SpherePotential p;
  p.mesh = &mesh;
  p.values = values;
  p.normalized = false;
  return p;
}

SpherePotential potential_from_coeffs(const SphereMesh& mesh,
                                      const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != mesh.modes())
    throw std::invalid_argument("potential_from_coeffs: coefficient count mismatch");
  return make_potential(mesh, mesh.Y * coeffs);
}

SpherePotential sup_normalize(const SpherePotential& p) {
  require_same_mesh(p, nullptr);
  SpherePotential q = p;
  q.values.array() -= q.values.maxCoeff();
  q.normalized = true;
  return q;
}

std::vector<SpherePotential> random_battery(const SphereMesh& mesh, int count,
                                            int l_band, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_battery: count must be positive");
  if (l_band < 1 || l_band > mesh.l_max)
    throw std::invalid_argument("random_battery: band must lie in [1, l_max]");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<SpherePotential> out;
  out.reserve(count);

  for (int n = 0; n < count; ++n) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(mesh.modes());
    for (int k = 0; k < mesh.modes(); ++k) {
      const int l = mesh.mode_l[k];
      if (l < 1 || l > l_band) continue;
      coeffs(k) = gauss(rng) / (1.0 + l * (l + 1.0));
    }
    SpherePotential p = sup_normalize(potential_from_coeffs(mesh, coeffs));
    for (int halvings = 0; halvings < 60; ++halvings) {
      if (perturbed_density(p).minCoeff() >= 0.05) break;
      p.values *= 0.5;
    }
    out.push_back(std::move(p));
  }
  return out;
}

Eigen::VectorXd sh_coefficients(const SpherePotential& p) {
  require_same_mesh(p, nullptr);
  return p.mesh->Y.transpose() * p.mesh->w.cwiseProduct(p.values);
}

Eigen::VectorXd mesh_laplacian(const SpherePotential& p) {
  const Eigen::VectorXd c = sh_coefficients(p);
  Eigen::VectorXd scaled(c.size());
  for (int k = 0; k < c.size(); ++k) {
    const double l = p.mesh->mode_l[k];
    scaled(k) = -l * (l + 1.0) * c(k);
  }
  return p.mesh->Y * scaled;
}

Eigen::VectorXd perturbed_density(const SpherePotential& p) {
  return ((0.5 * mesh_laplacian(p)).array() + 1.0).matrix();
}

double mean_value(const SpherePotential& p) {
  require_same_mesh(p, nullptr);
  return p.mesh->w.dot(p.values) / p.mesh->volume();
}

double log_exp_integral(const SpherePotential& p, double s) {
  require_same_mesh(p, nullptr);
  const Eigen::ArrayXd t = (-s) * p.values.array();
  const double shift = t.maxCoeff();
  const double sum = (p.mesh->w.array() * (t - shift).exp()).sum();
  return shift + std::log(sum / p.mesh->volume());
}

double compute_J(const SpherePotential& p) {
  positive_density_or_throw(p);
  const Eigen::VectorXd c = sh_coefficients(p);
  double acc = 0.0;
  for (int k = 0; k < c.size(); ++k) {
    const double l = p.mesh->mode_l[k];
    acc += l * (l + 1.0) * c(k) * c(k);
  }
  return acc / (4.0 * p.mesh->volume());
}

double compute_I(const SpherePotential& p) {
  const Eigen::VectorXd rho = positive_density_or_throw(p);
  const Eigen::ArrayXd integrand = p.values.array() * (1.0 - rho.array());
  return (p.mesh->w.array() * integrand).sum() / p.mesh->volume();
}

FunctionalValues compute_F(const SpherePotential& p) {
  FunctionalValues out;
  out.J = compute_J(p);
  out.I = compute_I(p);
  out.mean = mean_value(p);
  out.lambda1_norm = lambda1_norm(p);
  out.F = out.J - out.mean - log_exp_integral(p, 1.0);
  return out;
}

MtResult mt_sphere_check(const SpherePotential& p) {
  MtResult r;
  const double j = compute_J(p);
  const double m = mean_value(p);
  r.lhs = std::exp(log_exp_integral(p, 1.0));
  r.rhs = std::exp(2.0 * j - m);
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

SpherePotential lambda1_project(const SpherePotential& p) {
  const Eigen::VectorXd c = sh_coefficients(p);
  SpherePotential q = p;
  for (int k = 0; k < c.size(); ++k) {
    if (p.mesh->mode_l[k] == 1) q.values -= c(k) * p.mesh->Y.col(k);
  }
  q.normalized = false;
  return q;
}

double lambda1_norm(const SpherePotential& p) {
  const Eigen::VectorXd c = sh_coefficients(p);
  double acc = 0.0;
  for (int k = 0; k < c.size(); ++k) {
    if (p.mesh->mode_l[k] == 1) acc += c(k) * c(k);
  }
  return std::sqrt(acc);
}

GreenKernel make_green_kernel(const SphereMesh& mesh) {
  Eigen::VectorXd linv(mesh.modes());
  for (int k = 0; k < mesh.modes(); ++k) {
    const double l = mesh.mode_l[k];
    linv(k) = (mesh.mode_l[k] == 0) ? 0.0 : 2.0 / (l * (l + 1.0));
  }
  GreenKernel gk;
  gk.mesh = &mesh;
  gk.gamma0.noalias() =
      mesh.volume() * (mesh.Y * linv.asDiagonal() * mesh.Y.transpose());
  return gk;
}

// The perturbed-metric kernel is gamma0 shifted by a column term (the
// mean-free potential) and a row term fixing the perturbed-measure row
// average to zero. Shifts leave the reproducing identity untouched because
// the perturbed Laplacian integrates to zero.
GreenCheck green_bound_check(const SpherePotential& p, const GreenKernel& gk) {
  require_same_mesh(p, gk.mesh);
  const SphereMesh& mesh = *p.mesh;
  const double V = mesh.volume();

  const Eigen::VectorXd rho = positive_density_or_throw(p);
  const Eigen::VectorXd d = rho.cwiseProduct(mesh.w);
  const Eigen::VectorXd a =
      (p.values.array() - mesh.w.dot(p.values) / V).matrix();  // mean-free potential
  const double ad = a.dot(d);
  const Eigen::VectorXd g0d = gk.gamma0 * d;
  const Eigen::VectorXd b = -(g0d.array() + ad) / V;

  GreenCheck out;
  double kernel_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < mesh.nodes(); ++i) {
    const double row_min = (gk.gamma0.row(i).transpose() + a).minCoeff() + b(i);
    kernel_min = std::min(kernel_min, row_min);
  }
  out.kernel_min = kernel_min;
  out.C_used = -kernel_min;

  const double avg_pert_neg = -p.values.dot(d) / V;
  out.lhs = -p.values.minCoeff();
  out.rhs = avg_pert_neg + out.C_used;
  out.holds = out.lhs <= out.rhs + 1e-9 * std::max(1.0, std::abs(out.rhs));

  // Reconstruction error of the band-limited Green identity.
  const Eigen::VectorXd v = ((rho.array() - 1.0) * mesh.w.array()).matrix();
  const Eigen::VectorXd gv = gk.gamma0 * v;
  const double av = a.dot(v);
  const double sv = v.sum();
  const double avg_pert = p.values.dot(d) / V;
  double err = 0.0;
  for (int i = 0; i < mesh.nodes(); ++i) {
    const double recon = avg_pert - (gv(i) + av + b(i) * sv) / V;
    err = std::max(err, std::abs(recon - p.values(i)));
  }
  out.identity_error = err;
  return out;
}

HoelderSplit HoelderSplit::standard(double eps, double epsP, double epsPP) {
  HoelderSplit s;
  s.eps = eps;
  s.epsP = epsP;
  s.epsPP = epsPP;
  s.alpha2 = eps + epsP;
  s.alpha1 = 1.0 - 2.0 * eps - epsP + epsPP;
  s.p = 1.0 / s.alpha1;
  s.q = 1.0 / (1.0 - s.alpha1);
  return s;
}

void HoelderSplit::validate() const {
  if (!(eps > 0.0 && epsP > 0.0 && epsPP >= 0.0))
    throw std::domain_error("HoelderSplit: split increments must be positive");
  if (!(alpha1 > 0.0 && alpha1 < 1.0))
    throw std::domain_error("HoelderSplit: alpha1 must lie in (0, 1)");
  if (!(alpha() > 1.0))
    throw std::domain_error("HoelderSplit: combined exponent must exceed 1");
  if (!(alpha() > alpha1 + 2.0 * eps))
    throw std::domain_error("HoelderSplit: combined exponent too small for the tail split");
  const double s2 = alpha2 / (1.0 - alpha1);
  if (!(s2 > 0.0 && s2 < 1.0))
    throw std::domain_error("HoelderSplit: residual exponent must lie in (0, 1)");
  if (std::abs(alpha1 * p - 1.0) > 1e-12 || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
    throw std::domain_error("HoelderSplit: conjugate exponents are inconsistent");
}

namespace {

ChainLink make_link(std::string name, double lhs, double rhs, double tol = 1e-9) {
  ChainLink link;
  link.name = std::move(name);
  link.lhs = lhs;
  link.rhs = rhs;
  link.holds = lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
  return link;
}

}  // namespace

ChainReport hoelder_chain_check(const SpherePotential& p,
                                const HoelderSplit& split,
                                const GreenKernel& gk) {
  split.validate();
  const SpherePotential q = p.normalized ? p : sup_normalize(p);

  const double a1 = split.alpha1;
  const double a2 = split.alpha2;
  const double eps = split.eps;
  const double alpha = split.alpha();
  const double s2 = a2 / (1.0 - a1);

  const double J = compute_J(q);
  const double I = compute_I(q);
  const double m = mean_value(q);
  const double inf_phi = q.values.minCoeff();
  const double lA = log_exp_integral(q, 1.0);
  const double lB = log_exp_integral(q, alpha);
  const double lB1 = log_exp_integral(q, a1 + a2);
  const double lB2 = log_exp_integral(q, s2);

  const GreenCheck green = green_bound_check(q, gk);
  const double Cg = green.C_used;

  const Eigen::VectorXd rho = perturbed_density(q);
  const double avg_pert_neg =
      -(rho.cwiseProduct(q.mesh->w)).dot(q.values) / q.mesh->volume();

  ChainReport report;
  report.links.push_back(
      make_link("split off epsilon", lB, lB1 + eps * (-inf_phi)));
  report.links.push_back(
      make_link("hoelder pairing", lB1, a1 * lA + (1.0 - a1) * lB2));
  report.links.push_back(make_link(
      "conjugate exponents",
      std::abs(a1 * split.p - 1.0) + std::abs(1.0 / split.p + 1.0 / split.q - 1.0),
      1e-12));
  report.links.push_back(make_link("energy bound", lA, 2.0 * J - m));
  report.links.push_back(make_link("green bound", -inf_phi, green.rhs));
  report.links.push_back(make_link(
      "perturbed average identity",
      std::abs(avg_pert_neg - (I - m)), 1e-8));
  report.links.push_back(make_link("energy sandwich", I, 2.0 * J, 1e-8));
  report.links.push_back(make_link("power mean", lA, lB / alpha));

  report.log_c_final = (eps * Cg) / alpha + ((1.0 - a1) / alpha) * lB2;
  report.links.push_back(make_link(
      "combined estimate", lA,
      report.log_c_final + (a1 + eps) * (2.0 * J - m) / alpha));

  report.delta = a2 / alpha;
  report.all_hold = true;
  for (const ChainLink& link : report.links) report.all_hold &= link.holds;
  return report;
}

RicciCheck ricci_identity_check(const SphereMesh& mesh, double t,
                                const std::vector<double>& background_coeffs) {
  if (!(t > 0.0 && t <= 1.0))
    throw std::invalid_argument("ricci_identity_check: t must lie in (0, 1]");
  if (static_cast<int>(background_coeffs.size()) > mesh.l_max)
    throw std::invalid_argument("ricci_identity_check: background band exceeds l_max");

  const int nr = mesh.n_theta;
  const int lmax = mesh.l_max;
  const double V = mesh.volume();

  // Zonal basis on the Gauss abscissas; azimuth integration collapses to 2*pi.
  Eigen::MatrixXd P(nr, lmax + 1);
  for (int i = 0; i < nr; ++i) {
    const std::vector<double> leg = normalized_assoc_legendre(lmax, mesh.mu[i]);
    for (int l = 0; l <= lmax; ++l) P(i, l) = leg[tri_index(l, 0)];
  }
  Eigen::VectorXd wr(nr);
  for (int i = 0; i < nr; ++i) wr(i) = 2.0 * kPi * mesh.mu_w[i];

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(nr);
  Eigen::VectorXd lap_phi = Eigen::VectorXd::Zero(nr);  // complex scaling
  for (std::size_t j = 0; j < background_coeffs.size(); ++j) {
    const double l = static_cast<double>(j + 1);
    phi += background_coeffs[j] * P.col(static_cast<int>(j + 1));
    lap_phi -= background_coeffs[j] * 0.5 * l * (l + 1.0) * P.col(static_cast<int>(j + 1));
  }
  const Eigen::VectorXd rho_bg = (lap_phi.array() + 1.0).matrix();
  if (rho_bg.minCoeff() <= 0.0)
    throw std::domain_error("ricci_identity_check: background density is not positive");

  // Complex-scaled Laplacian on zonal functions.
  Eigen::VectorXd half_l(lmax + 1);
  for (int l = 0; l <= lmax; ++l) half_l(l) = 0.5 * l * (l + 1.0);
  const Eigen::MatrixXd lap_op =
      -P * half_l.asDiagonal() * P.transpose() * wr.asDiagonal();

  // Newton solve of rho_bg + lap(psi) = c * exp(-phi - t*psi) in the
  // zero-mean gauge; c absorbs additive constants of psi.
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(nr);
  const auto residual = [&](const Eigen::VectorXd& ps, Eigen::VectorXd& E,
                            double& c) -> Eigen::VectorXd {
    E = ((-phi.array() - t * ps.array()).exp()).matrix();
    c = V / wr.dot(E);
    return rho_bg + lap_op * ps - c * E;
  };

  Eigen::VectorXd E(nr);
  double c = 1.0;
  Eigen::VectorXd F = residual(psi, E, c);
  int iters = 0;
  for (; iters < 50; ++iters) {
    const double res = F.lpNorm<Eigen::Infinity>();
    if (res < 1e-12) break;
    Eigen::MatrixXd Jm = lap_op;
    for (int i = 0; i < nr; ++i) Jm(i, i) += t * c * E(i);
    Jm.noalias() -= (t * c / wr.dot(E)) * (E * (wr.cwiseProduct(E)).transpose());
    Jm.noalias() += (1.0 / V) * (Eigen::VectorXd::Ones(nr) * wr.transpose());
    const Eigen::VectorXd step = Jm.partialPivLu().solve(-F);
    double lambda = 1.0;
    Eigen::VectorXd trial_E(nr);
    double trial_c = c;
    Eigen::VectorXd trial_F;
    for (int h = 0; h < 25; ++h) {
      trial_F = residual(psi + lambda * step, trial_E, trial_c);
      if (trial_F.lpNorm<Eigen::Infinity>() < res) break;
      lambda *= 0.5;
    }
    psi += lambda * step;
    E = trial_E;
    c = trial_c;
    F = trial_F;
  }
  if (F.lpNorm<Eigen::Infinity>() > 1e-10)
    throw std::runtime_error("ricci_identity_check: Newton iteration did not settle");

  const Eigen::VectorXd rho_t = c * E;
  const Eigen::VectorXd log_rho = rho_t.array().log().matrix();
  const Eigen::VectorXd lap_log = lap_op * log_rho;
  const Eigen::VectorXd rho_ric = (1.0 - lap_log.array()).matrix();

  RicciCheck out;
  out.t = t;
  out.c_value = c;
  out.newton_iters = iters;
  const Eigen::VectorXd resid =
      rho_ric - t * rho_t - (1.0 - t) * rho_bg;
  out.residual_sup = resid.lpNorm<Eigen::Infinity>();
  out.positivity_margin = (rho_ric - t * rho_t).minCoeff();
  return out;
}

}  // namespace dp7
