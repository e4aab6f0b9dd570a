#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dp7 {

// Quadrature mesh on the round unit sphere: Gauss-Legendre nodes in
// cos(theta) crossed with a uniform azimuth grid, plus a real orthonormal
// spherical-harmonic basis sampled on the nodes. Products of band-limited
// functions integrate exactly as long as the combined degree stays under
// 2*n_theta - 1.
struct SphereMesh {
  int n_theta = 32;
  int n_phi = 64;
  int l_max = 24;
  std::vector<double> mu;      // gauss nodes in cos(theta)
  std::vector<double> mu_w;    // gauss weights
  std::vector<double> az;      // azimuth values
  Eigen::VectorXd w;           // node weights, sum = 4*pi
  Eigen::MatrixXd Y;           // nodes x modes, orthonormal under w
  std::vector<int> mode_l;     // degree of each column
  std::vector<int> mode_m;     // order of each column (signed, real basis)

  int nodes() const { return n_theta * n_phi; }
  int modes() const { return static_cast<int>(mode_l.size()); }
  double volume() const;
  int node_index(int i_theta, int i_phi) const { return i_theta * n_phi + i_phi; }
};

SphereMesh make_sphere_mesh(int l_max = 24, int n_theta = 32, int n_phi = 64);

struct SpherePotential {
  const SphereMesh* mesh = nullptr;
  Eigen::VectorXd values;
  bool normalized = false;  // sup over nodes equals 0
};

SpherePotential make_potential(const SphereMesh& mesh,
                               const Eigen::VectorXd& values);
SpherePotential potential_from_coeffs(const SphereMesh& mesh,
                                      const Eigen::VectorXd& coeffs);
SpherePotential sup_normalize(const SpherePotential& p);

// Seeded band-limited battery, sup-normalized, amplitude backed off until
// the perturbed density stays positive on the mesh.
std::vector<SpherePotential> random_battery(const SphereMesh& mesh, int count,
                                            int l_band, std::uint64_t seed);

Eigen::VectorXd sh_coefficients(const SpherePotential& p);
Eigen::VectorXd mesh_laplacian(const SpherePotential& p);  // analyst sign
// Density of the perturbed form relative to the round area form: 1 + lap/2.
Eigen::VectorXd perturbed_density(const SpherePotential& p);

double mean_value(const SpherePotential& p);
// log of (1/V) * integral of exp(-s*phi), evaluated shift-safely.
double log_exp_integral(const SpherePotential& p, double s);

// Energies: J from the coefficient form, I from the pointwise product
// phi*(1 - density); for this arena I = 2J up to quadrature exactness.
double compute_J(const SpherePotential& p);
double compute_I(const SpherePotential& p);

struct FunctionalValues {
  double F = 0.0;
  double J = 0.0;
  double I = 0.0;
  double mean = 0.0;
  double lambda1_norm = 0.0;
};

FunctionalValues compute_F(const SpherePotential& p);

struct MtResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Printed two-sphere bound: (1/4pi) int e^-phi <= exp((1/8pi) int |grad|^2
// - (1/4pi) int phi). The energy side equals exp(2J - mean).
MtResult mt_sphere_check(const SpherePotential& p);

SpherePotential lambda1_project(const SpherePotential& p);
double lambda1_norm(const SpherePotential& p);

// Base Green kernel of the mesh Laplacian (complex-analyst scaling), shared
// across potentials; the perturbed-metric kernel differs from it only by
// row/column shifts.
struct GreenKernel {
  const SphereMesh* mesh = nullptr;
  Eigen::MatrixXd gamma0;  // 2V * Y L^+ Y^T
};

GreenKernel make_green_kernel(const SphereMesh& mesh);

struct GreenCheck {
  double lhs = 0.0;        // -inf phi
  double rhs = 0.0;        // perturbed average of -phi plus C
  double C_used = 0.0;
  double kernel_min = 0.0; // lower bound of the shifted kernel
  double identity_error = 0.0;
  bool holds = false;
};

GreenCheck green_bound_check(const SpherePotential& p, const GreenKernel& gk);

// Exponent split for the chained estimate: alpha2 = n*eps + epsP,
// alpha1 = 1 - (n+1)*eps - epsP + epsPP, alpha = alpha1 + alpha2 + eps,
// p = 1/alpha1, q = 1/(1-alpha1); n = 1 here.
struct HoelderSplit {
  double eps = 0.02;
  double epsP = 0.002;
  double epsPP = 0.0002;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double p = 0.0;
  double q = 0.0;

  static HoelderSplit standard(double eps = 0.02, double epsP = 0.002,
                               double epsPP = 0.0002);
  double alpha() const { return alpha1 + alpha2 + eps; }
  void validate() const;  // throws std::domain_error on a bad split
};

struct ChainLink {
  std::string name;
  double lhs = 0.0;   // in log scale where applicable
  double rhs = 0.0;
  bool holds = false;
};

struct ChainReport {
  std::vector<ChainLink> links;
  bool all_hold = false;
  double delta = 0.0;
  double log_c_final = 0.0;
};

ChainReport hoelder_chain_check(const SpherePotential& p,
                                const HoelderSplit& split,
                                const GreenKernel& gk);

struct RicciCheck {
  double t = 0.0;
  double residual_sup = 0.0;
  double positivity_margin = 0.0;
  double c_value = 0.0;
  int newton_iters = 0;
};

// Manufactured rotationally symmetric solution of the perturbed-background
// Monge-Ampere relation at parameter t, then a pointwise check of the
// curvature identity Ric(w_t) = t*w_t + (1-t)*w'. background_coeffs are the
// zonal harmonic coefficients (l = 1, 2, ...) of the background potential.
RicciCheck ricci_identity_check(const SphereMesh& mesh, double t,
                                const std::vector<double>& background_coeffs);

}  // namespace dp7
