#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "dp7/sampling.hpp"
#include "dp7/sections.hpp"
#include "support/oracles.hpp"

using namespace dp7;
using dp7::testsupport::brute_force_basis;
using dp7::testsupport::rel_close;

namespace {

ChartPoint pt(Chart c, std::complex<double> a, std::complex<double> b) {
  ChartPoint p;
  p.chart = c;
  p.c1 = a;
  p.c2 = b;
  return p;
}

QuadratureGrid test_quad() {
  QuadratureGrid q;
  q.panels = 128;
  q.rel_tol = 1e-7;
  q.max_doublings = 5;
  return q;
}

}  // namespace

TEST_CASE("dimension formula and enumeration agree with brute force") {
  for (int n = 1; n <= 10; ++n) {
    auto basis = enumerate_basis(n);
    auto brute = brute_force_basis(n);
    REQUIRE(basis.size() == brute.size());
    CHECK(static_cast<long>(basis.size()) == expected_dimension(n));
    CHECK(static_cast<long>(basis.size()) ==
          static_cast<long>(n + 1) * (n + 1) * (n + 1) * (n + 2) / 2);
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == brute[i]);
    for (const auto& t : basis) CHECK(t.valid());
  }
  CHECK(expected_dimension(1) == 12);
  CHECK(expected_dimension(2) == 54);
  CHECK_THROWS_AS(enumerate_basis(0), std::invalid_argument);
  CHECK_THROWS_AS(expected_dimension(-1), std::invalid_argument);
}

TEST_CASE("multidegree classes have the closed-form count") {
  for (int n = 1; n <= 10; ++n) {
    auto groups = multidegree_groups(n);
    CHECK(static_cast<long>(groups.size()) ==
          (7L * n * n + 7L * n + 2L) / 2L);
    long total = 0;
    for (const auto& g : groups) {
      CHECK(g.count >= 1);
      total += g.count;
    }
    CHECK(total == expected_dimension(n));
  }
  CHECK(multidegree_groups(1).size() == 8);
}

TEST_CASE("tau swap is an involution matching tau on points") {
  auto basis = enumerate_basis(2);
  auto points = random_polydisc_points(Chart::U0, 5, 3);
  for (const auto& t : basis) {
    ExponentTuple s = tau_swap(t);
    CHECK(s.valid());
    CHECK(tau_swap(s) == t);
    MultiDegree e = multidegree(t);
    MultiDegree es = multidegree(s);
    CHECK(es.e0 == e.e0);
    CHECK(es.e1 == e.e2);
    CHECK(es.e2 == e.e1);
    for (const auto& p : points) {
      double a = multidegree_norm_sq_at(e, t.N, p);
      double b = multidegree_norm_sq_at(es, t.N, tau_point(p));
      CHECK(rel_close(a, b, 1e-12));
    }
  }
}

TEST_CASE("pointwise norm equals squared value times the metric weight") {
  auto basis = enumerate_basis(2);
  auto points = random_polydisc_points(Chart::U0, 4, 17);
  auto more = random_polydisc_points(Chart::U1, 4, 18);
  points.insert(points.end(), more.begin(), more.end());
  for (const auto& t : basis) {
    MultiDegree e = multidegree(t);
    for (const auto& p : points) {
      if (p.chart != Chart::U0 && std::abs(p.c1) + std::abs(p.c2) < 0.2) continue;
      double w = std::exp(-t.N * chart_potential(p));
      double ref = std::norm(multidegree_value(e, p)) * w;
      CHECK(rel_close(multidegree_norm_sq_at(e, t.N, p), ref, 1e-12));
      MonomialSection s{t, {0.5, 0.25}};
      CHECK(rel_close(section_norm_sq(s, p),
                      std::norm(s.coeff) * multidegree_norm_sq_at(e, t.N, p),
                      1e-12));
      CHECK(rel_close(section_norm(s, p), std::sqrt(section_norm_sq(s, p)),
                      1e-12));
      CHECK(std::abs(section_value(t, p) - multidegree_value(e, p)) <
            1e-12 * (1.0 + std::abs(multidegree_value(e, p))));
    }
  }
}

TEST_CASE("pointwise norms are chart independent") {
  auto basis = enumerate_basis(1);
  for (const auto& p0 : random_polydisc_points(Chart::U0, 6, 29)) {
    if (std::abs(p0.c1) < 0.15 || std::abs(p0.c2) < 0.15) continue;
    ChartPoint p1 = chart_transition(p0, Chart::U1);
    ChartPoint p2 = chart_transition(p0, Chart::U2);
    for (const auto& t : basis) {
      MultiDegree e = multidegree(t);
      double n0 = multidegree_norm_sq_at(e, t.N, p0);
      CHECK(rel_close(n0, multidegree_norm_sq_at(e, t.N, p1), 1e-10));
      CHECK(rel_close(n0, multidegree_norm_sq_at(e, t.N, p2), 1e-10));
    }
  }
}

TEST_CASE("sections vanish on the exceptional locus as dictated by exponents") {
  // On U1 the locus c1 = 0 carries the first blown-up point: any class with
  // e0 > 0 vanishes there.
  MultiDegree x3{3, 0, 0};
  CHECK(multidegree_norm_sq_at(x3, 1, pt(Chart::U1, 0.0, 1.0)) == 0.0);
  CHECK(multidegree_norm_sq_at(x3, 1, pt(Chart::U2, 0.0, 1.0)) == 0.0);
  CHECK(multidegree_norm_sq_at(x3, 1, pt(Chart::U0, 0.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("radial closed form matches the chart norm on U0") {
  MultiDegree e{1, 1, 1};
  for (double r1 : {0.2, 0.9, 2.5})
    for (double r2 : {0.1, 1.0, 3.0})
      CHECK(rel_close(norm_sq_u0_radial(e, 1, r1, r2),
                      multidegree_norm_sq_at(e, 1, pt(Chart::U0, r1, r2)),
                      1e-13));
}

TEST_CASE("multinomially weighted squared norms sum to one") {
  // Binomial expansion of the denominator: weighting each monomial by
  // trinomial(N; i) * C(N, j0) * C(N, k0) makes the squared norms a
  // partition of unity. With unit weights the sum can only be smaller.
  auto binom = [](int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
  };
  for (int n : {1, 2, 3}) {
    auto basis = enumerate_basis(n);
    auto points = random_chart_points(Chart::U0, 5, 101);
    auto m1 = random_chart_points(Chart::U1, 5, 102);
    auto m2 = random_chart_points(Chart::U2, 5, 103);
    points.insert(points.end(), m1.begin(), m1.end());
    points.insert(points.end(), m2.begin(), m2.end());
    for (const auto& p : points) {
      double weighted = 0.0;
      double plain = 0.0;
      for (const auto& t : basis) {
        double w = binom(n, t.i0) * binom(n - t.i0, t.i1) * binom(n, t.j0) *
                   binom(n, t.k0);
        double nsq = multidegree_norm_sq_at(multidegree(t), n, p);
        weighted += w * nsq;
        plain += nsq;
      }
      CHECK(rel_close(weighted, 1.0, 1e-10));
      CHECK(plain <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("norm integrals are symmetric under the involution") {
  QuadratureGrid quad = test_quad();
  auto groups = multidegree_groups(2);
  for (const auto& g : groups) {
    if (g.deg.e1 >= g.deg.e2) continue;
    MultiDegree sw{g.deg.e0, g.deg.e2, g.deg.e1};
    double a = multidegree_norm_integral(g.deg, 2, quad);
    double b = multidegree_norm_integral(sw, 2, quad);
    CHECK(a > 0.0);
    CHECK(rel_close(a, b, 1e-9));
  }
}

TEST_CASE("weighted norm integral with zero weight matches the plain one") {
  QuadratureGrid quad = test_quad();
  MultiDegree e{1, 1, 1};
  auto zero = [](double, double) { return 0.0; };
  CHECK(rel_close(multidegree_norm_integral(e, 1, quad),
                  multidegree_norm_integral_weighted(e, 1, zero, quad), 1e-12));
}

TEST_CASE("factorized inner product agrees with the generic quadrature") {
  QuadratureGrid quad = test_quad();
  auto basis = enumerate_basis(1);
  // Pairs inside one class, one diagonal entry, and one cross-class pair.
  MonomialSection a{basis[0], {1.0, 0.0}};
  MonomialSection b{basis[0], {0.0, 2.0}};
  auto fa = inner_product(a, b, quad);
  auto ga = inner_product_generic(a, b, quad, 8);
  // Two independently refined ladders at rel_tol 1e-7 each.
  CHECK(std::abs(fa - ga) < 1e-5 * (1.0 + std::abs(fa)));

  MonomialSection c{basis[1], {1.0, 0.0}};
  if (multidegree(basis[0]) != multidegree(basis[1])) {
    CHECK(inner_product(a, c, quad) == std::complex<double>(0.0, 0.0));
    CHECK(std::abs(inner_product_generic(a, c, quad, 8)) < 1e-10);
  }

  // Same class, different splits: identical restriction, equal products.
  auto groups = multidegree_groups(1);
  for (const auto& g : groups) {
    if (g.count < 2) continue;
    std::vector<ExponentTuple> members;
    for (const auto& t : basis)
      if (multidegree(t) == g.deg) members.push_back(t);
    REQUIRE(members.size() >= 2);
    MonomialSection s0{members[0], {1.0, 0.0}};
    MonomialSection s1{members[1], {1.0, 0.0}};
    auto p01 = inner_product(s0, s1, quad);
    auto p00 = inner_product(s0, s0, quad);
    CHECK(rel_close(p01.real(), p00.real(), 1e-12));
    CHECK(p01.imag() == 0.0);
    break;
  }
}

TEST_CASE("gram matrix is block diagonal with rank-one positive blocks") {
  QuadratureGrid quad = test_quad();
  for (int n : {1, 2}) {
    GramMatrix g = gram_matrix(n, quad);
    REQUIRE(static_cast<long>(g.tuples.size()) == expected_dimension(n));
    REQUIRE(g.values.rows() == g.values.cols());
    REQUIRE(g.values.rows() == static_cast<long>(g.tuples.size()));

    double max_offblock = 0.0;
    for (long i = 0; i < g.values.rows(); ++i)
      for (long j = 0; j < g.values.cols(); ++j) {
        bool same = multidegree(g.tuples[i]) == multidegree(g.tuples[j]);
        if (!same)
          max_offblock = std::max(max_offblock, std::abs(g.values(i, j)));
        else
          CHECK(g.values(i, j) > 0.0);
      }
    CHECK(max_offblock == 0.0);
    CHECK((g.values - g.values.transpose()).cwiseAbs().maxCoeff() == 0.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.values);
    REQUIRE(es.info() == Eigen::Success);
    double top = es.eigenvalues().maxCoeff();
    CHECK(es.eigenvalues().minCoeff() > -1e-12 * top);
    long rank = (es.eigenvalues().array() > 1e-10 * top).count();
    CHECK(rank == static_cast<long>(multidegree_groups(n).size()));
  }
}

TEST_CASE("orthonormalization handles diagonal, general, and deficient input") {
  Eigen::MatrixXd d(2, 2);
  d << 4.0, 0.0, 0.0, 1.0;
  Eigen::MatrixXd cd = orthonormal_combinations(d);
  REQUIRE(cd.rows() == 2);
  CHECK(cd(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cd(0, 1) == 0.0);
  CHECK(cd(1, 1) == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  Eigen::MatrixXd cm = orthonormal_combinations(m);
  REQUIRE(cm.rows() == 2);
  Eigen::MatrixXd round = cm * m * cm.transpose();
  CHECK((round - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXd r1(2, 2);
  r1 << 1.0, 1.0, 1.0, 1.0;
  Eigen::MatrixXd cr = orthonormal_combinations(r1);
  CHECK(cr.rows() == 1);
  Eigen::MatrixXd rr = cr * r1 * cr.transpose();
  CHECK(rr(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthonormalized basis reproduces the identity against its gram") {
  QuadratureGrid quad = test_quad();
  GramMatrix g = gram_matrix(1, quad);
  OrthoBasis ob = orthonormalize(g);
  CHECK(ob.coeffs.rows() == static_cast<long>(multidegree_groups(1).size()));
  Eigen::MatrixXd round = ob.coeffs * g.values * ob.coeffs.transpose();
  long k = round.rows();
  CHECK((round - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
}
