#include "doctest.h"

#include <cmath>
#include <random>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/angular_transform.hpp"
#include "dnsphere/spectral/boundary_field.hpp"
#include "dnsphere/spectral/modes.hpp"
#include "dnsphere/spectral/quadrature.hpp"

using namespace dnsphere;

namespace {

Eigen::VectorXd random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x[i] = n01(rng);
  return x.normalized();
}

BoundaryField random_field(int dim, int L, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  BoundaryField f(dim, L);
  for (int i = 0; i < f.size(); ++i) f[i] = n01(rng);
  return f;
}

}  // namespace

TEST_CASE("gauss rules integrate monomials") {
  const Rule1D gl = gauss_legendre(7, 0.0, 1.0);
  const Rule1D gll = gauss_lobatto(7, 0.0, 1.0);
  for (int k = 0; k <= 13; ++k) {
    double s = 0;
    for (int i = 0; i < 7; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
  for (int k = 0; k <= 11; ++k) {
    double s = 0;
    for (int i = 0; i < 7; ++i) s += gll.weights[i] * std::pow(gll.nodes[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
  CHECK(gll.nodes[0] == 0.0);
  CHECK(gll.nodes[6] == doctest::Approx(1.0));
}

TEST_CASE("nodal interpolation is exact on polynomials") {
  const Rule1D gll = gauss_lobatto(9, 0.0, 1.0);
  NodalInterpolator I(gll.nodes, 0.0, 1.0);
  Eigen::VectorXd f(9);
  for (int i = 0; i < 9; ++i) f[i] = std::pow(gll.nodes[i], 8) - 3 * gll.nodes[i];
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    CHECK((I.value_row(t) * f)(0) == doctest::Approx(std::pow(t, 8) - 3 * t).epsilon(1e-13));
    CHECK((I.derivative_row(t) * f)(0) ==
          doctest::Approx(8 * std::pow(t, 7) - 3).epsilon(1e-11));
  }
}

TEST_CASE("jacobi derivative matches finite differences") {
  double p[6], dp[6], pp[6], pm[6], tmp[6];
  const double x = 0.3, h = 1e-6;
  jacobi_table(6, 2.0, 5.0, x, p, dp);
  jacobi_table(6, 2.0, 5.0, x + h, pp, tmp);
  jacobi_table(6, 2.0, 5.0, x - h, pm, tmp);
  for (int k = 0; k < 6; ++k) CHECK(dp[k] == doctest::Approx((pp[k] - pm[k]) / (2 * h)).epsilon(1e-7));
  // P_1^{(a,b)}(x) = (a - b)/2 + (a + b + 2) x / 2
  CHECK(p[1] == doctest::Approx(-1.5 + 4.5 * x));
}

TEST_CASE("grid weights and exactness") {
  CHECK(AngularGrid::for_degree(2, 10).weights().sum() == doctest::Approx(2 * M_PI));
  CHECK(AngularGrid::for_degree(3, 10).weights().sum() == doctest::Approx(4 * M_PI));
  CHECK(AngularGrid::for_degree(2, 10).max_band_limit() == 10);
  CHECK(AngularGrid::for_degree(3, 10).max_band_limit() == 10);
}

TEST_CASE("low-degree harmonics match closed forms") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd x = random_unit(3, rng);
    const Eigen::VectorXd y = eval_modes(3, 2, x);
    const double c1 = std::sqrt(3.0 / (4 * M_PI));
    CHECK(y[sphere_index(0, 0)] == doctest::Approx(1 / std::sqrt(4 * M_PI)));
    CHECK(y[sphere_index(1, 0)] == doctest::Approx(c1 * x[2]));
    CHECK(y[sphere_index(1, 1)] == doctest::Approx(c1 * x[0]));
    CHECK(y[sphere_index(1, -1)] == doctest::Approx(c1 * x[1]));
    const double c2 = 0.5 * std::sqrt(15.0 / M_PI);
    CHECK(y[sphere_index(2, -2)] == doctest::Approx(c2 * x[0] * x[1]));
    CHECK(y[sphere_index(2, 1)] == doctest::Approx(c2 * x[0] * x[2]));
    const Eigen::VectorXd z = random_unit(2, rng);
    const Eigen::VectorXd w = eval_modes(2, 2, z);
    CHECK(w[circle_index(1)] == doctest::Approx(z[0] / std::sqrt(M_PI)));
    CHECK(w[circle_index(-1)] == doctest::Approx(z[1] / std::sqrt(M_PI)));
    CHECK(w[circle_index(2)] == doctest::Approx((z[0] * z[0] - z[1] * z[1]) / std::sqrt(M_PI)));
  }
}

TEST_CASE("transform round trip is the identity") {
  for (int dim : {2, 3}) {
    const int L = 12;
    const AngularGrid g = AngularGrid::for_degree(dim, L);
    AngularTransform T(g, L);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(T.modes(), T.modes());
    CHECK((T.analyze(T.synth(I)) - I).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("grid synthesis agrees with pointwise evaluation") {
  std::mt19937_64 rng(2);
  for (int dim : {2, 3}) {
    const BoundaryField f = random_field(dim, 9, rng);
    const AngularGrid g = AngularGrid::for_degree(dim, 11);
    const Eigen::VectorXd v = synth(f, g);
    for (int k = 0; k < g.size(); k += 7)
      CHECK(v[k] == doctest::Approx(eval(f, g.points().col(k))).epsilon(1e-12));
  }
}

TEST_CASE("tangential gradient matches finite differences") {
  std::mt19937_64 rng(3);
  for (int dim : {2, 3}) {
    const int L = 8;
    const BoundaryField f = random_field(dim, L, rng);
    const auto grad = tangential_gradient(f);
    for (int t = 0; t < 6; ++t) {
      const Eigen::VectorXd x = random_unit(dim, rng);
      Eigen::VectorXd d = random_unit(dim, rng);
      d -= d.dot(x) * x;
      d.normalize();
      const double h = 1e-5;
      const double fd = (eval(f, (x + h * d).normalized()) - eval(f, (x - h * d).normalized())) / (2 * h);
      double an = 0;
      for (int k = 0; k < dim; ++k) an += eval(grad[k], x) * d[k];
      CHECK(an == doctest::Approx(fd).epsilon(1e-7));
      // gradient is tangential
      double rad = 0;
      for (int k = 0; k < dim; ++k) rad += eval(grad[k], x) * x[k];
      CHECK(std::abs(rad) < 1e-10);
      const Eigen::MatrixXd G = eval_mode_gradients(dim, L, x);
      CHECK((G * f.coeffs()).dot(d) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("green identity and adjointness of the tangential transforms") {
  std::mt19937_64 rng(4);
  for (int dim : {2, 3}) {
    const int L = 10;
    const AngularGrid g = AngularGrid::for_degree(dim, L + 1);
    AngularTransform T(g, L);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(T.modes(), T.modes());
    const auto G = T.synth_tangential(I);
    // Gram of gradients = diag(lambda)
    Eigen::MatrixXd gram = T.tangential_adjoint(G);
    for (int i = 0; i < T.modes(); ++i) {
      CHECK(gram(i, i) == doctest::Approx(mode_eigenvalue(dim, i)).epsilon(1e-12));
      gram(i, i) = 0;
    }
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("sobolev norm of single modes") {
  BoundaryField f(3, 4);
  f[sphere_index(3, -2)] = 2.0;
  CHECK(sobolev_norm(f, 1.5) == doctest::Approx(2.0 * std::pow(13.0, 0.75)));
  BoundaryField g(2, 4);
  g[circle_index(-3)] = 1.0;
  CHECK(sobolev_norm(g, 2.0) == doctest::Approx(10.0));
}

TEST_CASE("products are exact and report truncation") {
  BoundaryField f(2, 1);
  f[circle_index(1)] = std::sqrt(M_PI);  // cos t
  auto p = multiply(f, f, 4);
  // cos^2 = 1/2 + cos 2t / 2
  CHECK(p.field[0] == doctest::Approx(0.5 * std::sqrt(2 * M_PI)));
  CHECK(p.field[circle_index(2)] == doctest::Approx(0.5 * std::sqrt(M_PI)));
  CHECK(p.truncated_l2 < 1e-7);
  auto q = multiply(f, f, 1);
  CHECK(q.field.L() == 1);
  CHECK(q.truncated_l2 == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-8));
  std::mt19937_64 rng(5);
  const BoundaryField a = random_field(3, 5, rng), b = random_field(3, 4, rng);
  const auto ab = multiply(a, b, 20);
  CHECK(ab.field.L() == 9);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd x = random_unit(3, rng);
    CHECK(eval(ab.field, x) == doctest::Approx(eval(a, x) * eval(b, x)).epsilon(1e-11));
  }
}

TEST_CASE("analysis of out-of-band samples") {
  for (int dim : {2, 3}) {
    const int L = 8;
    const AngularGrid g = AngularGrid::for_degree(dim, L);
    BoundaryField hi(dim, L + 1);
    hi[mode_count(dim, L)] = 1.0;  // a degree L+1 mode
    const AngularGrid fine = AngularGrid::for_degree(dim, L + 1);
    const auto r = analyze_report(synth(hi, fine), fine, L);
    CHECK(r.field.coeffs().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.out_of_band == doctest::Approx(1.0));
    // on the degree-L grid the degree L+1 mode does not alias into <= L
    AngularTransform T(g, L + 1);
    const Eigen::VectorXd v = T.synth(hi.coeffs());
    CHECK(analyze(v, g, L).coeffs().cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("errors on bad input") {
  const AngularGrid g = AngularGrid::for_degree(2, 4);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(g.size());
  v[2] = std::nan("");
  CHECK_THROWS_AS(analyze(v, g, 4), InputError);
  CHECK_THROWS_AS(analyze(Eigen::VectorXd::Ones(g.size()), g, 6), ResolutionError);
  CHECK_THROWS_AS(synth(BoundaryField(2, 7), g), ResolutionError);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(6);
  const BoundaryField f = random_field(3, 3, rng);
  const BoundaryField g = boundary_field_from_json(to_json(f));
  CHECK(g.L() == 3);
  CHECK((g.coeffs() - f.coeffs()).norm() == 0.0);
}
