#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "dnsphere/charts/chart_norms.hpp"
#include "dnsphere/charts/witness.hpp"
#include "dnsphere/error.hpp"
#include "dnsphere/spectral/modes.hpp"

using namespace dnsphere;

namespace {

Eigen::VectorXd random_unit(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = nd(g);
  return x.normalized();
}

Eigen::VectorXd south(int n) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p[n - 1] = -1.0;
  return p;
}

}  // namespace

TEST_CASE("chart maps") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (int n : {2, 3}) {
    CHECK(chart_f(south(n)).norm() == 0.0);
    for (int i = 0; i < 200; ++i) {
      Eigen::VectorXd x = random_unit(g, n) * u(g);
      x[n - 1] = -std::abs(x[n - 1]) - 1e-3;
      CHECK((chart_g(chart_f(x)) - x).norm() < 1e-13 * std::max(1.0, x.norm()));
      const Eigen::VectorXd xs = x.normalized();
      CHECK(std::abs(chart_f(xs)[n - 1]) <= 1e-15);
    }
    Eigen::VectorXd bad = Eigen::VectorXd::Ones(n);
    CHECK_THROWS_AS(chart_f(bad), InputError);
    CHECK_THROWS_AS(chart_g(bad), InputError);
  }
}

TEST_CASE("rotations") {
  std::mt19937_64 g(4);
  for (int n : {2, 3}) {
    for (int i = 0; i < 50; ++i) {
      const Eigen::VectorXd p = random_unit(g, n);
      const Eigen::MatrixXd R = rotation_to_south(p);
      CHECK((R * R.transpose() - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-14);
      CHECK((R * p - south(n)).norm() < 1e-14);
      CHECK(R.determinant() == doctest::Approx(1.0));
    }
    const Eigen::VectorXd north = -south(n);
    const Eigen::MatrixXd R = rotation_to_south(north);
    CHECK((R * north - south(n)).norm() < 1e-14);
    CHECK(R.determinant() == doctest::Approx(1.0));
  }
}

TEST_CASE("partition of unity on the annulus") {
  for (int n : {2, 3}) {
    const Atlas at = Atlas::create(n);
    const PartitionCheck pc = check_partition(at, 4000, 11);
    CHECK(pc.max_sum_defect < 1e-12);
    CHECK(pc.max_total_defect < 1e-12);
    CHECK(pc.min_psi >= 0.0);
    CHECK(pc.max_support_leak == 0.0);
    for (int j = 0; j < at.size(); ++j)
      CHECK((at.rotation(j) * at.center(j) - south(n)).norm() < 1e-14);
  }
  CHECK_THROWS_AS(Atlas::create(2, {0.2}), InputError);
}

TEST_CASE("transition maps") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3}) {
    const Atlas at = Atlas::create(n);
    const double d = at.delta();
    int checked = 0;
    for (int j = 0; j < at.size(); j += (n == 2 ? 1 : 7)) {
      const Eigen::VectorXd y0 = Eigen::VectorXd::Constant(n - 1, 0.05);
      CHECK((at.transition_formula(j, j, y0) - y0).norm() < 1e-15);
      for (int l : at.neighbors(j)) {
        const TransitionBlocks t = at.blocks(l, j);
        CHECK(std::abs(t.d - 1.0) < 4 * d);
        CHECK(std::abs(t.b.norm() - t.c.norm()) < 1e-14);
        CHECK(t.b.norm() < 4 * d);
        const Eigen::MatrixXd B = t.A * t.d - t.b * t.c;
        for (int i = 0; i < 5; ++i) {
          Eigen::VectorXd yp(n - 1);
          for (int k = 0; k < n - 1; ++k) yp[k] = 0.2 * u(g);
          CHECK(B.partialPivLu().solve(yp).norm() <= yp.norm() / t.d * (1 + 1e-14));
          // Points of K_j near the sphere, mapped through both routes.
          Eigen::VectorXd y(n);
          y.head(n - 1) = yp;
          y[n - 1] = 0.1 * (u(g) + 1.0);
          const Eigen::VectorXd x = at.g(j, y);
          if ((x - at.center(l)).norm() >= 2 * d) continue;
          const Eigen::VectorXd z = at.transition_direct(l, j, y);
          CHECK((z.head(n - 1) - at.transition_formula(l, j, yp)).norm() < 1e-12);
          CHECK(std::abs(z[n - 1] - y[n - 1]) < 1e-12);
          ++checked;
        }
        for (int i = 0; i < 5; ++i) {
          Eigen::VectorXd yp(n - 1);
          for (int k = 0; k < n - 1; ++k) yp[k] = u(g);
          const double rad = yp.norm();
          Eigen::VectorXd in = yp * (4 * d * std::abs(u(g)) / rad);
          CHECK((at.transition_extended(l, j, in) - at.transition_formula(l, j, in)).norm() < 1e-13);
          Eigen::VectorXd out = yp * ((8 + 4 * std::abs(u(g))) * d / rad);
          CHECK((at.transition_extended(l, j, out) - at.transition_affine(l, j, out)).norm() == 0.0);
          Eigen::VectorXd any = yp * (12 * d * std::abs(u(g)) / rad);
          const Eigen::VectorXd zz = at.transition_extended(l, j, any);
          const NewtonInverse inv = at.transition_extended_inverse(l, j, zz);
          CHECK(inv.converged);
          CHECK((inv.y - any).norm() < 1e-11);
        }
      }
    }
    CHECK(checked > 20);
    // Non-adjacent charts.
    int far = -1;
    for (int l = 0; l < at.size() && far < 0; ++l)
      if (!at.overlapping(l, 0)) far = l;
    REQUIRE(far >= 0);
    CHECK_THROWS_AS(at.blocks(far, 0), SupportError);
  }
}

TEST_CASE("extended transition jacobian") {
  const Atlas at = Atlas::create(3);
  const int l = at.neighbors(0)[0];
  Eigen::VectorXd y(2);
  y << 0.37, -0.41;
  const Eigen::MatrixXd J = at.transition_extended_jacobian(l, 0, y);
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
    e[k] = h;
    const Eigen::VectorXd fd =
        (at.transition_extended(l, 0, y + e) - at.transition_extended(l, 0, y - e)) / (2 * h);
    CHECK((fd - J.col(k)).norm() < 1e-8);
  }
}

TEST_CASE("cut-off ladder") {
  const CutoffFamily c(0.1, 6);
  for (int k = 0; k < 6; ++k) {
    CHECK(c.rho(k + 1) < c.rho(k));
    CHECK(c.zeta(k, c.rho(k + 1)) == 0.0);
    CHECK(c.zeta(k, c.rho(k)) == 1.0);
    CHECK(c.rho(k, true) <= 1.0 - 0.05);
    for (int i = 0; i <= 200; ++i) {
      const double r = c.rho(k + 1) + (1.0 - c.rho(k + 1)) * i / 200.0;
      // zeta_{k+1} = 1 and every starred zeta = 1 on supp zeta_k.
      CHECK(c.zeta(k + 1 > 6 ? 6 : k + 1, r) == (k + 1 > 6 ? c.zeta(6, r) : 1.0));
      for (int kp = 0; kp <= 6; ++kp) CHECK(c.zeta(kp, r, true) == 1.0);
    }
  }
  CHECK_THROWS_AS(c.zeta(7, 0.9), InputError);
}

TEST_CASE("Gaussian Sobolev norms") {
  // u = exp(-pi |x|^2) has u^ = exp(-pi |xi|^2) in every dimension.
  for (int d : {1, 2}) {
    const BoxField b = BoxField::sample(std::vector<int>(d, 64), std::vector<double>(d, 4.0),
                                        [&](const double* x) {
                                          double r2 = 0;
                                          for (int k = 0; k < d; ++k) r2 += x[k] * x[k];
                                          return std::exp(-M_PI * r2);
                                        });
    const double I0 = std::pow(0.5, d / 2.0);          // int exp(-2 pi xi^2)
    const double I2 = d * I0 / (4.0 * M_PI);           // int |xi|^2 exp(-2 pi xi^2)
    const double I4 = I0 * (3.0 * d + d * (d - 1)) / (16.0 * M_PI * M_PI);
    CHECK(hs_norm(b, 0) == doctest::Approx(std::sqrt(I0)).epsilon(1e-13));
    CHECK(hs_norm(b, 1) == doctest::Approx(std::sqrt(I0 + I2)).epsilon(1e-13));
    CHECK(hs_norm(b, 2) == doctest::Approx(std::sqrt(I0 + 2 * I2 + I4)).epsilon(1e-13));
    CHECK(hs_norm(b, 1, FourierConvention::Angular) ==
          doctest::Approx(std::sqrt(I0 + 4 * M_PI * M_PI * I2)).epsilon(1e-13));
  }
}

TEST_CASE("multiplier norms match a direct transform") {
  std::mt19937_64 g(5);
  std::normal_distribution<double> nd;
  for (int nl : {6, 5}) {
    BoxField b{{4, nl}, {1.5, 0.7}, {}};
    for (int i = 0; i < 4 * nl; ++i) b.values.push_back(nd(g));
    // Odd in xi, so conjugate entries must be weighted separately.
    const auto w = [](const double* xi) { return 1.0 + 0.5 * std::tanh(xi[0] + 2.0 * xi[1]); };
    const auto hs = [](const double* xi) { return std::pow(1.0 + xi[0] * xi[0] + xi[1] * xi[1], 1.5); };
    double direct = 0.0, direct_hs = 0.0, l2 = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < nl; ++q) {
        std::complex<double> F = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < nl; ++j)
            F += b.values[i * nl + j] *
                 std::polar(1.0, -2.0 * M_PI * (double(p * i) / 4 + double(q * j) / nl));
        const double xi[2] = {(p <= 2 ? p : p - 4) / 3.0, (q <= nl / 2 ? q : q - nl) / 1.4};
        direct += w(xi) * std::norm(F);
        direct_hs += hs(xi) * std::norm(F);
      }
    for (double v : b.values) l2 += v * v;
    const double cell = b.spacing(0) * b.spacing(1) / (4.0 * nl);
    CHECK(multiplier_norm(b, w) == doctest::Approx(std::sqrt(direct * cell)).epsilon(1e-12));
    const MultiplierSet set(b.n, b.half_width, {w, hs});
    const auto both = set.norms(b);
    CHECK(both[0] == doctest::Approx(std::sqrt(direct * cell)).epsilon(1e-12));
    CHECK(both[1] == doctest::Approx(std::sqrt(direct_hs * cell)).epsilon(1e-12));
    CHECK(hs_norm(b, 1.5) == doctest::Approx(std::sqrt(direct_hs * cell)).epsilon(1e-12));
    CHECK(hs_norm(b, 0.0) ==
          doctest::Approx(std::sqrt(l2 * b.spacing(0) * b.spacing(1))).epsilon(1e-12));
    CHECK_THROWS_AS(set.norms(BoxField{{4, nl + 1}, {1.5, 0.7}, std::vector<double>(4 * (nl + 1))}),
                    InputError);
  }
}

TEST_CASE("half-space norms") {
  auto w = [](const double* x) {
    return std::exp(-8 * (x[0] - 0.1) * (x[0] - 0.1) - 6 * (x[1] - 0.2) * (x[1] - 0.2)) *
           (1 + x[0] * x[1]);
  };
  const HalfSpaceField h = HalfSpaceField::sample({96}, {3.0}, 3.0, 96, w);
  CHECK(h.support_certificate() < 1e-13);
  for (double r : {0.0, 0.7, 2.0}) {
    // Zero extension: the x_n integral of slice norms, on the same nodes.
    double acc = 0.0;
    for (int j = 0; j < h.n_normal; ++j) acc += std::pow(hs_norm(h.slice(j), r), 2);
    acc *= h.normal_spacing();
    CHECK(std::pow(hsr_norm(h, 0, r), 2) == doctest::Approx(acc).epsilon(1e-12));
  }
  // Nesting against isotropic norms of the same extension.
  for (int s : {0, 1, 2}) {
    const BoxField e = extend(h, s);
    for (double r : {0.5, 1.5}) {
      CHECK(hs_norm(e, s) <= hsr_norm(e, s, r) * (1 + 1e-14));
      CHECK(hsr_norm(e, s, r) <= hs_norm(e, s + r) * (1 + 1e-14));
    }
  }
  // Reflection doubles the L2 mass.
  CHECK(hsr_norm(h, 1, 0) > hsr_norm(h, 0, 0));
  const HalfSpaceField zero = HalfSpaceField::sample({16}, {1.0}, 1.0, 8, [](const double*) { return 0.0; });
  CHECK(hsr_norm(zero, 2, 1.0) == 0.0);
  const HalfSpaceField leak = HalfSpaceField::sample({16}, {1.0}, 1.0, 8, [](const double*) { return 1.0; });
  CHECK_THROWS_AS(hsr_norm(leak, 0, 0.0), SupportError);
}

TEST_CASE("Hestenes extension is C1 across the boundary") {
  const HalfSpaceField h = HalfSpaceField::sample({8}, {1.0}, 4.0, 400, [](const double* x) {
    return std::exp(-x[1] * x[1] - 3 * x[1]) * std::exp(-x[1] * x[1] * x[1]);
  });
  const BoxField e = extend(h, 2);
  const int Nn = h.n_normal;
  const double dx = h.normal_spacing();
  const double* row = e.values.data();
  const double left = (row[Nn] - row[Nn - 1]) / dx, right = (row[Nn + 1] - row[Nn]) / dx;
  CHECK(std::abs(left - right) < 20 * dx);
  const BoxField z = extend(h, 0), r = extend(h, 1);
  CHECK(z.values[Nn - 1] == 0.0);
  CHECK(r.values[Nn - 1] == h.values[1]);
}

TEST_CASE("chart norm") {
  const Atlas at = Atlas::create(2);
  const ChartNormPlan plan(at, 6);
  CHECK(plan.norm(BoundaryField(2, 6), 1.0) == 0.0);
  std::mt19937_64 g(8);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 5; ++i) {
    BoundaryField f(2, 6);
    for (int q = 0; q < f.size(); ++q) f[q] = nd(g);
    const auto v = plan.norms(f, {0.0, 0.5, 1.0, 2.0});
    for (size_t q = 1; q < v.size(); ++q) CHECK(v[q] >= v[q - 1]);
    const double ratio = v[1] / sobolev_norm(f, 0.5);
    CHECK(ratio > 0.1);
    CHECK(ratio < 10.0);
  }
  ChartGridOptions tight;
  tight.box_factor = 0.8;
  CHECK_THROWS_AS(ChartNormPlan(at, 4, tight), SupportError);
}

TEST_CASE("X seminorms") {
  const Atlas at = Atlas::create(2);
  const CutoffFamily cut(at.delta(), 3);
  const BallSpacePtr sp = BallSpace::create(2, 4);
  const BallField zero(sp);
  HalfBoxOptions ho;
  ho.n_tan = 64;
  ho.n_normal = 32;
  CHECK(x_seminorm(zero, at, cut, 1, 1.0, 0, false, ho) == 0.0);
  BoundaryField p(2, 4);
  p[circle_index(2)] = 1.0;
  p[0] = 0.5;
  const BallField u = harmonic_extension(p, sp);
  double prev = 0.0;
  for (double r : {0.0, 0.5, 1.0}) {
    const double x = x_seminorm(u, at, cut, 0, r, 1, false, ho);
    CHECK(x >= prev);
    prev = x;
  }
  CHECK(x_seminorm(u, at, cut, 0, 0.0, 1, true, ho) > x_seminorm(u, at, cut, 0, 0.0, 1, false, ho));
}

TEST_CASE("chart sampler reproduces the direct pieces") {
  const Atlas at = Atlas::create(2);
  const CutoffFamily cut(at.delta(), 3);
  const BallSpacePtr sp = BallSpace::create(2, 4);
  BoundaryField p(2, 4);
  p[circle_index(3)] = 1.0;
  p[circle_index(-1)] = 0.3;
  const BallField u = harmonic_extension(p, sp);
  HalfBoxOptions ho;
  ho.n_tan = 32;
  ho.n_normal = 16;
  const ChartSampler cs(at, ho);
  REQUIRE(cs.size() == at.size());
  for (int j : {0, at.size() / 2}) {
    const HalfSpaceField direct = chart_piece(u, at, j, ho);
    CHECK(cs.piece(u, j).values == direct.values);
    const HalfSpaceField w = apply_cutoff(direct, cut, 2, false);
    CHECK(w.values == seminorm_piece(u, at, cut, j, 2, false, ho).values);
  }
}

TEST_CASE("extended transitions invert on every overlapping pair") {
  for (int dim : {2, 3}) {
    const Atlas at = Atlas::create(dim);
    const InverseEvidence ev = check_transition_inverses(at);
    CHECK(ev.pairs > 0);
    CHECK(ev.failures == 0);
    CHECK(ev.max_residual <= 1e-12);
  }
}
