// One PASS/FAIL line per acceptance criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dnsphere/charts/chart_norms.hpp"
#include "dnsphere/charts/witness.hpp"
#include "dnsphere/dn/scans.hpp"
#include "dnsphere/error.hpp"
#include "dnsphere/harness/commands.hpp"
#include "dnsphere/harness/random_fields.hpp"
#include "dnsphere/oracles/oracles.hpp"
#include "dnsphere/spectral/modes.hpp"
#include "dnsphere/spectral/quadrature.hpp"

using namespace dnsphere;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(const BoundaryField& a, const BoundaryField& b) {
  return sobolev_norm(a - b.resized(a.L()), 0) / sobolev_norm(b, 0);
}

BoundaryField mode(int dim, int L, int i) { return single_mode(dim, L, i); }

// Multiplies every coefficient of psi by f(degree).
BoundaryField degree_multiplier(const BoundaryField& psi, const std::function<double(int)>& f) {
  BoundaryField out = psi;
  for (int i = 0; i < out.size(); ++i) out[i] *= f(mode_degree(psi.dim(), i));
  return out;
}

Outcome unit_sphere() {
  double worst = 0;
  for (int dim : {2, 3}) {
    const int L = 16;
    const auto sp = BallSpace::create(dim, L);
    const ShapeState s = build_shape(BoundaryField(dim, L), sp);
    for (int i = 0; i < mode_count(dim, 8); ++i) {
      const BoundaryField psi = mode(dim, L, i);
      const BoundaryField want = degree_multiplier(psi, [](int d) { return double(d); });
      worst = std::max(worst, sobolev_norm(dn_apply(s, psi) - want, 0));
    }
  }
  return {worst <= 1e-10, "max L2 error " + g(worst) + " over deg <= 8, n = 2, 3"};
}

Outcome scaled_sphere() {
  const double a = 0.05;
  double worst = 0, worst_oracle = 0;
  for (int dim : {2, 3}) {
    const int L = 8;
    const auto sp = BallSpace::create(dim, L);
    const ShapeState s = build_shape(constant_field(dim, L, a), sp);
    DnOptions o;
    o.series.M = 20;
    o.series.tol = 1e-16;
    for (int i = 0; i < mode_count(dim, L); ++i) {
      const BoundaryField psi = mode(dim, L, i);
      const BoundaryField G = dn_apply(s, psi, o);
      const BoundaryField want = degree_multiplier(psi, [&](int d) { return d / (1 + a); });
      worst = std::max(worst, sobolev_norm(G - want, 0));
      worst_oracle = std::max(worst_oracle, sobolev_norm(scaled_sphere_oracle(a, psi) - want, 0));
    }
  }
  return {worst <= 1e-8 && worst_oracle <= 1e-14,
          "max relative error " + g(worst) + " over every mode of degree <= 8, n = 2, 3"};
}

Outcome translated_ball() {
  std::string detail;
  bool pass = true;
  struct Case {
    int dim, L;
    double tol;
  };
  for (const Case c : {Case{2, 64, 1e-6}, Case{3, 24, 1e-5}}) {
    auto rng = sample_rng(31, c.dim, 0);
    const BoundaryField psi = random_boundary_field(c.dim, 6, 1.0, 0.0, rng, false);
    const TranslatedBallResult t = translated_ball_oracle(0.05, psi, c.L);
    DnOptions o;
    o.series.M = 16;
    o.series.tol = 1e-16;
    const double e = rel(dn_apply(t.h, psi.resized(c.L), o), t.G);
    pass = pass && e <= c.tol;
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(c.dim) + " L=" +
              std::to_string(c.L) + " rel error " + g(e);
  }
  return {pass, detail};
}

Outcome triple_agreement() {
  const int dim = 2, L = 12;
  const auto sp = BallSpace::create(dim, L);
  DnOptions o;
  o.space = sp;
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    auto rh = sample_rng(41, i, 0), rp = sample_rng(41, i, 2);
    // s0 = 1 > (n - 1)/2
    const BoundaryField h = random_boundary_field(dim, 6, 0.03, 2.0, rh);
    const BoundaryField psi = random_boundary_field(dim, 8, 1.0, 0.0, rp, false);
    const ShapeState s = build_shape(h, sp);
    const BallField us = series_solve(s, psi, {.M = 60, .tol = 1e-16}).u_total;
    const BallField uf = fixed_point_solve(s, psi, {.iters = 300, .tol = 1e-15}).u;
    const BallField ud = direct_galerkin_oracle(h, psi, o).u;
    worst = std::max({worst, h1_norm(us - uf), h1_norm(us - ud), h1_norm(uf - ud)});
  }
  return {worst <= 1e-8, "max pairwise H1 difference " + g(worst) + " over 10 samples"};
}

Outcome analyticity_radius() {
  BoundaryField hd = cosine_field(2, 1.0);
  auto rp = sample_rng(51, 0, 2);
  const BoundaryField psi = random_boundary_field(2, 6, 1.0, 0.0, rp, false);
  RadiusScanOptions o;
  o.dn.L = 24;
  o.M = 16;
  o.tol_M = 1e-10;
  o.s_grid = {1.0, 2.0, 4.0};
  const RadiusScan r = radius_scan(hd, {0.04, 0.02}, psi, o);
  double q04 = 0, q02 = 0;
  for (const auto& row : r.rows)
    if (row.m == 0) (row.amplitude == 0.04 ? q04 : q02) = row.fitted_ratio;
  const double halving = q02 / q04;
  bool pass = std::abs(halving - 0.5) <= 0.1;
  std::string ms;
  for (double a : {0.04, 0.02}) {
    int lo = 1 << 20, hi = -1;
    for (const auto& t : r.truncation)
      if (t.amplitude == a) {
        lo = std::min(lo, t.M_s);
        hi = std::max(hi, t.M_s);
        ms += std::to_string(t.M_s) + " ";
      }
    pass = pass && lo >= 0 && hi - lo <= 2;
  }
  return {pass, "ratio(0.04) " + g(q04) + ", ratio(0.02) " + g(q02) + ", quotient " + g(halving) +
                    "; M(s) for s = 1, 2, 4 at a = 0.04 then 0.02: " + ms};
}

Outcome derivatives() {
  RunConfig c;
  c.command = "derivative_check";
  c.dim = 2;
  c.L = 12;
  c.h_L = 5;
  c.psi_L = 6;
  c.s0 = 1.0;
  c.samples = 5;
  c.seed = 61;
  c.method = "fixed_point";
  const CommandResult r = run_command(c);
  double lo = INFINITY, hi = 0, asym = 0;
  for (const auto& row : r.tables[0].rows) {
    const double q = std::get<double>(row[4]);
    if (std::isnan(q)) continue;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  for (const auto& row : r.tables[1].rows) asym = std::max(asym, std::get<double>(row[2]));
  return {r.exit_code == kExitOk && lo >= 30 && hi <= 300 && asym <= 1e-10,
          "FD error ratios in [" + g(lo) + ", " + g(hi) + "] (first and second order), G'' asymmetry " +
              g(asym)};
}

Outcome structural() {
  double gconst = 0, asym = 0, minpos = INFINITY, green = 0;
  for (int dim : {2, 3}) {
    const int L = 10;
    const auto sp = BallSpace::create(dim, L);
    DnOptions o;
    o.series = {.M = 40, .tol = 1e-16};
    // h = 0: the weighted form is the Dirichlet energy sum deg c1 c2
    {
      auto r = sample_rng(71, 100, dim);
      const BoundaryField p1 = random_boundary_field(dim, 6, 1.0, 0.0, r, false);
      const BoundaryField p2 = random_boundary_field(dim, 6, 1.0, 0.0, r, false);
      double energy = 0;
      for (int i = 0; i < p1.size(); ++i) energy += mode_degree(dim, i) * p1[i] * p2[i];
      const ShapeState s0 = build_shape(BoundaryField(dim, 6), sp);
      green = std::max(green, std::abs(dn_bilinear_form(s0, p1, p2, o) - energy));
    }
    for (int i = 0; i < 10; ++i) {
      auto rh = sample_rng(71, i, dim), rp = sample_rng(71, i, 10 + dim);
      const BoundaryField h = random_boundary_field(dim, 6, 0.04, dim == 2 ? 2.0 : 2.5, rh);
      const BoundaryField p1 = random_boundary_field(dim, 8, 1.0, 0.0, rp, false);
      const BoundaryField p2 = random_boundary_field(dim, 8, 1.0, 0.0, rp, false);
      const ShapeState s = build_shape(h, sp);
      gconst = std::max(gconst, sobolev_norm(dn_apply(s, constant_field(dim, L, 1.0), o), 0));
      asym = std::max(asym, std::abs(dn_bilinear_form(s, p1, p2, o) - dn_bilinear_form(s, p2, p1, o)));
      minpos = std::min(minpos, dn_bilinear_form(s, p1, p1, o));
    }
  }
  return {gconst <= 1e-10 && asym <= 1e-8 && minpos >= -1e-10 && green <= 1e-12,
          "|G(h)1| " + g(gconst) + ", form asymmetry " + g(asym) + ", min form " + g(minpos) +
              ", Green identity at h = 0 " + g(green)};
}

Outcome tame() {
  const int dim = 3;
  std::vector<TameSample> smp;
  std::mt19937_64 amp_rng(81);
  std::uniform_real_distribution<double> u01;
  for (int i = 0; i < 20; ++i) {
    auto rh = sample_rng(81, i, 0), rp = sample_rng(81, i, 2);
    const double amp = 0.05 * (0.2 + 0.8 * u01(amp_rng));
    smp.push_back({random_boundary_field(dim, 4, amp, 2.5, rh),
                   random_boundary_field(dim, 6, 1.0, 0.0, rp, false)});
  }
  DnOptions o;
  o.L = 10;
  o.series = {.M = 30, .tol = 1e-14};
  const TameReport r = tame_scan(smp, {0.5, 1.0, 2.0, 3.0, 4.0}, 1.5, o);
  double lo = INFINITY, hi = 0;
  int viol = 0;
  std::string cs;
  for (const auto& f : r.fits) {
    lo = std::min(lo, f.C0);
    hi = std::max(hi, f.C0);
    viol += f.violations;
    cs += g(f.Cs) + " ";
  }
  return {hi <= 2 * lo && viol == 0,
          "C0 in [" + g(lo) + ", " + g(hi) + "], Cs by s: " + cs + "violations " + std::to_string(viol)};
}

Outcome charts() {
  double fg = 0, gf = 0, tr = 0, rot = 0, cb = 0, lam = 0, part = 0;
  std::mt19937_64 rng(91);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01;
  bool rot_ok = true;
  int pairs = 0, newton_fail = 0, newton_it = 0;
  double newton_res = 0;
  for (int dim : {2, 3}) {
    const Atlas at = Atlas::create(dim);
    const double delta = at.delta();
    for (int j = 0; j < at.size(); ++j) {
      for (int t = 0; t < 4; ++t) {
        Eigen::VectorXd y(dim);
        for (int k = 0; k < dim - 1; ++k) y[k] = n01(rng);
        y.head(dim - 1) *= at.r_delta() * u01(rng) / y.head(dim - 1).norm();
        y[dim - 1] = delta * u01(rng);
        fg = std::max(fg, (at.f(j, at.g(j, y)) - y).norm());
        Eigen::VectorXd x = at.center(j);
        for (int k = 0; k < dim; ++k) x[k] += 2 * delta * n01(rng) / std::sqrt(dim);
        x *= (1 - delta * u01(rng)) / x.norm();
        gf = std::max(gf, (at.g(j, at.f(j, x)) - x).norm());
      }
      for (int l = 0; l < at.size(); ++l) {
        if (l == j || !at.overlapping(l, j)) continue;
        ++pairs;
        const TransitionBlocks b = at.blocks(l, j);
        rot_ok = rot_ok && std::abs(b.d - 1) < 4 * delta && b.b.norm() < 4 * delta;
        rot = std::max(rot, std::abs(b.d - 1));
        cb = std::max(cb, std::abs(b.c.norm() - b.b.norm()));
        // |(A d - b c)^{-1} y'| <= |y'| / d  iff  sigma_min(A d - b c) >= d
        const Eigen::MatrixXd Q = b.A * b.d - b.b * b.c;
        const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(Q).singularValues().minCoeff();
        lam = std::max(lam, b.d - smin);
        rot_ok = rot_ok && smin >= b.d * (1 - 1e-14);
        // points of the overlap: between the two centres on the sphere
        for (int t = 0; t < 3; ++t) {
          Eigen::VectorXd x = at.center(j) + u01(rng) * (at.center(l) - at.center(j));
          x.normalize();
          Eigen::VectorXd yp = at.f(j, x).head(dim - 1);
          Eigen::VectorXd y0 = Eigen::VectorXd::Zero(dim);
          y0.head(dim - 1) = yp;
          tr = std::max(tr, (at.transition_formula(l, j, yp) - at.transition_direct(l, j, y0).head(dim - 1)).norm());
        }
      }
    }
    const InverseEvidence ev = check_transition_inverses(at);
    newton_fail += ev.failures;
    newton_res = std::max(newton_res, ev.max_residual);
    newton_it = std::max(newton_it, ev.max_iterations);
    // partition of unity on the annulus 1 - delta <= |x| <= 1
    for (int i = 0; i < 10000; ++i) {
      Eigen::VectorXd x(dim);
      for (int k = 0; k < dim; ++k) x[k] = n01(rng);
      x *= (1 - delta * u01(rng)) / x.norm();
      double sum = 0;
      for (int j = 0; j < at.size(); ++j) sum += at.psi(j, x);
      part = std::max(part, std::abs(sum - 1));
    }
  }
  const bool pass = fg <= 1e-13 && gf <= 1e-13 && tr <= 1e-12 && rot_ok && cb <= 1e-13 && part <= 1e-12 &&
                    newton_fail == 0;
  return {pass, "f.g " + g(fg) + ", g.f " + g(gf) + ", transitions " + g(tr) + " over " +
                    std::to_string(pairs) + " pairs, max|d-1| " + g(rot) + ", ||c|-|b|| " + g(cb) +
                    ", partition " + g(part) + "; extended-transition Newton inverses: " +
                    std::to_string(newton_fail) + " failures, residual <= " + g(newton_res) + ", <= " +
                    std::to_string(newton_it) + " iterations"};
}

// Gaussian coefficients under an envelope exp(-(deg - k0)^2 / 2) with k0
// a uniform degree in [0, L], so every part of the band is visited.
BoundaryField random_centered_field(int dim, int L, std::mt19937_64& r) {
  std::normal_distribution<double> n01;
  const int k0 = std::uniform_int_distribution<int>(0, L)(r);
  BoundaryField f(dim, L);
  for (int i = 0; i < f.size(); ++i) {
    const double d = mode_degree(dim, i) - k0;
    f[i] = n01(r) * std::exp(-d * d / 2);
  }
  return f;
}

// Coordinate search on the coefficients; returns the smallest value found.
double compass_minimize(BoundaryField& x, const std::function<double(const BoundaryField&)>& fn,
                        int budget) {
  double fx = fn(x), step = 0.5 / std::sqrt(double(x.size()));
  int evals = 1;
  while (evals < budget && step > 1e-4) {
    bool moved = false;
    for (int i = 0; i < x.size() && evals < budget; ++i)
      for (double dir : {1.0, -1.0}) {
        BoundaryField y = x;
        y[i] += dir * step;
        const double fy = fn(y);
        ++evals;
        if (fy < fx) {
          x = y;
          fx = fy;
          moved = true;
          break;
        }
      }
    if (!moved) step *= 0.5;
  }
  return fx;
}

// Modulated Gaussian on R^n with analytic gradient.
struct Packet {
  int n;
  std::vector<double> c, xi;
  double sigma, phase;
  double value(const double* x) const {
    double th = phase, r2 = 0;
    for (int k = 0; k < n; ++k) {
      th += 2 * M_PI * xi[k] * x[k];
      r2 += (x[k] - c[k]) * (x[k] - c[k]);
    }
    return std::cos(th) * std::exp(-r2 / (2 * sigma * sigma));
  }
  double deriv(int k, const double* x) const {
    double th = phase, r2 = 0;
    for (int i = 0; i < n; ++i) {
      th += 2 * M_PI * xi[i] * x[i];
      r2 += (x[i] - c[i]) * (x[i] - c[i]);
    }
    const double G = std::exp(-r2 / (2 * sigma * sigma));
    return G * (-2 * M_PI * xi[k] * std::sin(th) - (x[k] - c[k]) / (sigma * sigma) * std::cos(th));
  }
};

Outcome norm_machinery() {
  std::string detail;
  bool pass = true;
  // chart vs spectral norms on S^1: extremes over the first 50 and all 100
  // random fields, each refined by compass search from its best field
  {
    const Atlas at = Atlas::create(2);
    const int L = 16;
    const ChartNormPlan plan(at, L);
    const std::vector<double> S{0.0, 1.0, 2.0};
    std::vector<BoundaryField> fields;
    for (int i = 0; i < 100; ++i) {
      auto r = sample_rng(101, i, 3);
      fields.push_back(random_centered_field(2, L, r));
    }
    for (int k = 0; k < 3; ++k) {
      auto ratio = [&](const BoundaryField& f) { return plan.norm(f, S[k]) / sobolev_norm(f, S[k]); };
      double ext[2][2];  // [set][min, max]
      for (int set = 0; set < 2; ++set) {
        const int N = set == 0 ? 50 : 100;
        for (int sign : {1, -1}) {
          // minimize sign * ratio
          int best = 0;
          double bv = INFINITY;
          for (int i = 0; i < N; ++i) {
            const double v = sign * ratio(fields[i]);
            if (v < bv) {
              bv = v;
              best = i;
            }
          }
          BoundaryField x = fields[best];
          x *= 1.0 / sobolev_norm(x, 0);
          bv = compass_minimize(x, [&](const BoundaryField& f) { return sign * ratio(f); }, 4000);
          ext[set][sign == 1 ? 0 : 1] = sign * bv;
        }
      }
      const bool st = std::abs(ext[1][0] / ext[0][0] - 1) <= 0.1 && std::abs(ext[1][1] / ext[0][1] - 1) <= 0.1;
      pass = pass && st && ext[1][0] > 0 && std::isfinite(ext[1][1]);
      detail += "s=" + g(S[k]) + " ratio [" + g(ext[0][0]) + ", " + g(ext[0][1]) + "]/[" + g(ext[1][0]) +
                ", " + g(ext[1][1]) + "]; ";
    }
  }
  // slice identity and the H^{1,0} constants on the half plane and half space
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> u01;
  double slice = 0, slice_gl = 0, clo = INFINITY, chi = 0;
  for (int n : {2, 3}) {
    const int Nt = n == 2 ? 256 : 64, Nn = n == 2 ? 256 : 64;
    const double a = 4.0, H = 4.0;
    for (int t = 0; t < 6; ++t) {
      Packet p{n, std::vector<double>(n), std::vector<double>(n), 0.2 + 0.15 * u01(rng), 2 * M_PI * u01(rng)};
      for (int k = 0; k < n; ++k) {
        p.c[k] = k + 1 < n ? u01(rng) - 0.5 : 1.2 * u01(rng);
        p.xi[k] = 1.5 * (u01(rng) - 0.5);
      }
      const std::vector<int> nt(n - 1, Nt);
      const std::vector<double> hw(n - 1, a);
      const HalfSpaceField w = HalfSpaceField::sample(nt, hw, H, Nn, [&](const double* x) { return p.value(x); });
      for (double r : {0.0, 1.0, 2.0}) {
        const double lhs = std::pow(hsr_norm(w, 0, r), 2);
        double rect = 0;
        for (int j = 0; j < Nn; ++j) rect += std::pow(hs_norm(w.slice(j), r), 2);
        rect *= w.normal_spacing();
        slice = std::max(slice, std::abs(lhs - rect) / lhs);
        // Gauss-Legendre in x_n: the continuous integral
        const Rule1D gl = gauss_legendre(80, 0.0, H);
        double cont = 0;
        for (int q = 0; q < gl.nodes.size(); ++q) {
          const double xn = gl.nodes[q];
          const BoxField sl = BoxField::sample(nt, hw, [&](const double* xt) {
            double x[3];
            for (int k = 0; k < n - 1; ++k) x[k] = xt[k];
            x[n - 1] = xn;
            return p.value(x);
          });
          cont += gl.weights[q] * std::pow(hs_norm(sl, r), 2);
        }
        slice_gl = std::max(slice_gl, std::abs(lhs - cont) / cont);
      }
      // sum_{|alpha| <= 1} ||d^alpha w||^2 over x_n > 0 by Gauss-Legendre
      const Rule1D gt = gauss_legendre(n == 2 ? 160 : 60, -a, a), gn = gauss_legendre(n == 2 ? 160 : 60, 0.0, H);
      double sum = 0;
      const int T = static_cast<int>(gt.nodes.size());
      const int cells = n == 2 ? T : T * T;
      for (int cell = 0; cell < cells; ++cell)
        for (int q = 0; q < gn.nodes.size(); ++q) {
          double x[3];
          double wt = gn.weights[q];
          x[0] = gt.nodes[cell % T];
          wt *= gt.weights[cell % T];
          if (n == 3) {
            x[1] = gt.nodes[cell / T];
            wt *= gt.weights[cell / T];
          }
          x[n - 1] = gn.nodes[q];
          double v = std::pow(p.value(x), 2);
          for (int k = 0; k < n; ++k) v += std::pow(p.deriv(k, x), 2);
          sum += wt * v;
        }
      const double q = sum / std::pow(hsr_norm(w, 1, 0.0), 2);
      clo = std::min(clo, q);
      chi = std::max(chi, q);
    }
  }
  pass = pass && slice <= 1e-8 && clo >= 0.5 && chi <= 4 * M_PI * M_PI;
  detail += "slice identity " + g(slice) + " (Gauss-Legendre in x_n: " + g(slice_gl) +
            "); sum ||d^a w||^2 / ||w||_{H^{1,0}}^2 in [" + g(clo) + ", " + g(chi) + "]";
  return {pass, detail};
}

Outcome witness() {
  bool pass = true;
  int rows = 0, failed = 0;
  std::string bad;
  const auto t0 = std::chrono::steady_clock::now();
  for (int dim : {2, 3}) {
    WitnessOptions o;
    o.dim = dim;
    for (const auto& r : inequality_witness_suite(o)) {
      ++rows;
      if (!r.pass) {
        ++failed;
        bad += " " + r.inequality + "(n=" + std::to_string(dim) + ", " + r.params + ")";
      }
      pass = pass && r.pass;
    }
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (sec >= 300.0) {
    pass = false;
    bad += " runtime over 5 min";
  }
  return {pass, std::to_string(rows) + " rows over n = 2, 3, " + std::to_string(failed) + " failed" + bad};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> all{
      {"unperturbed sphere", unit_sphere},
      {"scaled sphere", scaled_sphere},
      {"translated ball", translated_ball},
      {"series / fixed point / direct Galerkin agreement", triple_agreement},
      {"analyticity radius scaling", analyticity_radius},
      {"derivative consistency", derivatives},
      {"structural invariants", structural},
      {"tame estimate scan", tame},
      {"chart machinery", charts},
      {"norm machinery", norm_machinery},
      {"inequality witness suite", witness},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (size_t k = 0; k < all.size(); ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), int(k + 1)) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, all[k].name, o.detail.c_str(), sec);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
