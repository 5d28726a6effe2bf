#include "dnsphere/dn/solvers.hpp"

#include <cmath>

#include "dnsphere/error.hpp"

namespace dnsphere {

namespace {

double h1_from_quad(const BallSpace& sp, const Eigen::MatrixXd& U, const QuadVector& g) {
  QuadScalar acc = sp.values_at_quad(U).array().square().matrix();
  for (const auto& c : g) acc += c.cwiseProduct(c);
  return std::sqrt(std::max(0.0, sp.integrate(acc)));
}

QuadVector negate(QuadVector v) {
  for (auto& c : v) c = -c;
  return v;
}

}  // namespace

double fit_geometric_ratio(const std::vector<double>& t) {
  if (t.size() < 2 || !(t[0] > 0)) return 0.0;
  std::vector<double> xs, ys;
  for (size_t m = 1; m < t.size(); ++m)
    if (t[m] > 1e-13 * t[0]) {
      xs.push_back(static_cast<double>(m));
      ys.push_back(std::log(t[m]));
    }
  if (xs.empty()) return 0.0;
  if (xs.size() == 1) return std::pow(std::exp(ys[0]) / t[0], 1.0 / xs[0]);
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::exp(sxy / sxx);
}

SeriesSolution series_solve(const ShapeState& shape, const BoundaryField& psi,
                            const SeriesOptions& opt) {
  if (opt.M < 0) throw InputError("series_solve: negative M");
  const BallSpace& sp = *shape.space;
  SeriesSolution sol;
  BallField u0 = harmonic_extension(psi, shape.space);
  std::vector<QuadVector> grads{sp.gradient_at_quad(u0.nodal())};
  sol.terms_h1.push_back(h1_from_quad(sp, u0.nodal(), grads[0]));
  sol.u_total = u0;
  if (opt.keep_terms) sol.terms.push_back(u0);
  const double t0 = sol.terms_h1[0];
  bool reached = t0 == 0.0;
  for (int m = 1; m <= opt.M && !reached; ++m) {
    QuadVector g(sp.dim(), QuadScalar::Zero(sp.n_angular(), sp.n_quad()));
    for (int k = 0; k < m; ++k) {
      const QuadVector t = apply_P_m(shape, m - k, grads[k]);
      for (int i = 0; i < sp.dim(); ++i) g[i] += t[i];
    }
    BallField um(shape.space, sp.solve_div(negate(std::move(g))));
    grads.push_back(sp.gradient_at_quad(um.nodal()));
    const double tm = h1_from_quad(sp, um.nodal(), grads.back());
    sol.terms_h1.push_back(tm);
    sol.u_total += um;
    if (opt.keep_terms) sol.terms.push_back(um);
    sol.M_used = m;
    if (tm < opt.tol * t0) reached = true;
  }
  const auto& t = sol.terms_h1;
  const size_t N = t.size();
  sol.diverging = N >= 4 && t[N - 1] >= t[N - 2] && t[N - 2] >= t[N - 3] &&
                  t[N - 1] > opt.tol * t0;
  sol.converged = reached || !sol.diverging;
  sol.fitted_ratio = fit_geometric_ratio(t);
  return sol;
}

double weak_residual(const ShapeState& shape, const BallField& u) {
  const BallSpace& sp = *shape.space;
  const QuadVector g = sp.gradient_at_quad(u.nodal());
  const Eigen::MatrixXd b = sp.load(apply_P(shape, g));
  const double nu = h1_from_quad(sp, u.nodal(), g);
  return nu > 0 ? b.cwiseAbs().maxCoeff() / nu : b.cwiseAbs().maxCoeff();
}

namespace {

// Picard iteration for w = base + S((I - P) grad w - F).
BallField picard(const ShapeState& shape, const BallField& base, const QuadVector* F,
                 const FixedPointOptions& opt, int& iters) {
  const BallSpace& sp = *shape.space;
  BallField w = base;
  double prev = INFINITY;
  int growth = 0;
  for (int it = 1; it <= opt.iters; ++it) {
    QuadVector rhs = negate(apply_P_minus_I(shape, sp.gradient_at_quad(w.nodal())));
    if (F)
      for (int i = 0; i < sp.dim(); ++i) rhs[i] -= (*F)[i];
    BallField next = base;
    next.nodal() += sp.solve_div(rhs);
    const BallField diff = next - w;
    const double dn = h1_norm(diff), nn = h1_norm(next);
    w = std::move(next);
    iters = it;
    if (!std::isfinite(dn)) break;
    if (dn <= opt.tol * nn || dn == 0.0) return w;
    growth = dn >= prev ? growth + 1 : 0;
    if (growth >= 5) break;
    prev = dn;
  }
  throw NonContractionError("fixed-point iteration did not contract within " +
                            std::to_string(opt.iters) + " iterations");
}

}  // namespace

FixedPointResult fixed_point_solve(const ShapeState& shape, const BoundaryField& psi,
                                   const FixedPointOptions& opt) {
  FixedPointResult r;
  r.u = picard(shape, harmonic_extension(psi, shape.space), nullptr, opt, r.iterations);
  r.weak_residual = weak_residual(shape, r.u);
  return r;
}

BallField solve_linearized(const ShapeState& shape, const QuadVector& F,
                           const FixedPointOptions& opt) {
  int it = 0;
  return picard(shape, BallField(shape.space), &F, opt, it);
}

}  // namespace dnsphere
