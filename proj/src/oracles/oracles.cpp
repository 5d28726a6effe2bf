#include "dnsphere/oracles/oracles.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/angular_transform.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

BoundaryField scaled_sphere_oracle(double a, const BoundaryField& psi) {
  if (!(a > -1.0)) throw InputError("scaled_sphere_oracle: radius factor must exceed -1");
  BoundaryField G = psi;
  for (int i = 0; i < G.size(); ++i) G[i] *= mode_degree(psi.dim(), i) / (1.0 + a);
  return G;
}

double translated_ball_elevation(double eps, const Eigen::VectorXd& x) {
  const double xc = eps * x[0];
  return xc + std::sqrt(1.0 - eps * eps + xc * xc) - 1.0;
}

TranslatedBallResult translated_ball_oracle(double eps, const BoundaryField& psi, int L_out,
                                            const TranslatedBallOptions& opt) {
  if (!(std::abs(eps) < 0.5)) throw InputError("translated_ball_oracle: need |eps| < 1/2");
  const int dim = psi.dim();
  TranslatedBallResult res;
  const int Lh = opt.L_h >= 0 ? opt.L_h : L_out;
  res.h = project_function(dim, Lh, [&](const Eigen::VectorXd& x) {
    return translated_ball_elevation(eps, x);
  }, Lh + 16);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
  c[0] = eps;
  // Boundary data in centred coordinates: phi(w) = psi((c + w)/|c + w|).
  auto phi = [&](const Eigen::VectorXd& w) { return eval(psi, (c + w).normalized()); };

  int Le = opt.L_expand > 0 ? opt.L_expand : L_out + 32;
  BoundaryField b;
  for (int attempt = 0;; ++attempt) {
    b = project_function(dim, Le, phi);
    // Residual on an independent, finer grid.
    const AngularGrid check = AngularGrid::exact_for(dim, 2 * Le + 9);
    const Eigen::VectorXd v = synth(b, check);
    double err = 0, ref = 0;
    for (int k = 0; k < check.size(); ++k) {
      const double e = phi(check.points().col(k));
      err = std::max(err, std::abs(v[k] - e));
      ref = std::max(ref, std::abs(e));
    }
    res.expansion_residual = ref > 0 ? err / ref : err;
    if (res.expansion_residual <= opt.residual_tol) break;
    if (attempt >= opt.max_refinements)
      throw ResolutionError("translated_ball_oracle: expansion residual " +
                            std::to_string(res.expansion_residual) + " needs refinement");
    Le *= 2;
  }
  res.L_expand = Le;
  BoundaryField db = b;
  for (int i = 0; i < db.size(); ++i) db[i] *= mode_degree(dim, i);

  // Normal derivative sum deg b Y(w) at w = x (1 + h(x)) - c.
  const AngularGrid grid = AngularGrid::for_degree(dim, L_out + 8);
  Eigen::VectorXd G(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXd x = grid.points().col(k);
    const Eigen::VectorXd w = x * (1.0 + translated_ball_elevation(eps, x)) - c;
    res.max_boundary_defect = std::max(res.max_boundary_defect, std::abs(w.norm() - 1.0));
    G[k] = eval(db, w.normalized());
  }
  res.G = analyze(G, grid, L_out);
  return res;
}

DirectGalerkinResult direct_galerkin_oracle(const BoundaryField& h, const BoundaryField& psi,
                                            const DnOptions& opt) {
  const BallSpacePtr spp = resolve_space(h.dim(), std::max(h.L(), psi.L()), opt);
  const BallSpace& sp = *spp;
  const ShapeState s = build_shape(h, spp, opt.M_cap);
  const int dim = sp.dim(), M = sp.modes();

  std::vector<int> offset(M + 1, 0);
  for (int i = 0; i < M; ++i) offset[i + 1] = offset[i] + sp.basis_size(sp.degree_of(i));
  const int N = offset[M];
  auto flatten = [&](const Eigen::MatrixXd& b) {
    Eigen::VectorXd v(N);
    for (int i = 0; i < M; ++i) {
      const int P = offset[i + 1] - offset[i];
      v.segment(offset[i], P) = b.row(i).head(P).transpose();
    }
    return v;
  };

  const AngularTransform& T = sp.transform();
  const Eigen::MatrixXd Y = T.synth(Eigen::MatrixXd::Identity(M, M));
  const auto dY = T.synth_tangential(Eigen::MatrixXd::Identity(M, M));
  const Eigen::VectorXd rinv = sp.quad_radii().cwiseInverse();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < M; ++j) {
    const int d = sp.degree_of(j);
    const Eigen::MatrixXd& phi = sp.basis_quad(d);
    const Eigen::MatrixXd& dphi = sp.basis_quad_dr(d);
    for (int q = 0; q < sp.basis_size(d); ++q) {
      QuadVector g(dim);
      const Eigen::RowVectorXd radial = dphi.col(q).transpose();
      const Eigen::RowVectorXd tang = phi.col(q).cwiseProduct(rinv).transpose();
      for (int k = 0; k < dim; ++k)
        g[k] = (Y.col(j).cwiseProduct(sp.quad_grid().points().row(k).transpose())) * radial +
               dY[k].col(j) * tang;
      const int col = offset[j] + q;
      A.col(col) = flatten(sp.load(apply_P_minus_I(s, g)));
      // identity part: the exact per-degree stiffness
      A.block(offset[j], col, sp.basis_size(d), 1) += sp.stiffness(d).col(q);
    }
  }
  const BallField u0 = harmonic_extension(psi.resized(sp.L()), spp);
  const Eigen::VectorXd rhs = -flatten(sp.load(apply_P_minus_I(s, sp.gradient_at_quad(u0.nodal()))));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) throw ConvergenceError("direct Galerkin solve failed");
  Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(M, sp.n_radial() - 1);
  for (int i = 0; i < M; ++i) {
    const int P = offset[i + 1] - offset[i];
    coef.row(i).head(P) = x.segment(offset[i], P).transpose();
  }
  DirectGalerkinResult r;
  r.u = u0;
  r.u.nodal() += sp.coefficients_to_nodes(coef);
  r.G = assemble_G(s, r.u, psi);
  r.unknowns = N;
  return r;
}

std::vector<std::string> oracle_names() {
  return {"scaled_sphere", "translated_ball", "direct_galerkin"};
}

}  // namespace dnsphere
