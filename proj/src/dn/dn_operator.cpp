#include "dnsphere/dn/dn_operator.hpp"

#include <cmath>

#include "dnsphere/dn/pointwise.hpp"
#include "dnsphere/error.hpp"

namespace dnsphere {

BallSpacePtr resolve_space(int dim, int L_default, const DnOptions& opt) {
  if (opt.space) {
    if (opt.space->dim() != dim) throw InputError("space dimension mismatch");
    return opt.space;
  }
  return BallSpace::create(dim, opt.L >= 0 ? opt.L : L_default, opt.ball);
}

Eigen::VectorXd assemble_G_samples(const ShapeState& s, const BallField& u,
                                   const BoundaryField& psi) {
  const BallSpace& sp = *s.space;
  const AngularTransform& T = sp.transform();
  const int n = sp.dim(), Na = sp.n_angular();
  const Eigen::VectorXd ur = T.synth(radial_trace(u).coeffs());
  const auto gp = T.synth_tangential(psi.resized(sp.L()).coeffs());
  Eigen::VectorXd G(Na);
  double gh[3], gpp[3];
  for (int a = 0; a < Na; ++a) {
    const double oph = 1.0 + s.h_b[a];
    if (std::abs(oph) < 1e-12 || std::abs(oph + s.xg_b[a]) < 1e-12)
      throw GeometryDegenerateError("vanishing denominator in the boundary formula");
    for (int k = 0; k < n; ++k) {
      gh[k] = s.grad_S_h_b[k][a];
      gpp[k] = gp[k](a, 0);
    }
    G[a] = dn_boundary_value<double>(n, s.h_b[a], s.xg_b[a], gh, gpp, ur[a]);
  }
  return G;
}

BoundaryField assemble_G(const ShapeState& s, const BallField& u, const BoundaryField& psi) {
  const Eigen::VectorXd G = assemble_G_samples(s, u, psi);
  return BoundaryField(s.dim(), s.space->L(), s.space->transform().analyze(G).col(0));
}

BallField solve_transformed(const ShapeState& s, const BoundaryField& psi, const DnOptions& opt) {
  if (opt.method == SolveMethod::FixedPoint) return fixed_point_solve(s, psi, opt.fixed_point).u;
  return series_solve(s, psi, opt.series).u_total;
}

BoundaryField dn_apply(const ShapeState& s, const BoundaryField& psi, const DnOptions& opt) {
  return assemble_G(s, solve_transformed(s, psi, opt), psi);
}

BoundaryField dn_apply(const BoundaryField& h, const BoundaryField& psi, const DnOptions& opt) {
  const BallSpacePtr sp = resolve_space(h.dim(), std::max(h.L(), psi.L()), opt);
  return dn_apply(build_shape(h, sp, opt.M_cap), psi, opt);
}

Eigen::VectorXd surface_weight(const ShapeState& s) {
  const int n = s.dim();
  return (Eigen::VectorXd::Ones(s.h_b.size()) + s.h_b).array().pow(n - 2).matrix().cwiseProduct(s.J_b);
}

double dn_bilinear_form(const ShapeState& s, const BoundaryField& psi1,
                        const BoundaryField& psi2, const DnOptions& opt) {
  const Eigen::VectorXd G = assemble_G_samples(s, solve_transformed(s, psi2, opt), psi2);
  const Eigen::VectorXd p1 = s.space->transform().synth(psi1.resized(s.space->L()).coeffs());
  const Eigen::VectorXd w = surface_weight(s);
  return s.space->quad_grid().weights().dot(p1.cwiseProduct(G).cwiseProduct(w));
}

}  // namespace dnsphere
