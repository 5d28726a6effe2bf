#include <array>

#include "dnsphere/dn/dn_operator.hpp"
#include "dnsphere/dn/pointwise.hpp"
#include "dnsphere/error.hpp"

namespace dnsphere {

namespace {

struct Direction {
  QuadScalar v;
  QuadVector g;
  Eigen::VectorXd b, xg_b;
  std::vector<Eigen::VectorXd> gs_b;
};

Direction sample_direction(const ShapeState& s, const BoundaryField& eta) {
  const BallSpace& sp = *s.space;
  if (eta.dim() != sp.dim()) throw InputError("direction dimension mismatch");
  if (eta.L() > sp.L()) throw ResolutionError("direction exceeds the ball band limit");
  Direction d;
  const BallField e = harmonic_extension(eta, s.space);
  d.v = sp.values_at_quad(e.nodal());
  d.g = sp.gradient_at_quad(e.nodal());
  const BoundaryField ee = eta.resized(sp.L());
  d.b = sp.transform().synth(ee.coeffs());
  BoundaryField de = ee;
  for (int i = 0; i < de.size(); ++i) de[i] *= sp.degree_of(i);
  d.xg_b = sp.transform().synth(de.coeffs());
  for (const auto& c : sp.transform().synth_tangential(ee.coeffs())) d.gs_b.push_back(c.col(0));
  return d;
}

// Derivatives of P at the quadrature points along d1 (e1) and d2 (e2):
// out[0] = P'[d1], out[1] = P'[d2], out[2] = P''[d1, d2], each n*n entries.
std::array<std::vector<QuadScalar>, 3> dP(const ShapeState& s, const Direction& d1,
                                          const Direction* d2) {
  const int n = s.dim(), Na = s.ht.rows(), Nq = s.ht.cols();
  std::array<std::vector<QuadScalar>, 3> out;
  for (auto& o : out) o.assign(n * n, QuadScalar(Na, Nq));
  HyperDual g[3], P[9];
  double x[3];
  for (int q = 0; q < Nq; ++q)
    for (int a = 0; a < Na; ++a) {
      for (int k = 0; k < n; ++k) {
        x[k] = s.x[k](a, q);
        g[k] = HyperDual(s.grad_ht[k](a, q), d1.g[k](a, q), d2 ? d2->g[k](a, q) : 0.0, 0.0);
      }
      const HyperDual ht(s.ht(a, q), d1.v(a, q), d2 ? d2->v(a, q) : 0.0, 0.0);
      matrix_P<HyperDual>(n, ht, g, x, P);
      for (int e = 0; e < n * n; ++e) {
        out[0][e](a, q) = P[e].b;
        out[1][e](a, q) = P[e].c;
        out[2][e](a, q) = P[e].d;
      }
    }
  return out;
}

QuadVector mat_vec(const std::vector<QuadScalar>& M, const QuadVector& v) {
  const int n = static_cast<int>(v.size());
  QuadVector out(n, QuadScalar::Zero(v[0].rows(), v[0].cols()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += M[i * n + j].cwiseProduct(v[j]);
  return out;
}

Eigen::VectorXd radial_samples(const ShapeState& s, const BallField& u) {
  return s.space->transform().synth(radial_trace(u).coeffs());
}

// Hyper-dual evaluation of the boundary formula; returns the requested part.
Eigen::VectorXd boundary_derivative(const ShapeState& s, const BoundaryField& psi,
                                    const Direction& d1, const Direction* d2,
                                    const Eigen::VectorXd& ur, const Eigen::VectorXd& ur1,
                                    const Eigen::VectorXd& ur2, const Eigen::VectorXd& ur12,
                                    bool second) {
  const BallSpace& sp = *s.space;
  const int n = sp.dim(), Na = sp.n_angular();
  const auto gp = sp.transform().synth_tangential(psi.resized(sp.L()).coeffs());
  Eigen::VectorXd out(Na);
  HyperDual gh[3];
  double gpp[3];
  for (int a = 0; a < Na; ++a) {
    for (int k = 0; k < n; ++k) {
      gh[k] = HyperDual(s.grad_S_h_b[k][a], d1.gs_b[k][a], d2 ? d2->gs_b[k][a] : 0.0, 0.0);
      gpp[k] = gp[k](a, 0);
    }
    const HyperDual h(s.h_b[a], d1.b[a], d2 ? d2->b[a] : 0.0, 0.0);
    const HyperDual xg(s.xg_b[a], d1.xg_b[a], d2 ? d2->xg_b[a] : 0.0, 0.0);
    const HyperDual u(ur[a], ur1[a], d2 ? ur2[a] : 0.0, second ? ur12[a] : 0.0);
    const HyperDual G = dn_boundary_value<HyperDual>(n, h, xg, gh, gpp, u);
    out[a] = second ? G.d : G.b;
  }
  return out;
}

FixedPointOptions tight(const DnOptions& opt) {
  FixedPointOptions f = opt.fixed_point;
  f.tol = std::min(f.tol, 1e-14);
  return f;
}

}  // namespace

BoundaryField dn_derivative(const BoundaryField& h, const BoundaryField& eta,
                            const BoundaryField& psi, const DnOptions& opt) {
  const BallSpacePtr sp = resolve_space(h.dim(), std::max({h.L(), psi.L(), eta.L()}), opt);
  const ShapeState s = build_shape(h, sp, opt.M_cap);
  const BallField u = solve_transformed(s, psi, opt);
  const Direction d = sample_direction(s, eta);
  const auto P = dP(s, d, nullptr);
  const BallField u1 = solve_linearized(s, mat_vec(P[0], sp->gradient_at_quad(u.nodal())), tight(opt));
  const Eigen::VectorXd e;
  const Eigen::VectorXd Gd =
      boundary_derivative(s, psi, d, nullptr, radial_samples(s, u), radial_samples(s, u1), e, e, false);
  return BoundaryField(h.dim(), sp->L(), sp->transform().analyze(Gd).col(0));
}

BoundaryField dn_second_derivative(const BoundaryField& h, const BoundaryField& eta1,
                                   const BoundaryField& eta2, const BoundaryField& psi,
                                   const DnOptions& opt) {
  const BallSpacePtr sp = resolve_space(
      h.dim(), std::max({h.L(), psi.L(), eta1.L(), eta2.L()}), opt);
  const ShapeState s = build_shape(h, sp, opt.M_cap);
  const BallField u = solve_transformed(s, psi, opt);
  const Direction d1 = sample_direction(s, eta1), d2 = sample_direction(s, eta2);
  const auto P = dP(s, d1, &d2);
  const FixedPointOptions fp = tight(opt);
  const QuadVector gu = sp->gradient_at_quad(u.nodal());
  const BallField u1 = solve_linearized(s, mat_vec(P[0], gu), fp);
  const BallField u2 = solve_linearized(s, mat_vec(P[1], gu), fp);
  QuadVector F = mat_vec(P[2], gu);
  const QuadVector a = mat_vec(P[0], sp->gradient_at_quad(u2.nodal()));
  const QuadVector b = mat_vec(P[1], sp->gradient_at_quad(u1.nodal()));
  for (int i = 0; i < sp->dim(); ++i) F[i] += a[i] + b[i];
  const BallField u12 = solve_linearized(s, F, fp);
  const Eigen::VectorXd G2 = boundary_derivative(s, psi, d1, &d2, radial_samples(s, u),
                                                 radial_samples(s, u1), radial_samples(s, u2),
                                                 radial_samples(s, u12), true);
  return BoundaryField(h.dim(), sp->L(), sp->transform().analyze(G2).col(0));
}

}  // namespace dnsphere
