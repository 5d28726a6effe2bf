#include "dnsphere/dn/shape.hpp"

#include <cmath>

#include "dnsphere/dn/pointwise.hpp"
#include "dnsphere/error.hpp"

namespace dnsphere {

ShapeState build_shape(const BoundaryField& h, const BallSpacePtr& space, int M_cap) {
  if (!h.coeffs().allFinite()) throw InputError("build_shape: non-finite h");
  if (h.dim() != space->dim()) throw InputError("build_shape: dimension mismatch");
  const BallSpace& sp = *space;
  const int n = sp.dim(), Na = sp.n_angular(), Nq = sp.n_quad();
  ShapeState s;
  s.space = space;
  s.h = h;
  s.M_cap = M_cap;
  s.tilde_h = harmonic_extension(h, space);
  s.ht = sp.values_at_quad(s.tilde_h.nodal());
  s.grad_ht = sp.gradient_at_quad(s.tilde_h.nodal());
  s.x.assign(n, QuadScalar(Na, Nq));
  for (int k = 0; k < n; ++k)
    s.x[k] = sp.quad_grid().points().row(k).transpose() * sp.quad_radii().transpose();
  s.beta = s.ht;
  for (int k = 0; k < n; ++k) s.beta += s.x[k].cwiseProduct(s.grad_ht[k]);

  s.P_full.assign(n * n, QuadScalar(Na, Nq));
  double sup_h = 0.0, sup_d = 0.0;
  double g[3], xx[3], P[9];
  for (int q = 0; q < Nq; ++q)
    for (int a = 0; a < Na; ++a) {
      double g2 = 0, r2 = 0;
      for (int k = 0; k < n; ++k) {
        g[k] = s.grad_ht[k](a, q);
        xx[k] = s.x[k](a, q);
        g2 += g[k] * g[k];
        r2 += xx[k] * xx[k];
      }
      const double th = s.ht(a, q);
      sup_h = std::max(sup_h, std::abs(th));
      sup_d = std::max(sup_d, std::abs(th) + std::sqrt(r2 * g2));
      matrix_P<double>(n, th, g, xx, P);
      for (int e = 0; e < n * n; ++e) s.P_full[e](a, q) = P[e];
    }

  // Boundary factors on the angular quadrature grid.
  const AngularTransform& T = sp.transform();
  const BoundaryField hh = h.resized(sp.L());
  s.h_b = T.synth(hh.coeffs());
  BoundaryField dh = hh;
  for (int i = 0; i < dh.size(); ++i) dh[i] *= sp.degree_of(i);
  s.xg_b = T.synth(dh.coeffs());
  const auto gs = T.synth_tangential(hh.coeffs());
  s.grad_S_h_b.clear();
  Eigen::VectorXd gs2 = Eigen::VectorXd::Zero(Na);
  for (int k = 0; k < n; ++k) {
    s.grad_S_h_b.push_back(gs[k].col(0));
    gs2 += gs[k].col(0).cwiseAbs2();
  }
  s.J_b = ((Eigen::VectorXd::Ones(Na) + s.h_b).cwiseAbs2() + gs2).cwiseSqrt();
  for (int a = 0; a < Na; ++a) {
    const double hb = s.h_b[a];
    sup_h = std::max(sup_h, std::abs(hb));
    sup_d = std::max(sup_d, std::abs(hb) + std::sqrt(gs2[a] + s.xg_b[a] * s.xg_b[a]));
  }
  s.wellposed_margin = 0.5 - (sup_h + sup_d);
  s.J = BoundaryField(n, sp.L(), T.analyze(s.J_b).col(0));
  s.one_plus_h = hh;
  s.one_plus_h[0] += n == 2 ? std::sqrt(2.0 * M_PI) : std::sqrt(4.0 * M_PI);
  if (!(s.wellposed_margin > 0.0))
    throw ShapeTooLargeError("shape outside the well-posedness margin (margin " +
                             std::to_string(s.wellposed_margin) + ")");
  return s;
}

QuadVector apply_P(const ShapeState& s, const QuadVector& v) {
  const int n = s.dim();
  QuadVector out(n, QuadScalar::Zero(v[0].rows(), v[0].cols()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += s.P_full[i * n + j].cwiseProduct(v[j]);
  return out;
}

QuadVector apply_P_minus_I(const ShapeState& s, const QuadVector& v) {
  QuadVector out = apply_P(s, v);
  for (int i = 0; i < s.dim(); ++i) out[i] -= v[i];
  return out;
}

QuadVector apply_P_m(const ShapeState& s, int m, const QuadVector& v) {
  const int n = s.dim();
  using A = Eigen::ArrayXXd;
  if (m == 0) return v;
  A xv = A::Zero(v[0].rows(), v[0].cols()), gv = xv, g2 = xv;
  for (int k = 0; k < n; ++k) {
    xv += s.x[k].array() * v[k].array();
    gv += s.grad_ht[k].array() * v[k].array();
    g2 += s.grad_ht[k].array().square();
  }
  const A beta = s.beta.array();
  // P_m v = a0 v + a1 Q_1 v + c (x.v) x, with scalar fields a0, a1, c.
  A a0, a1, c;
  if (n == 3) {
    a0 = A::Zero(xv.rows(), xv.cols());
    a1 = m == 1 ? A::Ones(xv.rows(), xv.cols()) : A::Zero(xv.rows(), xv.cols());
    c = m >= 2 ? ((m % 2 == 0 ? 1.0 : -1.0) * g2 * beta.pow(m - 2)).eval()
               : A::Zero(xv.rows(), xv.cols());
  } else {
    // sum over sigma + k = m of (-tilde h)^sigma Q_k
    const A mh = -s.ht.array();
    a0 = mh.pow(m);
    a1 = mh.pow(m - 1);
    c = A::Zero(xv.rows(), xv.cols());
    for (int k = 2; k <= m; ++k)
      c += mh.pow(m - k) * (k % 2 == 0 ? 1.0 : -1.0) * g2 * beta.pow(k - 2);
  }
  QuadVector out(n);
  for (int k = 0; k < n; ++k) {
    const A q1 = beta * v[k].array() - s.grad_ht[k].array() * xv - s.x[k].array() * gv;
    out[k] = (a0 * v[k].array() + a1 * q1 + c * xv * s.x[k].array()).matrix();
  }
  return out;
}

std::vector<QuadScalar> P_m_entries(const ShapeState& s, int m) {
  const int n = s.dim();
  std::vector<QuadScalar> out(n * n);
  for (int j = 0; j < n; ++j) {
    QuadVector e(n, QuadScalar::Zero(s.ht.rows(), s.ht.cols()));
    e[j].setOnes();
    const QuadVector col = apply_P_m(s, m, e);
    for (int i = 0; i < n; ++i) out[i * n + j] = col[i];
  }
  return out;
}

}  // namespace dnsphere
