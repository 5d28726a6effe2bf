#include "dnsphere/spectral/angular_transform.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

AngularTransform::AngularTransform(const AngularGrid& grid, int L)
    : grid_(grid), L_(L), dim_(grid.dim()), M_(mode_count(grid.dim(), L)),
      N_(grid.size()) {
  if (L < 0) throw InputError("negative band limit");
  if (dim_ == 2) {
    Y_.resize(N_, M_);
    dY_.resize(N_, M_);
    e_theta_.resize(N_, 2);
    for (int j = 0; j < N_; ++j) {
      const double t = grid.phi()[j];
      Y_(j, 0) = 1.0 / std::sqrt(2.0 * M_PI);
      dY_(j, 0) = 0.0;
      for (int k = 1; k <= L; ++k) {
        Y_(j, 2 * k - 1) = std::cos(k * t) / std::sqrt(M_PI);
        Y_(j, 2 * k) = std::sin(k * t) / std::sqrt(M_PI);
        dY_(j, 2 * k - 1) = -k * std::sin(k * t) / std::sqrt(M_PI);
        dY_(j, 2 * k) = k * std::cos(k * t) / std::sqrt(M_PI);
      }
      e_theta_(j, 0) = -std::sin(t);
      e_theta_(j, 1) = std::cos(t);
    }
    return;
  }
  const int nt = grid.n_theta(), np = grid.n_phi();
  const int T = (L + 1) * (L + 2) / 2;
  P_.assign(L + 1, Eigen::MatrixXd());
  dP_.assign(L + 1, Eigen::MatrixXd());
  Q_.assign(L + 1, Eigen::MatrixXd());
  for (int m = 0; m <= L; ++m) {
    P_[m].resize(nt, L - m + 1);
    dP_[m].resize(nt, L - m + 1);
    Q_[m].resize(nt, L - m + 1);
  }
  std::vector<double> p(T), dp(T), q(T);
  for (int i = 0; i < nt; ++i) {
    const double c = grid.ring_cos()[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    sphere_legendre(L, c, s, p.data(), dp.data(), q.data());
    for (int m = 0; m <= L; ++m) {
      const double f = m > 0 ? std::sqrt(2.0) : 1.0;
      for (int l = m; l <= L; ++l) {
        P_[m](i, l - m) = f * p[tri_index(l, m)];
        dP_[m](i, l - m) = f * dp[tri_index(l, m)];
        Q_[m](i, l - m) = f * q[tri_index(l, m)];
      }
    }
  }
  trig_.resize(np, 2 * L + 1);
  for (int j = 0; j < np; ++j) {
    const double ph = grid.phi()[j];
    for (int m = 0; m <= L; ++m) trig_(j, m) = std::cos(m * ph);
    for (int m = 1; m <= L; ++m) trig_(j, L + m) = std::sin(m * ph);
  }
  e_theta_.resize(N_, 3);
  e_phi_.resize(N_, 3);
  for (int i = 0; i < nt; ++i) {
    const double c = grid.ring_cos()[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < np; ++j) {
      const double ph = grid.phi()[j];
      const int k = i * np + j;
      e_theta_.row(k) << c * std::cos(ph), c * std::sin(ph), -s;
      e_phi_.row(k) << -std::sin(ph), std::cos(ph), 0.0;
    }
  }
}

void AngularTransform::legendre_stage(const Eigen::MatrixXd& C,
                                      const std::vector<Eigen::MatrixXd>& tab,
                                      Rings& ac, Rings& as) const {
  const int B = static_cast<int>(C.cols());
  ac.assign(L_ + 1, Eigen::MatrixXd());
  as.assign(L_ + 1, Eigen::MatrixXd());
  for (int m = 0; m <= L_; ++m) {
    const int nl = L_ - m + 1;
    Eigen::MatrixXd cc(nl, B), cs(nl, B);
    for (int l = m; l <= L_; ++l) {
      cc.row(l - m) = C.row(sphere_index(l, m));
      if (m > 0) cs.row(l - m) = C.row(sphere_index(l, -m));
    }
    ac[m].noalias() = tab[m] * cc;
    if (m > 0) as[m].noalias() = tab[m] * cs;
  }
}

Eigen::MatrixXd AngularTransform::fourier_synth(const Rings& ac,
                                                const Rings& as) const {
  const int nt = grid_.n_theta(), np = grid_.n_phi();
  const int B = static_cast<int>(ac[0].cols());
  Eigen::MatrixXd V(N_, B);
  Eigen::MatrixXd G(2 * L_ + 1, B);
  for (int i = 0; i < nt; ++i) {
    for (int m = 0; m <= L_; ++m) {
      G.row(m) = ac[m].row(i);
      if (m > 0) G.row(L_ + m) = as[m].row(i);
    }
    V.middleRows(i * np, np).noalias() = trig_ * G;
  }
  return V;
}

void AngularTransform::fourier_analyze(const Eigen::MatrixXd& V, Rings& wc,
                                       Rings& ws) const {
  const int nt = grid_.n_theta(), np = grid_.n_phi();
  const int B = static_cast<int>(V.cols());
  wc.assign(L_ + 1, Eigen::MatrixXd(nt, B));
  ws.assign(L_ + 1, Eigen::MatrixXd(nt, B));
  Eigen::MatrixXd W(2 * L_ + 1, B);
  for (int i = 0; i < nt; ++i) {
    const double w = grid_.ring_weights()[i] * 2.0 * M_PI / np;
    W.noalias() = trig_.transpose() * V.middleRows(i * np, np);
    W *= w;
    for (int m = 0; m <= L_; ++m) {
      wc[m].row(i) = W.row(m);
      if (m > 0) ws[m].row(i) = W.row(L_ + m);
    }
  }
}

void AngularTransform::legendre_adjoint(const Rings& wc, const Rings& ws,
                                        const std::vector<Eigen::MatrixXd>& tab,
                                        Eigen::MatrixXd& C) const {
  for (int m = 0; m <= L_; ++m) {
    const Eigen::MatrixXd cc = tab[m].transpose() * wc[m];
    for (int l = m; l <= L_; ++l) C.row(sphere_index(l, m)) += cc.row(l - m);
    if (m > 0) {
      const Eigen::MatrixXd cs = tab[m].transpose() * ws[m];
      for (int l = m; l <= L_; ++l) C.row(sphere_index(l, -m)) += cs.row(l - m);
    }
  }
}

Eigen::MatrixXd AngularTransform::synth(const Eigen::MatrixXd& C) const {
  if (C.rows() != M_) throw InputError("synth: coefficient rows != mode count");
  if (dim_ == 2) return Y_ * C;
  Rings ac, as;
  legendre_stage(C, P_, ac, as);
  return fourier_synth(ac, as);
}

Eigen::MatrixXd AngularTransform::analyze(const Eigen::MatrixXd& V) const {
  if (V.rows() != N_) throw InputError("analyze: sample rows != grid size");
  if (dim_ == 2) return Y_.transpose() * (grid_.weights().asDiagonal() * V);
  Rings wc, ws;
  fourier_analyze(V, wc, ws);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(M_, V.cols());
  legendre_adjoint(wc, ws, P_, C);
  return C;
}

std::vector<Eigen::MatrixXd> AngularTransform::synth_tangential(
    const Eigen::MatrixXd& C) const {
  if (C.rows() != M_) throw InputError("synth_tangential: bad coefficient rows");
  std::vector<Eigen::MatrixXd> out(dim_);
  if (dim_ == 2) {
    const Eigen::MatrixXd ft = dY_ * C;
    for (int k = 0; k < 2; ++k) out[k] = e_theta_.col(k).asDiagonal() * ft;
    return out;
  }
  Rings ac, as;
  legendre_stage(C, dP_, ac, as);
  const Eigen::MatrixXd ft = fourier_synth(ac, as);
  Rings bc, bs;
  legendre_stage(C, Q_, bc, bs);
  // d/dphi maps (cos, sin) coefficients to (m sin, -m cos).
  Rings gc(L_ + 1), gs(L_ + 1);
  for (int m = 0; m <= L_; ++m) {
    if (m == 0) {
      gc[m] = Eigen::MatrixXd::Zero(bc[0].rows(), bc[0].cols());
      continue;
    }
    gc[m] = m * bs[m];
    gs[m] = -m * bc[m];
  }
  const Eigen::MatrixXd fp = fourier_synth(gc, gs);
  for (int k = 0; k < 3; ++k)
    out[k] = e_theta_.col(k).asDiagonal() * ft + e_phi_.col(k).asDiagonal() * fp;
  return out;
}

Eigen::MatrixXd AngularTransform::tangential_adjoint(
    const std::vector<Eigen::MatrixXd>& F) const {
  if (static_cast<int>(F.size()) != dim_) throw InputError("adjoint: bad component count");
  const Eigen::Index B = F[0].cols();
  if (dim_ == 2) {
    Eigen::MatrixXd Ft = e_theta_.col(0).asDiagonal() * F[0] +
                         e_theta_.col(1).asDiagonal() * F[1];
    return dY_.transpose() * (grid_.weights().asDiagonal() * Ft);
  }
  Eigen::MatrixXd Ft = Eigen::MatrixXd::Zero(N_, B), Fp = Eigen::MatrixXd::Zero(N_, B);
  for (int k = 0; k < 3; ++k) {
    Ft += e_theta_.col(k).asDiagonal() * F[k];
    Fp += e_phi_.col(k).asDiagonal() * F[k];
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(M_, B);
  Rings wc, ws;
  fourier_analyze(Ft, wc, ws);
  legendre_adjoint(wc, ws, dP_, C);
  fourier_analyze(Fp, wc, ws);
  // Transpose of the phi-derivative map above.
  Rings hc(L_ + 1), hs(L_ + 1);
  for (int m = 0; m <= L_; ++m) {
    hc[m] = Eigen::MatrixXd::Zero(wc[m].rows(), B);
    hs[m] = Eigen::MatrixXd::Zero(wc[m].rows(), B);
    if (m == 0) continue;
    hc[m] = -m * ws[m];
    hs[m] = m * wc[m];
  }
  legendre_adjoint(hc, hs, Q_, C);
  return C;
}

}  // namespace dnsphere
