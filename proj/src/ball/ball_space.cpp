#include "dnsphere/ball/ball_space.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

std::shared_ptr<const BallSpace> BallSpace::create(int dim, int L,
                                                   BallSpaceOptions opt) {
  if (dim != 2 && dim != 3) throw InputError("only dimensions 2 and 3 are supported");
  if (L < 0) throw InputError("negative band limit");
  std::shared_ptr<BallSpace> s(new BallSpace());
  s->dim_ = dim;
  s->L_ = L;
  s->M_ = mode_count(dim, L);
  s->Nr_ = opt.n_radial > 0 ? opt.n_radial : L + 8;
  if (s->Nr_ < L + 2)
    throw ResolutionError("radial resolution must exceed the angular band limit by 2");
  s->Nq_ = opt.n_quad > 0 ? opt.n_quad : (3 * s->Nr_) / 2 + 4;
  if (s->Nq_ < s->Nr_ + 1) throw ResolutionError("too few radial quadrature nodes");
  const int adeg = opt.angular_degree > 0 ? opt.angular_degree : 3 * L + 4;
  if (adeg < 2 * L + 1) throw ResolutionError("angular quadrature below 2L+1");

  s->r_ = gauss_lobatto(s->Nr_, 0.0, 1.0).nodes;
  const Rule1D gq = gauss_legendre(s->Nq_, 0.0, 1.0);
  s->rq_ = gq.nodes;
  s->wq_ = gq.weights.cwiseProduct(gq.nodes.array().pow(dim - 1).matrix());
  s->grid_ = AngularGrid::exact_for(dim, adeg);
  s->T_ = std::make_unique<AngularTransform>(s->grid_, L);
  s->T1_ = std::make_unique<AngularTransform>(s->grid_, L + 1);
  s->interp_ = NodalInterpolator(s->r_, 0.0, 1.0);
  s->Iq_ = s->interp_.value_matrix(s->rq_);
  s->Dq_ = s->interp_.derivative_matrix(s->rq_);
  s->deg_.resize(s->M_);
  for (int i = 0; i < s->M_; ++i) s->deg_[i] = mode_degree(dim, i);

  const int Nr = s->Nr_, Nq = s->Nq_;
  s->phi_nodes_.resize(L + 1);
  s->phi_q_.resize(L + 1);
  s->dphi_q_.resize(L + 1);
  s->K_.resize(L + 1);
  s->wd_.resize(L + 1);
  s->wp_.resize(L + 1);
  s->chol_.resize(L + 1);
  for (int d = 0; d <= L; ++d) {
    const int P = Nr - 1 - d;
    const double beta = 2.0 * d + dim - 1.0;
    std::vector<double> jp(P), jd(P);
    auto fill = [&](double r, double* val, double* der) {
      jacobi_table(P, 2.0, beta, 2.0 * r - 1.0, jp.data(), jd.data());
      const double rd = std::pow(r, d);
      const double rd1 = d > 0 ? d * std::pow(r, d - 1) : 0.0;
      for (int p = 0; p < P; ++p) {
        val[p] = rd * (1.0 - r) * jp[p];
        if (der) der[p] = rd1 * (1.0 - r) * jp[p] - rd * jp[p] + rd * (1.0 - r) * 2.0 * jd[p];
      }
    };
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> pn(Nr, P), pq(Nq, P),
        dq(Nq, P);
    for (int i = 0; i < Nr; ++i) fill(s->r_[i], pn.row(i).data(), nullptr);
    for (int q = 0; q < Nq; ++q) fill(s->rq_[q], pq.row(q).data(), dq.row(q).data());
    s->phi_nodes_[d] = pn;
    s->phi_q_[d] = pq;
    s->dphi_q_[d] = dq;
    const double lam = d * (d + dim - 2.0);
    const Eigen::VectorXd w = s->wq_;
    const Eigen::VectorXd wr = w.cwiseQuotient(s->rq_);
    s->wd_[d] = w.asDiagonal() * s->dphi_q_[d];
    s->wp_[d] = wr.asDiagonal() * s->phi_q_[d];
    s->K_[d] = s->dphi_q_[d].transpose() * s->wd_[d] +
               lam * s->phi_q_[d].transpose() *
                   (wr.cwiseQuotient(s->rq_)).asDiagonal() * s->phi_q_[d];
    s->chol_[d].compute(s->K_[d]);
    if (s->chol_[d].info() != Eigen::Success)
      throw ResolutionError("per-mode stiffness matrix is not positive definite");
  }
  return s;
}

double BallSpace::eigenvalue_of(int mode) const {
  const double d = deg_[mode];
  return d * (d + dim_ - 2.0);
}

int BallSpace::first_mode(int d) const {
  if (dim_ == 2) return d == 0 ? 0 : 2 * d - 1;
  return d * d;
}

int BallSpace::mode_count_of(int d) const {
  if (dim_ == 2) return d == 0 ? 1 : 2;
  return 2 * d + 1;
}

QuadScalar BallSpace::values_at_quad(const Eigen::MatrixXd& U) const {
  return T_->synth(U * Iq_.transpose());
}

QuadVector BallSpace::gradient_at_quad(const Eigen::MatrixXd& U) const {
  if (U.rows() != M_ || U.cols() != Nr_) throw InputError("nodal matrix has wrong shape");
  const Eigen::MatrixXd A = (U * Iq_.transpose()) * rq_.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd B = U * Dq_.transpose();
  const QuadScalar vr = T_->synth(B);
  QuadVector g = T_->synth_tangential(A);
  for (int k = 0; k < dim_; ++k) g[k] += grid_.points().row(k).transpose().asDiagonal() * vr;
  return g;
}

double BallSpace::integrate(const QuadScalar& f) const {
  return grid_.weights().dot(f * wq_);
}

Eigen::MatrixXd BallSpace::load(const QuadVector& F) const {
  if (static_cast<int>(F.size()) != dim_) throw InputError("load: wrong component count");
  QuadScalar Fr = Eigen::MatrixXd::Zero(grid_.size(), Nq_);
  for (int k = 0; k < dim_; ++k) Fr += grid_.points().row(k).transpose().asDiagonal() * F[k];
  const Eigen::MatrixXd A = T_->analyze(Fr);
  const Eigen::MatrixXd C = T_->tangential_adjoint(F);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(M_, Nr_ - 1);
  for (int d = 0; d <= L_; ++d) {
    const int i0 = first_mode(d), nd = mode_count_of(d), P = basis_size(d);
    b.block(i0, 0, nd, P) = A.middleRows(i0, nd) * wd_[d] + C.middleRows(i0, nd) * wp_[d];
  }
  return b;
}

Eigen::MatrixXd BallSpace::coefficients_to_nodes(const Eigen::MatrixXd& a) const {
  Eigen::MatrixXd U(M_, Nr_);
  for (int d = 0; d <= L_; ++d) {
    const int i0 = first_mode(d), nd = mode_count_of(d), P = basis_size(d);
    U.middleRows(i0, nd) = a.block(i0, 0, nd, P) * phi_nodes_[d].transpose();
  }
  return U;
}

Eigen::MatrixXd BallSpace::solve_load(const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(M_, Nr_ - 1);
  for (int d = 0; d <= L_; ++d) {
    const int i0 = first_mode(d), nd = mode_count_of(d), P = basis_size(d);
    a.block(i0, 0, nd, P) =
        chol_[d].solve(b.block(i0, 0, nd, P).transpose()).transpose();
  }
  return coefficients_to_nodes(a);
}

Eigen::MatrixXd BallSpace::solve_div(const QuadVector& F) const {
  for (const auto& f : F)
    if (!f.allFinite()) throw InputError("solve_div: non-finite forcing");
  return solve_load(load(F));
}

}  // namespace dnsphere
