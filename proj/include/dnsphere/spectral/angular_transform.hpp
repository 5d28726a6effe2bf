#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dnsphere/spectral/angular_grid.hpp"

namespace dnsphere {

// Synthesis / weighted projection between mode coefficients (M x B) and grid
// samples (N x B) for a batch of B columns.
class AngularTransform {
 public:
  AngularTransform(const AngularGrid& grid, int L);

  int L() const { return L_; }
  int dim() const { return dim_; }
  int modes() const { return M_; }
  int nodes() const { return N_; }
  const AngularGrid& grid() const { return grid_; }

  Eigen::MatrixXd synth(const Eigen::MatrixXd& C) const;
  // c = sum_k w_k v_k Y(x_k); exact projection when the grid is fine enough.
  Eigen::MatrixXd analyze(const Eigen::MatrixXd& V) const;
  // Cartesian components of the tangential gradient.
  std::vector<Eigen::MatrixXd> synth_tangential(const Eigen::MatrixXd& C) const;
  // c = sum_k w_k F(x_k) . grad_S Y(x_k).
  Eigen::MatrixXd tangential_adjoint(const std::vector<Eigen::MatrixXd>& F) const;

 private:
  using Rings = std::vector<Eigen::MatrixXd>;  // per m: n_theta x B
  void legendre_stage(const Eigen::MatrixXd& C, const std::vector<Eigen::MatrixXd>& tab,
                      Rings& ac, Rings& as) const;
  Eigen::MatrixXd fourier_synth(const Rings& ac, const Rings& as) const;
  void fourier_analyze(const Eigen::MatrixXd& V, Rings& wc, Rings& ws) const;
  void legendre_adjoint(const Rings& wc, const Rings& ws,
                        const std::vector<Eigen::MatrixXd>& tab,
                        Eigen::MatrixXd& C) const;

  AngularGrid grid_;
  int L_, dim_, M_, N_;
  // n = 2
  Eigen::MatrixXd Y_, dY_;
  // n = 3: per m, n_theta x (L - m + 1); sqrt(2) folded in for m > 0.
  std::vector<Eigen::MatrixXd> P_, dP_, Q_;
  Eigen::MatrixXd trig_;  // n_phi x (2L+1): cos m=0..L then sin m=1..L
  Eigen::MatrixXd e_theta_, e_phi_;
};

}  // namespace dnsphere
