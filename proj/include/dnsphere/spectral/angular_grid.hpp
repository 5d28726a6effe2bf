#pragma once

#include <Eigen/Dense>

namespace dnsphere {

// Tensor quadrature grid on S^{n-1}. For n = 2 it is N equispaced angles; for
// n = 3 it is Gauss-Legendre in cos(theta) times equispaced phi, stored ring
// by ring (node index = ring * n_phi + j).
class AngularGrid {
 public:
  static AngularGrid circle(int n_points);
  static AngularGrid sphere(int n_theta, int n_phi);
  // Smallest grid integrating every band-limited function of degree <= D.
  static AngularGrid exact_for(int dim, int D);
  // Grid on which degree-L fields are analyzed without aliasing
  // (exact up to degree 2L+1).
  static AngularGrid for_degree(int dim, int L);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(weights_.size()); }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }

  // Highest degree D integrated exactly, and the largest analyzable L.
  int exact_degree() const;
  int max_band_limit() const { return (exact_degree() - 1) / 2; }

  const Eigen::MatrixXd& points() const { return points_; }  // dim x N
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::VectorXd& ring_cos() const { return ring_cos_; }
  const Eigen::VectorXd& ring_weights() const { return ring_w_; }
  const Eigen::VectorXd& phi() const { return phi_; }

 private:
  int dim_ = 2;
  int n_theta_ = 1;
  int n_phi_ = 0;
  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd ring_cos_, ring_w_, phi_;
};

}  // namespace dnsphere
