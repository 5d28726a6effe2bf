#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "dnsphere/spectral/angular_grid.hpp"
#include "dnsphere/spectral/angular_transform.hpp"
#include "dnsphere/spectral/quadrature.hpp"

namespace dnsphere {

// Samples at the quadrature points of the ball: rows = angular nodes,
// columns = radial quadrature nodes.
using QuadScalar = Eigen::MatrixXd;
using QuadVector = std::vector<Eigen::MatrixXd>;

struct BallSpaceOptions {
  int n_radial = 0;         // Gauss-Lobatto nodes on [0, 1]; default L + 8
  int n_quad = 0;           // Gauss-Legendre radial nodes; default 3 n_radial / 2 + 4
  int angular_degree = 0;   // exactness of the angular quadrature; default 3L + 4
};

// Discretization of the unit ball shared by every field on it. Fields store,
// for each angular mode, values at Gauss-Lobatto nodes in r.
//
// The Dirichlet problem is solved mode by mode with the Galerkin basis
// r^d (1 - r) J_p(2r - 1), p < n_radial - 1 - d, where J_p are Jacobi
// polynomials orthogonal for the weight r^{2d+n-1} (1-r)^2.
class BallSpace {
 public:
  static std::shared_ptr<const BallSpace> create(int dim, int L,
                                                 BallSpaceOptions opt = {});

  int dim() const { return dim_; }
  int L() const { return L_; }
  int modes() const { return M_; }
  int n_radial() const { return Nr_; }
  int n_quad() const { return Nq_; }
  int n_angular() const { return grid_.size(); }
  const Eigen::VectorXd& radial_nodes() const { return r_; }
  const Eigen::VectorXd& quad_radii() const { return rq_; }
  // Gauss weights times r^{n-1}.
  const Eigen::VectorXd& quad_weights() const { return wq_; }
  const AngularGrid& quad_grid() const { return grid_; }
  const AngularTransform& transform() const { return *T_; }
  const AngularTransform& transform_plus() const { return *T1_; }
  const NodalInterpolator& interpolator() const { return interp_; }
  int degree_of(int mode) const { return deg_[mode]; }
  double eigenvalue_of(int mode) const;
  int first_mode(int d) const;
  int mode_count_of(int d) const;
  int basis_size(int d) const { return Nr_ - 1 - d; }

  // Nodal values of the Galerkin basis (n_radial x basis_size) and its values
  // and derivatives at the radial quadrature nodes.
  const Eigen::MatrixXd& basis_nodes(int d) const { return phi_nodes_[d]; }
  const Eigen::MatrixXd& basis_quad(int d) const { return phi_q_[d]; }
  const Eigen::MatrixXd& basis_quad_dr(int d) const { return dphi_q_[d]; }
  const Eigen::MatrixXd& stiffness(int d) const { return K_[d]; }

  // U: modes x n_radial nodal values.
  QuadScalar values_at_quad(const Eigen::MatrixXd& U) const;
  QuadVector gradient_at_quad(const Eigen::MatrixXd& U) const;
  // Rows of radial quadrature values for a given mode matrix.
  Eigen::MatrixXd radial_to_quad(const Eigen::MatrixXd& U) const { return U * Iq_.transpose(); }
  Eigen::MatrixXd radial_derivative_to_quad(const Eigen::MatrixXd& U) const {
    return U * Dq_.transpose();
  }

  // Integral over the ball of a quadrature-sampled scalar.
  double integrate(const QuadScalar& f) const;

  // Load vector int F . grad v for every Galerkin basis function v, grouped
  // per mode: modes x (n_radial - 1), unused trailing entries are zero.
  Eigen::MatrixXd load(const QuadVector& F) const;
  // Galerkin coefficients -> nodal values.
  Eigen::MatrixXd coefficients_to_nodes(const Eigen::MatrixXd& A) const;
  // Solves int grad u . grad v = int F . grad v for u vanishing on the sphere,
  // i.e. Laplace u = div F weakly. Returns nodal values.
  Eigen::MatrixXd solve_div(const QuadVector& F) const;
  // Same, starting from a precomputed load.
  Eigen::MatrixXd solve_load(const Eigen::MatrixXd& b) const;

 private:
  BallSpace() = default;
  int dim_ = 2, L_ = 0, M_ = 0, Nr_ = 0, Nq_ = 0;
  Eigen::VectorXd r_, rq_, wq_;
  AngularGrid grid_;
  std::unique_ptr<AngularTransform> T_, T1_;
  NodalInterpolator interp_;
  Eigen::MatrixXd Iq_, Dq_;
  std::vector<int> deg_;
  std::vector<Eigen::MatrixXd> phi_nodes_, phi_q_, dphi_q_, K_;
  std::vector<Eigen::MatrixXd> wd_, wp_;  // weighted basis for loads
  std::vector<Eigen::LLT<Eigen::MatrixXd>> chol_;
};

using BallSpacePtr = std::shared_ptr<const BallSpace>;

}  // namespace dnsphere
