#pragma once

#include <Eigen/Dense>

namespace dnsphere {

struct Rule1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Legendre on [a, b].
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Gauss-Lobatto-Legendre on [a, b], endpoints included.
Rule1D gauss_lobatto(int n, double a = -1.0, double b = 1.0);

// Legendre P_0..P_{n-1} and derivatives at x in [-1, 1].
void legendre_table(int n, double x, double* p, double* dp);

// Jacobi P_k^{(alpha,beta)}(x), k < n, with derivatives.
void jacobi_table(int n, double alpha, double beta, double x, double* p,
                  double* dp);

// Polynomial interpolation through fixed nodes on [a, b], done in a Legendre
// basis so that evaluation off the nodes stays well conditioned.
class NodalInterpolator {
 public:
  NodalInterpolator() = default;
  NodalInterpolator(const Eigen::VectorXd& nodes, double a, double b);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Eigen::VectorXd& nodes() const { return nodes_; }

  // Rows map nodal values to values / first derivatives at the targets.
  Eigen::MatrixXd value_matrix(const Eigen::VectorXd& targets) const;
  Eigen::MatrixXd derivative_matrix(const Eigen::VectorXd& targets) const;
  Eigen::RowVectorXd value_row(double t) const;
  Eigen::RowVectorXd derivative_row(double t) const;

 private:
  Eigen::VectorXd nodes_;
  double a_ = 0.0, b_ = 1.0;
  Eigen::MatrixXd inv_vandermonde_;
};

}  // namespace dnsphere
