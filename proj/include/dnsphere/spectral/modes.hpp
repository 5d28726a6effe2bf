#pragma once

#include <Eigen/Dense>

namespace dnsphere {

// Real orthonormal bases on S^{n-1}.
//   n = 2: index 0 -> 1/sqrt(2 pi); 2k-1 -> cos(k t)/sqrt(pi); 2k -> sin(k t)/sqrt(pi).
//   n = 3: index l^2 + l + m, real spherical harmonics without the
//          Condon-Shortley phase; m > 0 cosine type, m < 0 sine type.
int mode_count(int dim, int L);
int mode_degree(int dim, int index);
double mode_eigenvalue(int dim, int index);  // deg (deg + n - 2)
int circle_index(int k);                     // k > 0 cos, k < 0 sin
int sphere_index(int l, int m);

// All basis functions at a unit vector.
Eigen::VectorXd eval_modes(int dim, int L, const Eigen::VectorXd& xhat);
// Tangential gradients (dim x M, Cartesian components) at a unit vector.
Eigen::MatrixXd eval_mode_gradients(int dim, int L, const Eigen::VectorXd& xhat);

// Normalized associated Legendre table for the sphere basis:
// p[l(l+1)/2 + m] = Pbar_l^m(cos t), dp = d/dt, q = Pbar / sin t (m >= 1).
void sphere_legendre(int L, double c, double s, double* p, double* dp,
                     double* q);
inline int tri_index(int l, int m) { return l * (l + 1) / 2 + m; }

}  // namespace dnsphere
