#include "dnsphere/spectral/angular_grid.hpp"

#include <algorithm>
#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/quadrature.hpp"

namespace dnsphere {

AngularGrid AngularGrid::circle(int n) {
  if (n < 1) throw ResolutionError("circle grid needs at least one point");
  AngularGrid g;
  g.dim_ = 2;
  g.n_theta_ = 1;
  g.n_phi_ = n;
  g.points_.resize(2, n);
  g.weights_ = Eigen::VectorXd::Constant(n, 2.0 * M_PI / n);
  g.phi_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * M_PI * j / n;
    g.phi_[j] = t;
    g.points_(0, j) = std::cos(t);
    g.points_(1, j) = std::sin(t);
  }
  g.ring_cos_ = Eigen::VectorXd::Zero(1);
  g.ring_w_ = Eigen::VectorXd::Ones(1);
  return g;
}

AngularGrid AngularGrid::sphere(int nt, int np) {
  if (nt < 1 || np < 1) throw ResolutionError("sphere grid too small");
  AngularGrid g;
  g.dim_ = 3;
  g.n_theta_ = nt;
  g.n_phi_ = np;
  const Rule1D gl = gauss_legendre(nt);
  // Rings ordered from north to south.
  g.ring_cos_ = gl.nodes.reverse();
  g.ring_w_ = gl.weights.reverse();
  g.phi_.resize(np);
  for (int j = 0; j < np; ++j) g.phi_[j] = 2.0 * M_PI * j / np;
  g.points_.resize(3, nt * np);
  g.weights_.resize(nt * np);
  for (int i = 0; i < nt; ++i) {
    const double c = g.ring_cos_[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < np; ++j) {
      const int k = i * np + j;
      g.points_(0, k) = s * std::cos(g.phi_[j]);
      g.points_(1, k) = s * std::sin(g.phi_[j]);
      g.points_(2, k) = c;
      g.weights_[k] = g.ring_w_[i] * 2.0 * M_PI / np;
    }
  }
  return g;
}

AngularGrid AngularGrid::exact_for(int dim, int D) {
  D = std::max(D, 0);
  if (dim == 2) return circle(D + 1);
  if (dim == 3) return sphere((D + 2) / 2, D + 1);
  throw InputError("only dimensions 2 and 3 are supported");
}

AngularGrid AngularGrid::for_degree(int dim, int L) {
  return exact_for(dim, 2 * L + 1);
}

int AngularGrid::exact_degree() const {
  if (dim_ == 2) return n_phi_ - 1;
  return std::min(2 * n_theta_ - 1, n_phi_ - 1);
}

}  // namespace dnsphere
