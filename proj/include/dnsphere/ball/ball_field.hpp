#pragma once

#include <Eigen/Dense>

#include "json.hpp"
#include "dnsphere/ball/ball_space.hpp"
#include "dnsphere/spectral/boundary_field.hpp"

namespace dnsphere {

// Scalar field on the ball: per mode, values at the Gauss-Lobatto radii.
class BallField {
 public:
  BallField() = default;
  explicit BallField(BallSpacePtr space);
  BallField(BallSpacePtr space, Eigen::MatrixXd nodal);

  const BallSpacePtr& space() const { return space_; }
  int dim() const { return space_->dim(); }
  int L() const { return space_->L(); }
  const Eigen::MatrixXd& nodal() const { return U_; }
  Eigen::MatrixXd& nodal() { return U_; }

  BallField& operator+=(const BallField& o);
  BallField& operator-=(const BallField& o);
  BallField& operator*=(double a);

 private:
  BallSpacePtr space_;
  Eigen::MatrixXd U_;
};

BallField operator+(BallField a, const BallField& b);
BallField operator-(BallField a, const BallField& b);
BallField operator*(double s, BallField a);

// Vector field whose Cartesian components have band limit L + 1 on the same
// radial nodes.
struct VectorBallField {
  BallSpacePtr space;
  int L = 0;
  std::vector<Eigen::MatrixXd> comps;
};

// Harmonic extension: coefficient c of a degree-d mode becomes r^d c.
BallField harmonic_extension(const BoundaryField& psi, const BallSpacePtr& space);

// u with Laplace u = div g weakly and u = 0 on the sphere.
BallField poisson_div_solve(const VectorBallField& g);
BallField poisson_div_solve(const BallSpacePtr& space, const QuadVector& g);

VectorBallField gradient(const BallField& u);

BoundaryField boundary_trace(const BallField& u);
// d/dr u at r = 1.
BoundaryField radial_trace(const BallField& u);

double h1_norm(const BallField& u);
double l2_norm(const BallField& u);

double eval(const BallField& u, const Eigen::VectorXd& x);
double eval(const VectorBallField& g, int comp, const Eigen::VectorXd& x);
// Per-mode radial values at radius r.
Eigen::VectorXd eval_all_modes(const BallField& u, double r);

QuadVector sample_at_quad(const VectorBallField& g);

nlohmann::json to_json(const BallField& u);
BallField ball_field_from_json(const nlohmann::json& j, const BallSpacePtr& space);

}  // namespace dnsphere
