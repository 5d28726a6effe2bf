#pragma once

#include <vector>

#include "dnsphere/ball/ball_field.hpp"
#include "dnsphere/spectral/boundary_field.hpp"

namespace dnsphere {

// Geometry data of the domain {x (1 + h(x))} pulled back to the unit ball.
// Ball quantities are stored as samples at the quadrature points of the
// BallSpace, boundary quantities as samples on its angular grid.
struct ShapeState {
  BallSpacePtr space;
  BoundaryField h;
  int M_cap = 16;
  BallField tilde_h;

  QuadVector x;        // Cartesian coordinates of the quadrature points
  QuadScalar ht;       // tilde h
  QuadVector grad_ht;  // grad tilde h
  QuadScalar beta;     // tilde h + <x, grad tilde h>
  std::vector<QuadScalar> P_full;  // n*n entries, row-major

  Eigen::VectorXd h_b;              // h at the boundary nodes
  Eigen::VectorXd xg_b;             // <x, grad tilde h> on the sphere
  std::vector<Eigen::VectorXd> grad_S_h_b;
  Eigen::VectorXd J_b;
  BoundaryField J, one_plus_h;

  double wellposed_margin = 0.0;

  int dim() const { return space->dim(); }
};

ShapeState build_shape(const BoundaryField& h, const BallSpacePtr& space, int M_cap = 16);

// P v, (P - I) v and P_m v at the quadrature points.
QuadVector apply_P(const ShapeState& s, const QuadVector& v);
QuadVector apply_P_minus_I(const ShapeState& s, const QuadVector& v);
QuadVector apply_P_m(const ShapeState& s, int m, const QuadVector& v);
// Entries of P_m (n*n row-major) at the quadrature points.
std::vector<QuadScalar> P_m_entries(const ShapeState& s, int m);

}  // namespace dnsphere
