#pragma once

#include <string>
#include <vector>

#include "dnsphere/dn/dn_operator.hpp"

namespace dnsphere {

// G on the ball of radius 1 + a: per-mode multiplier deg / (1 + a).
BoundaryField scaled_sphere_oracle(double a, const BoundaryField& psi);

struct TranslatedBallOptions {
  int L_h = -1;         // band limit of the returned h; default L_out
  int L_expand = -1;    // degree of the centered expansion; default L_out + 32
  int max_refinements = 3;
  double residual_tol = 1e-10;
};

struct TranslatedBallResult {
  BoundaryField h;
  BoundaryField G;
  int L_expand = 0;
  double expansion_residual = 0.0;
  double max_boundary_defect = 0.0;  // max | |x(1+h) - c| - 1 | at the nodes
};

// Elevation of the unit sphere centred at eps * e1.
double translated_ball_elevation(double eps, const Eigen::VectorXd& xhat);

TranslatedBallResult translated_ball_oracle(double eps, const BoundaryField& psi, int L_out,
                                            const TranslatedBallOptions& opt = {});

struct DirectGalerkinResult {
  BallField u;
  BoundaryField G;
  int unknowns = 0;
};

// One dense solve of int P grad u . grad v = 0 with u - PI psi vanishing on
// the sphere; no series.
DirectGalerkinResult direct_galerkin_oracle(const BoundaryField& h, const BoundaryField& psi,
                                            const DnOptions& opt = {});

std::vector<std::string> oracle_names();

}  // namespace dnsphere
