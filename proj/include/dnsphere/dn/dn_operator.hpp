#pragma once

#include "dnsphere/dn/solvers.hpp"

namespace dnsphere {

enum class SolveMethod { Series, FixedPoint };

struct DnOptions {
  int L = -1;             // ball band limit; default max(deg h, deg psi)
  BallSpaceOptions ball;
  BallSpacePtr space;     // reused when set
  SolveMethod method = SolveMethod::Series;
  SeriesOptions series;
  FixedPointOptions fixed_point;
  int M_cap = 16;
};

BallSpacePtr resolve_space(int dim, int L_default, const DnOptions& opt);

// Pointwise values of G on the angular quadrature grid of the shape's space.
Eigen::VectorXd assemble_G_samples(const ShapeState& shape, const BallField& u,
                                   const BoundaryField& psi);
BoundaryField assemble_G(const ShapeState& shape, const BallField& u,
                         const BoundaryField& psi);

BallField solve_transformed(const ShapeState& shape, const BoundaryField& psi,
                            const DnOptions& opt = {});

BoundaryField dn_apply(const ShapeState& shape, const BoundaryField& psi,
                       const DnOptions& opt = {});
BoundaryField dn_apply(const BoundaryField& h, const BoundaryField& psi,
                       const DnOptions& opt = {});

// Surface weight (1 + h)^{n-2} J turning G into a symmetric form.
Eigen::VectorXd surface_weight(const ShapeState& shape);
// int psi1 G(h) psi2 w over the sphere.
double dn_bilinear_form(const ShapeState& shape, const BoundaryField& psi1,
                        const BoundaryField& psi2, const DnOptions& opt = {});

BoundaryField dn_derivative(const BoundaryField& h, const BoundaryField& eta,
                            const BoundaryField& psi, const DnOptions& opt = {});
BoundaryField dn_second_derivative(const BoundaryField& h, const BoundaryField& eta1,
                                   const BoundaryField& eta2, const BoundaryField& psi,
                                   const DnOptions& opt = {});

}  // namespace dnsphere
