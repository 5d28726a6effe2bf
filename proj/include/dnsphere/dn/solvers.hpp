#pragma once

#include <vector>

#include "dnsphere/dn/shape.hpp"

namespace dnsphere {

struct SeriesOptions {
  int M = 16;
  double tol = 1e-12;
  bool keep_terms = false;
};

struct SeriesSolution {
  BallField u_total;
  std::vector<double> terms_h1;  // ||u_m||_{H^1}, m = 0..M_used
  int M_used = 0;
  bool converged = false;
  bool diverging = false;  // last three terms not decreasing
  double fitted_ratio = 0.0;
  std::vector<BallField> terms;  // filled when keep_terms
};

// u_0 = PI psi; Laplace u_m = -div g_m with g_m = sum_{k<m} P_{m-k} grad u_k.
SeriesSolution series_solve(const ShapeState& shape, const BoundaryField& psi,
                            const SeriesOptions& opt = {});

struct FixedPointOptions {
  int iters = 300;
  double tol = 1e-14;
};

struct FixedPointResult {
  BallField u;
  int iterations = 0;
  double weak_residual = 0.0;
};

// Picard iteration u <- PI psi + S((I - P) grad u).
FixedPointResult fixed_point_solve(const ShapeState& shape, const BoundaryField& psi,
                                   const FixedPointOptions& opt = {});

// w = 0 on the sphere with div(P grad w) = -div F.
BallField solve_linearized(const ShapeState& shape, const QuadVector& F,
                           const FixedPointOptions& opt = {});

// max |int P grad u . grad v| over the Galerkin basis, relative to ||u||_{H^1}.
double weak_residual(const ShapeState& shape, const BallField& u);

// Least-squares geometric rate of the terms m >= 1 above the round-off floor.
double fit_geometric_ratio(const std::vector<double>& terms);

}  // namespace dnsphere
