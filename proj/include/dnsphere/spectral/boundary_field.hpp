#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "json.hpp"
#include "dnsphere/spectral/angular_grid.hpp"

namespace dnsphere {

// Band-limited function on S^{n-1}: coefficients in the basis of modes.hpp.
class BoundaryField {
 public:
  BoundaryField() = default;
  BoundaryField(int dim, int L);
  BoundaryField(int dim, int L, Eigen::VectorXd coeffs);

  int dim() const { return dim_; }
  int L() const { return L_; }
  int size() const { return static_cast<int>(c_.size()); }
  const Eigen::VectorXd& coeffs() const { return c_; }
  Eigen::VectorXd& coeffs() { return c_; }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }

  // Truncates or zero-pads to a new band limit.
  BoundaryField resized(int L) const;

  BoundaryField& operator+=(const BoundaryField& o);
  BoundaryField& operator-=(const BoundaryField& o);
  BoundaryField& operator*=(double a);

 private:
  int dim_ = 2;
  int L_ = 0;
  Eigen::VectorXd c_;
};

BoundaryField operator+(BoundaryField a, const BoundaryField& b);
BoundaryField operator-(BoundaryField a, const BoundaryField& b);
BoundaryField operator*(double s, BoundaryField a);

Eigen::VectorXd synth(const BoundaryField& f, const AngularGrid& grid);
BoundaryField analyze(const Eigen::VectorXd& samples, const AngularGrid& grid, int L);

struct AnalysisReport {
  BoundaryField field;
  // Relative L2 energy of the samples that lies outside degree <= L.
  double out_of_band = 0.0;
};
AnalysisReport analyze_report(const Eigen::VectorXd& samples,
                              const AngularGrid& grid, int L);

double eval(const BoundaryField& f, const Eigen::VectorXd& xhat);

// (sum (1 + lambda)^s |c|^2)^{1/2}
double sobolev_norm(const BoundaryField& f, double s);

// Cartesian components of grad_S f, each of degree L + 1.
std::vector<BoundaryField> tangential_gradient(const BoundaryField& f);

struct ProductResult {
  BoundaryField field;
  double truncated_l2 = 0.0;  // L2 norm of the discarded part
};
// Pointwise product projected to degree min(Lf + Lg, L_max).
ProductResult multiply(const BoundaryField& f, const BoundaryField& g, int L_max);

// L2 projection of a pointwise function, using a grid exact to degree
// 2L + 1 + extra.
BoundaryField project_function(int dim, int L,
                               const std::function<double(const Eigen::VectorXd&)>& fn,
                               int extra = 0);

nlohmann::json to_json(const BoundaryField& f);
BoundaryField boundary_field_from_json(const nlohmann::json& j);

}  // namespace dnsphere
