#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dnsphere/ball/ball_field.hpp"
#include "dnsphere/charts/atlas.hpp"
#include "dnsphere/charts/cutoffs.hpp"
#include "dnsphere/charts/half_space.hpp"
#include "dnsphere/spectral/boundary_field.hpp"

namespace dnsphere {

struct ChartGridOptions {
  int n_tan = 64;
  // Box half-width in units of r_delta.
  double box_factor = 1.5;
  FourierConvention convention = FourierConvention::Ordinary;
};

// Sum over charts of ||(f psi_j) o g_j(., 0)||_{H^s(R^{n-1})}. The per-chart
// sample points and psi values are built once.
class ChartNormPlan {
 public:
  ChartNormPlan(const Atlas& atlas, int L, const ChartGridOptions& opt = {});

  const Atlas& atlas() const { return *atlas_; }
  int L() const { return L_; }
  std::vector<double> norms(const BoundaryField& f, const std::vector<double>& s) const;
  double norm(const BoundaryField& f, double s) const { return norms(f, {s})[0]; }

 private:
  const Atlas* atlas_;
  int L_;
  ChartGridOptions opt_;
  std::vector<int> n_;
  std::vector<double> a_;
  struct Chart {
    std::vector<long> index;        // box nodes where psi_j > 0
    Eigen::MatrixXd points;          // dim x count, on the sphere
    Eigen::VectorXd psi;
    Eigen::MatrixXd modes;           // count x M, psi-weighted, when cached
  };
  std::vector<Chart> charts_;
};

double chart_norm(const BoundaryField& f, const Atlas& atlas, double s,
                  const ChartGridOptions& opt = {});

struct HalfBoxOptions {
  int n_tan = 128;
  int n_normal = 48;
  double box_factor = 1.5;     // tangential half-width / r_delta
  double height_factor = 1.25;  // H / delta
  FourierConvention convention = FourierConvention::Ordinary;
};

// Sampled (u psi_j) o g_j on the half box, shared by every cutoff.
HalfSpaceField chart_piece(const BallField& u, const Atlas& atlas, int j,
                           const HalfBoxOptions& opt = {});

// Chart points g_j(y) and partition weights psi_j on the half box, kept for
// repeated fields; piece(u, j) equals chart_piece(u, atlas, j, opt).
class ChartSampler {
 public:
  ChartSampler(const Atlas& atlas, const HalfBoxOptions& opt = {});
  HalfSpaceField piece(const BallField& u, int j) const;
  int size() const { return static_cast<int>(charts_.size()); }

 private:
  struct Chart {
    std::vector<long> index;  // samples with psi_j > 0
    Eigen::MatrixXd x;        // their points, one per column
    std::vector<double> psi;
  };
  HalfSpaceField shape_;
  std::vector<Chart> charts_;
};

// Multiplies the row at normal node x_n by zeta_k(1 - x_n).
HalfSpaceField apply_cutoff(HalfSpaceField w, const CutoffFamily& cut, int k, bool starred);

// Sampled w_kj = (u zeta_k psi_j) o g_j on the half box.
HalfSpaceField seminorm_piece(const BallField& u, const Atlas& atlas, const CutoffFamily& cut,
                              int j, int k, bool starred, const HalfBoxOptions& opt = {});

// |u|_{X^{s,r}_k} = sum_j ||w_kj||_{H^{s,r}}.
double x_seminorm(const BallField& u, const Atlas& atlas, const CutoffFamily& cut, int s,
                  double r, int k, bool starred = false, const HalfBoxOptions& opt = {});

}  // namespace dnsphere
