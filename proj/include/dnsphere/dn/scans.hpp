#pragma once

#include <vector>

#include "dnsphere/dn/dn_operator.hpp"

namespace dnsphere {

struct RadiusRow {
  double amplitude;
  int m;
  double norm_h1;
  double fitted_ratio;
  bool converged;
};

struct TruncationRow {
  double amplitude;
  double s;
  int M_s;  // -1 when tol is never reached
};

struct RadiusScanOptions {
  DnOptions dn;
  int M = 16;
  int M_ref = 40;
  double tol_M = 1e-10;
  std::vector<double> s_grid{1.0, 2.0, 4.0};
};

struct RadiusScan {
  std::vector<RadiusRow> rows;
  std::vector<TruncationRow> truncation;
};

// Series terms for each amplitude a of a * h_direction, and the smallest
// order M(s) with ||G^{(M)} - G||_s <= tol ||G||_s for every larger order.
RadiusScan radius_scan(const BoundaryField& h_direction, const std::vector<double>& amplitudes,
                       const BoundaryField& psi, const RadiusScanOptions& opt = {});

struct TameSample {
  BoundaryField h, psi;
};

struct TameRow {
  int sample;
  double s;
  double G_s, psi_s1, psi_s01, h_s1;
};

struct TameFit {
  double s;
  double C0, Cs;
  int violations;
};

struct TameReport {
  std::vector<TameRow> rows;
  std::vector<TameFit> fits;
};

// Fits ||G||_s <= C0 ||psi||_{s+1} + [s > s0] Cs (1 + ||h||_{s+1}) ||psi||_{s0+1}.
TameReport tame_scan(const std::vector<TameSample>& samples, const std::vector<double>& s_grid,
                     double s0, const DnOptions& opt = {});

// The two-constant fit used above for one s: minimizes the summed relative
// slack over (C0, Cs) >= 0 subject to every sample satisfying the bound,
// preferring smaller Cs on ties.
TameFit fit_tame_constants(const std::vector<double>& G, const std::vector<double>& a,
                           const std::vector<double>& b, bool allow_cs);

}  // namespace dnsphere
