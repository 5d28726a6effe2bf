#pragma once

#include <functional>
#include <vector>

namespace dnsphere {

// Ordinary: u^(xi) = int u e^{-2 pi i x.xi} dx, multipliers in xi.
// Angular: the same multipliers evaluated at 2 pi xi.
enum class FourierConvention { Ordinary, Angular };

// Samples on the periodic box prod [-a_k, a_k), node i at -a_k + i (2 a_k / n_k).
// The last axis varies fastest.
struct BoxField {
  std::vector<int> n;
  std::vector<double> half_width;
  std::vector<double> values;

  int rank() const { return static_cast<int>(n.size()); }
  double spacing(int k) const { return 2.0 * half_width[k] / n[k]; }
  double coordinate(int k, int i) const { return -half_width[k] + i * spacing(k); }
  long total() const;

  static BoxField sample(const std::vector<int>& n, const std::vector<double>& half_width,
                         const std::function<double(const double*)>& fn);
};

// sqrt( int weight(xi) |u^(xi)|^2 dxi ) with the box frequencies xi_k = m / (2 a_k).
double multiplier_norm(const BoxField& u, const std::function<double(const double*)>& weight);

// Several weights from one transform.
std::vector<double> multiplier_norms(
    const BoxField& u, const std::vector<std::function<double(const double*)>>& weights);

// Weights tabulated once for a fixed box shape; norms() then costs one transform.
class MultiplierSet {
 public:
  MultiplierSet(const std::vector<int>& n, const std::vector<double>& half_width,
                const std::vector<std::function<double(const double*)>>& weights);
  // Throws InputError when u has a different shape.
  std::vector<double> norms(const BoxField& u) const;
  size_t size() const { return tables_.size(); }

 private:
  std::vector<int> n_;
  std::vector<double> half_width_;
  std::vector<std::vector<double>> tables_;
};

double hs_norm(const BoxField& u, double s, FourierConvention conv = FourierConvention::Ordinary);
// Non-isotropic norm, weight (1 + |xi'|^2)^r (1 + |xi|^2)^s; the last axis is normal.
double hsr_norm(const BoxField& u, double s, double r,
                FourierConvention conv = FourierConvention::Ordinary);

// Largest |value| on the first node of each axis, where periodic copies meet.
double box_edge_max(const BoxField& u);

// Samples on prod [-a_k, a_k) x [0, H], normal nodes x_n = j H / n_normal, j = 0..n_normal.
struct HalfSpaceField {
  std::vector<int> n_tan;
  std::vector<double> half_width;
  double height = 1.0;
  int n_normal = 16;
  std::vector<double> values;

  int dim() const { return static_cast<int>(n_tan.size()) + 1; }
  double normal_spacing() const { return height / n_normal; }
  long tangential_total() const;

  static HalfSpaceField sample(const std::vector<int>& n_tan, const std::vector<double>& half_width,
                               double height, int n_normal,
                               const std::function<double(const double*)>& fn);

  // Tangential slice at normal node j.
  BoxField slice(int j) const;
  // Largest |value| on the tangential edges and at x_n = H.
  double support_certificate() const;
};

// Extension to the box with normal axis [-H, H):
//   s = 0 by zero, s = 1 by reflection w(x', |x_n|),
//   s = 2 by 3 w(x', -x_n) - 2 w(x', -2 x_n).
BoxField extend(const HalfSpaceField& w, int s);

// Throws SupportError when the certificate exceeds 1e-13 max(1, sup |w|),
// InputError on non-finite samples.
void require_support(const HalfSpaceField& w);

// Norm of the extension; throws SupportError when the certificate exceeds
// 1e-13 max(1, sup |w|).
double hsr_norm(const HalfSpaceField& w, int s, double r,
                FourierConvention conv = FourierConvention::Ordinary);

}  // namespace dnsphere
