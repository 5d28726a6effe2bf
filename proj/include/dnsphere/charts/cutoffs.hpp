#pragma once

namespace dnsphere {

// rho_k = 1 - (delta/4) sum_{l<=k} 2^{-l}, zeta_k = phi((|x| - rho_{k+1}) / (rho_k - rho_{k+1})).
// Starred variants use delta/2.
class CutoffFamily {
 public:
  CutoffFamily(double delta, int k_max);

  double delta() const { return delta_; }
  int k_max() const { return k_max_; }
  double rho(int k, bool starred = false) const;
  double zeta(int k, double radius, bool starred = false) const;
  double zeta_derivative(int k, double radius, bool starred = false) const;

 private:
  double delta_;
  int k_max_;
  void check(int k) const;
};

}  // namespace dnsphere
