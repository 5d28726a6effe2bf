#include "dnsphere/charts/cutoffs.hpp"

#include <cmath>

#include "dnsphere/charts/atlas.hpp"
#include "dnsphere/error.hpp"

namespace dnsphere {

CutoffFamily::CutoffFamily(double delta, int k_max) : delta_(delta), k_max_(k_max) {
  if (!(delta > 0.0 && delta < 0.125)) throw InputError("cutoffs: delta must lie in (0, 1/8)");
  if (k_max < 0) throw InputError("cutoffs: k_max < 0");
}

void CutoffFamily::check(int k) const {
  if (k < 0 || k > k_max_) throw InputError("cutoffs: k out of range");
}

double CutoffFamily::rho(int k, bool starred) const {
  const double a = starred ? delta_ / 2.0 : delta_ / 4.0;
  return 1.0 - a * (2.0 - std::ldexp(1.0, -k));
}

double CutoffFamily::zeta(int k, double radius, bool starred) const {
  check(k);
  const double hi = rho(k, starred), lo = rho(k + 1, starred);
  return smooth_step((radius - lo) / (hi - lo));
}

double CutoffFamily::zeta_derivative(int k, double radius, bool starred) const {
  check(k);
  const double hi = rho(k, starred), lo = rho(k + 1, starred);
  return smooth_step_derivative((radius - lo) / (hi - lo)) / (hi - lo);
}

}  // namespace dnsphere
