#pragma once

#include "dnsphere/dn/hyperdual.hpp"

namespace dnsphere {

// Pointwise matrix of the transformed problem at x, from tilde h and its
// gradient g (n entries). Writes the n*n row-major entries of P.
template <class T>
void matrix_P(int n, const T& ht, const T* g, const double* x, T* P) {
  T xg(0.0), g2(0.0);
  for (int i = 0; i < n; ++i) {
    xg += x[i] * g[i];
    g2 += g[i] * g[i];
  }
  const T ob = T(1.0) + ht + xg;
  const T pref = pow(T(1.0) + ht, n - 3);
  const T q = g2 / ob;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T e = T(-1.0) * (g[i] * x[j] + x[i] * g[j]) + q * (x[i] * x[j]);
      if (i == j) e += ob;
      P[i * n + j] = pref * e;
    }
}

// Boundary formula of the operator at one node. gh, gp: tangential gradients
// of h and psi; ur = <grad u, x>; xg = <x, grad tilde h>.
template <class T>
T dn_boundary_value(int n, const T& h, const T& xg, const T* gh, const double* gp,
                    const T& ur) {
  T gh2(0.0), gpgh(0.0);
  for (int i = 0; i < n; ++i) {
    gh2 += gh[i] * gh[i];
    gpgh += gh[i] * gp[i];
  }
  const T oph = T(1.0) + h;
  const T J = sqrt(oph * oph + gh2);
  return J * ur / (oph * (oph + xg)) - gpgh / (J * oph);
}

}  // namespace dnsphere
