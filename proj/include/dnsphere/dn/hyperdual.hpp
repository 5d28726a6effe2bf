#pragma once

#include <cmath>

namespace dnsphere {

// Hyper-dual number a + b e1 + c e2 + d e1e2 with e1^2 = e2^2 = 0: carries a
// value, two first directional derivatives and the mixed second derivative.
struct HyperDual {
  double a = 0, b = 0, c = 0, d = 0;
  HyperDual() = default;
  HyperDual(double v) : a(v) {}  // NOLINT
  HyperDual(double v, double e1, double e2, double e12) : a(v), b(e1), c(e2), d(e12) {}

  HyperDual& operator+=(const HyperDual& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) {
    *this = HyperDual(a * o.a, a * o.b + b * o.a, a * o.c + c * o.a,
                      a * o.d + b * o.c + c * o.b + d * o.a);
    return *this;
  }
};

inline HyperDual chain(const HyperDual& x, double f, double f1, double f2) {
  return {f, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
}

inline HyperDual operator+(HyperDual x, const HyperDual& y) { return x += y; }
inline HyperDual operator-(HyperDual x, const HyperDual& y) { return x -= y; }
inline HyperDual operator*(HyperDual x, const HyperDual& y) { return x *= y; }
inline HyperDual operator-(const HyperDual& x) { return {-x.a, -x.b, -x.c, -x.d}; }
inline HyperDual inv(const HyperDual& x) {
  const double i = 1.0 / x.a;
  return chain(x, i, -i * i, 2.0 * i * i * i);
}
inline HyperDual operator/(const HyperDual& x, const HyperDual& y) { return x * inv(y); }
inline HyperDual sqrt(const HyperDual& x) {
  const double s = std::sqrt(x.a);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.a));
}
inline HyperDual pow(const HyperDual& x, int n) {
  if (n == 0) return HyperDual(1.0);
  return chain(x, std::pow(x.a, n), n * std::pow(x.a, n - 1),
               n * (n - 1.0) * std::pow(x.a, n - 2));
}

inline double pow(double x, int n) { return std::pow(x, n); }
inline double sqrt(double x) { return std::sqrt(x); }

inline double value_of(double x) { return x; }
inline double value_of(const HyperDual& x) { return x.a; }

}  // namespace dnsphere
