#include "dnsphere/spectral/modes.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "dnsphere/error.hpp"

namespace dnsphere {

int mode_count(int dim, int L) {
  if (L < 0) return 0;
  if (dim == 2) return 2 * L + 1;
  if (dim == 3) return (L + 1) * (L + 1);
  throw InputError("only dimensions 2 and 3 are supported");
}

int mode_degree(int dim, int i) {
  if (dim == 2) return (i + 1) / 2;
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(i)) + 1e-9));
}

double mode_eigenvalue(int dim, int i) {
  const double d = mode_degree(dim, i);
  return d * (d + dim - 2.0);
}

int circle_index(int k) { return k > 0 ? 2 * k - 1 : (k < 0 ? -2 * k : 0); }

int sphere_index(int l, int m) { return l * l + l + m; }

void sphere_legendre(int L, double c, double s, double* p, double* dp,
                     double* q) {
  p[0] = 1.0 / std::sqrt(4.0 * M_PI);
  q[0] = 0.0;
  for (int m = 0; m <= L; ++m) {
    if (m > 0) {
      const double k = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      const double prev = p[tri_index(m - 1, m - 1)];
      p[tri_index(m, m)] = k * s * prev;
      q[tri_index(m, m)] = k * prev;
    }
    if (m + 1 <= L) {
      const double k = std::sqrt(2.0 * m + 3.0);
      p[tri_index(m + 1, m)] = k * c * p[tri_index(m, m)];
      q[tri_index(m + 1, m)] = k * c * q[tri_index(m, m)];
    }
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) /
                                 (4.0 * (l - 1) * (l - 1) - 1.0));
      p[tri_index(l, m)] = a * (c * p[tri_index(l - 1, m)] - b * p[tri_index(l - 2, m)]);
      q[tri_index(l, m)] = a * (c * q[tri_index(l - 1, m)] - b * q[tri_index(l - 2, m)]);
    }
  }
  for (int l = 0; l <= L; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double up = (m + 1 <= l) ? p[tri_index(l, m + 1)] : 0.0;
      if (m == 0) {
        dp[tri_index(l, 0)] = -std::sqrt(double(l) * (l + 1)) * up;
      } else {
        const double down = p[tri_index(l, m - 1)];
        dp[tri_index(l, m)] =
            0.5 * (std::sqrt(double(l + m) * (l - m + 1)) * down -
                   std::sqrt(double(l - m) * (l + m + 1)) * up);
      }
    }
  }
}

Eigen::VectorXd eval_modes(int dim, int L, const Eigen::VectorXd& x) {
  const int M = mode_count(dim, L);
  Eigen::VectorXd y(M);
  if (dim == 2) {
    const double t = std::atan2(x[1], x[0]);
    y[0] = 1.0 / std::sqrt(2.0 * M_PI);
    for (int k = 1; k <= L; ++k) {
      y[2 * k - 1] = std::cos(k * t) / std::sqrt(M_PI);
      y[2 * k] = std::sin(k * t) / std::sqrt(M_PI);
    }
    return y;
  }
  const int T = (L + 1) * (L + 2) / 2;
  std::vector<double> p(T), dp(T), q(T);
  const double c = x[2], s = std::hypot(x[0], x[1]);
  const double ph = std::atan2(x[1], x[0]);
  sphere_legendre(L, c, s, p.data(), dp.data(), q.data());
  for (int l = 0; l <= L; ++l) {
    y[sphere_index(l, 0)] = p[tri_index(l, 0)];
    for (int m = 1; m <= l; ++m) {
      const double v = std::sqrt(2.0) * p[tri_index(l, m)];
      y[sphere_index(l, m)] = v * std::cos(m * ph);
      y[sphere_index(l, -m)] = v * std::sin(m * ph);
    }
  }
  return y;
}

Eigen::MatrixXd eval_mode_gradients(int dim, int L, const Eigen::VectorXd& x) {
  const int M = mode_count(dim, L);
  Eigen::MatrixXd G(dim, M);
  if (dim == 2) {
    const double t = std::atan2(x[1], x[0]);
    const Eigen::Vector2d tau(-std::sin(t), std::cos(t));
    G.col(0).setZero();
    for (int k = 1; k <= L; ++k) {
      G.col(2 * k - 1) = (-k * std::sin(k * t) / std::sqrt(M_PI)) * tau;
      G.col(2 * k) = (k * std::cos(k * t) / std::sqrt(M_PI)) * tau;
    }
    return G;
  }
  const int T = (L + 1) * (L + 2) / 2;
  std::vector<double> p(T), dp(T), q(T);
  const double c = x[2], s = std::hypot(x[0], x[1]);
  const double ph = std::atan2(x[1], x[0]);
  sphere_legendre(L, c, s, p.data(), dp.data(), q.data());
  const Eigen::Vector3d et(c * std::cos(ph), c * std::sin(ph), -s);
  const Eigen::Vector3d ep(-std::sin(ph), std::cos(ph), 0.0);
  for (int l = 0; l <= L; ++l) {
    G.col(sphere_index(l, 0)) = dp[tri_index(l, 0)] * et;
    for (int m = 1; m <= l; ++m) {
      const double r2 = std::sqrt(2.0);
      const double cm = std::cos(m * ph), sm = std::sin(m * ph);
      const double d = r2 * dp[tri_index(l, m)], qq = r2 * q[tri_index(l, m)];
      G.col(sphere_index(l, m)) = d * cm * et - m * qq * sm * ep;
      G.col(sphere_index(l, -m)) = d * sm * et + m * qq * cm * ep;
    }
  }
  return G;
}

}  // namespace dnsphere
