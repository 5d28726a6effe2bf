#include "dnsphere/spectral/quadrature.hpp"

#include <cmath>
#include <vector>

#include "dnsphere/error.hpp"

namespace dnsphere {

namespace {

// P_n and P_n' at x by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = (std::abs(1.0 - x * x) < 1e-300) ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ResolutionError("gauss_legendre: need at least one node");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0, dp = 1;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_pair(n, x, p, dp);
    const int k = n - 1 - i;
    r.nodes[k] = 0.5 * (b - a) * x + 0.5 * (b + a);
    r.weights[k] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

Rule1D gauss_lobatto(int n, double a, double b) {
  if (n < 2) throw ResolutionError("gauss_lobatto: need at least two nodes");
  const int N = n - 1;
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Interior nodes are roots of P_N'; Chebyshev-Lobatto start.
    double x = -std::cos(M_PI * i / N);
    if (i > 0 && i < N) {
      for (int it = 0; it < 100; ++it) {
        double p, dp;
        legendre_pair(N, x, p, dp);
        // P_N'' from the Legendre ODE.
        const double d2p = (2.0 * x * dp - N * (N + 1.0) * p) / (1.0 - x * x);
        const double dx = dp / d2p;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
    }
    double p, dp;
    legendre_pair(N, x, p, dp);
    r.nodes[i] = 0.5 * (b - a) * x + 0.5 * (b + a);
    r.weights[i] = (b - a) / (N * (N + 1.0) * p * p);
  }
  return r;
}

void legendre_table(int n, double x, double* p, double* dp) {
  if (n <= 0) return;
  p[0] = 1.0;
  dp[0] = 0.0;
  if (n == 1) return;
  p[1] = x;
  dp[1] = 1.0;
  for (int k = 2; k < n; ++k) {
    p[k] = ((2.0 * k - 1.0) * x * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
    dp[k] = dp[k - 2] + (2.0 * k - 1.0) * p[k - 1];
  }
}

void jacobi_table(int n, double al, double be, double x, double* p,
                  double* dp) {
  if (n <= 0) return;
  // Values for (al, be) and, for the derivative, (al+1, be+1).
  auto fill = [n](double a, double b, double t, double* out) {
    out[0] = 1.0;
    if (n == 1) return;
    out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
    for (int k = 2; k < n; ++k) {
      const double c = 2.0 * k + a + b;
      const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
      const double a2 = (c - 1.0) * (a * a - b * b);
      const double a3 = (c - 2.0) * (c - 1.0) * c;
      const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
      out[k] = ((a2 + a3 * t) * out[k - 1] - a4 * out[k - 2]) / a1;
    }
  };
  fill(al, be, x, p);
  std::vector<double> q(n);
  fill(al + 1.0, be + 1.0, x, q.data());
  dp[0] = 0.0;
  for (int k = 1; k < n; ++k) dp[k] = 0.5 * (k + al + be + 1.0) * q[k - 1];
}

NodalInterpolator::NodalInterpolator(const Eigen::VectorXd& nodes, double a,
                                     double b)
    : nodes_(nodes), a_(a), b_(b) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd V(n, n);
  std::vector<double> p(n), dp(n);
  for (int i = 0; i < n; ++i) {
    const double x = (2.0 * nodes[i] - a - b) / (b - a);
    legendre_table(n, x, p.data(), dp.data());
    for (int j = 0; j < n; ++j) V(i, j) = p[j];
  }
  inv_vandermonde_ = V.partialPivLu().inverse();
}

Eigen::RowVectorXd NodalInterpolator::value_row(double t) const {
  const int n = size();
  std::vector<double> p(n), dp(n);
  legendre_table(n, (2.0 * t - a_ - b_) / (b_ - a_), p.data(), dp.data());
  Eigen::Map<Eigen::RowVectorXd> pr(p.data(), n);
  return pr * inv_vandermonde_;
}

Eigen::RowVectorXd NodalInterpolator::derivative_row(double t) const {
  const int n = size();
  std::vector<double> p(n), dp(n);
  legendre_table(n, (2.0 * t - a_ - b_) / (b_ - a_), p.data(), dp.data());
  Eigen::Map<Eigen::RowVectorXd> dr(dp.data(), n);
  return (2.0 / (b_ - a_)) * dr * inv_vandermonde_;
}

Eigen::MatrixXd NodalInterpolator::value_matrix(
    const Eigen::VectorXd& t) const {
  Eigen::MatrixXd M(t.size(), size());
  for (int i = 0; i < t.size(); ++i) M.row(i) = value_row(t[i]);
  return M;
}

Eigen::MatrixXd NodalInterpolator::derivative_matrix(
    const Eigen::VectorXd& t) const {
  Eigen::MatrixXd M(t.size(), size());
  for (int i = 0; i < t.size(); ++i) M.row(i) = derivative_row(t[i]);
  return M;
}

}  // namespace dnsphere
