#include "dnsphere/charts/atlas.hpp"

#include <cmath>
#include <random>

#include "dnsphere/error.hpp"

namespace dnsphere {

namespace {

double expm(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double expm_d(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

Eigen::VectorXd fibonacci_point(int i, int n) {
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * i + 1.0) / n;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  Eigen::VectorXd p(3);
  p << rho * std::cos(golden * i), rho * std::sin(golden * i), z;
  return p;
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = expm(t), b = expm(1.0 - t);
  return a / (a + b);
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = expm(t), b = expm(1.0 - t);
  const double da = expm_d(t), db = -expm_d(1.0 - t);
  return (da * b - a * db) / ((a + b) * (a + b));
}

double cutoff_one_two(double t) { return 1.0 - smooth_step(t - 1.0); }
double cutoff_one_two_derivative(double t) { return -smooth_step_derivative(t - 1.0); }

Eigen::VectorXd chart_f(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  if (!(x[n - 1] < 0.0)) throw InputError("chart_f: need x_n < 0");
  Eigen::VectorXd y(n);
  y.head(n - 1) = -x.head(n - 1) / x[n - 1];
  y[n - 1] = 1.0 - x.norm();
  return y;
}

Eigen::VectorXd chart_g(const Eigen::VectorXd& y) {
  const int n = static_cast<int>(y.size());
  if (!(y[n - 1] < 1.0)) throw InputError("chart_g: need y_n < 1");
  const double s = (1.0 - y[n - 1]) / std::sqrt(1.0 + y.head(n - 1).squaredNorm());
  Eigen::VectorXd x(n);
  x.head(n - 1) = s * y.head(n - 1);
  x[n - 1] = -s;
  return x;
}

Eigen::MatrixXd rotation_to_south(const Eigen::VectorXd& p) {
  const int n = static_cast<int>(p.size());
  const Eigen::VectorXd a = p.normalized();
  // Northern points are first turned by pi in the (x_1, x_n) plane, so the
  // 1 / (1 + a.b) factor below stays at most 1.
  Eigen::MatrixXd F = Eigen::MatrixXd::Identity(n, n);
  if (a[n - 1] > 0.0) {
    F(0, 0) = -1.0;
    F(n - 1, n - 1) = -1.0;
  }
  const Eigen::VectorXd fa = F * a;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[n - 1] = -1.0;
  const double c = fa.dot(b);
  const Eigen::MatrixXd K = b * fa.transpose() - fa * b.transpose();
  return (Eigen::MatrixXd::Identity(n, n) + K + K * K / (1.0 + c)) * F;
}

Atlas Atlas::create(int dim, const AtlasOptions& opt) {
  if (dim != 2 && dim != 3) throw InputError("atlas: dim must be 2 or 3");
  if (!(opt.delta > 0.0 && opt.delta < 0.125)) throw InputError("atlas: delta must lie in (0, 1/8)");
  if (!(opt.bump_scale > 0.9 && opt.bump_scale < 1.0)) throw InputError("atlas: bump_scale in (0.9, 1)");
  Atlas at;
  at.dim_ = dim;
  at.delta_ = opt.delta;
  at.bump_radius_ = 2.0 * opt.delta * opt.bump_scale;
  // Every point of the sphere must lie within chord 1.5 delta of a center,
  // which keeps the annulus inside the bump supports.
  const double chord = 1.5 * opt.delta;
  if (dim == 2) {
    const double theta = 2.0 * std::asin(chord / 2.0);
    const int N = static_cast<int>(std::ceil(M_PI / theta));
    for (int i = 0; i < N; ++i) {
      Eigen::VectorXd p(2);
      p << std::cos(2.0 * M_PI * i / N), std::sin(2.0 * M_PI * i / N);
      at.p_.push_back(p);
    }
  } else {
    const int Nc = opt.candidates;
    // Nearest-candidate distance on a Fibonacci lattice stays below this.
    const double spacing = 1.1 * std::sqrt(4.0 * M_PI / Nc);
    const double c2 = std::pow(chord - spacing, 2);
    if (chord - spacing <= 0.0) throw InputError("atlas: too few cover candidates");
    for (int i = 0; i < Nc; ++i) {
      const Eigen::VectorXd q = fibonacci_point(i, Nc);
      bool covered = false;
      for (const auto& p : at.p_)
        if ((p - q).squaredNorm() < c2) { covered = true; break; }
      if (!covered) at.p_.push_back(q);
    }
  }
  const int N = at.size();
  at.R_.resize(N);
  at.nb_.resize(N);
  for (int j = 0; j < N; ++j) at.R_[j] = rotation_to_south(at.p_[j]);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l)
      if (l != j && (at.p_[l] - at.p_[j]).norm() < 4.0 * opt.delta) at.nb_[j].push_back(l);
  return at;
}

double Atlas::r_delta() const {
  const double d = delta_;
  return 2.0 * d * std::sqrt(1.0 - d * d) / (1.0 - 2.0 * d * d);
}

double Atlas::bump(int j, const Eigen::VectorXd& x) const {
  const double t2 = (x - p_[j]).squaredNorm() / (bump_radius_ * bump_radius_);
  if (t2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t2));
}

double Atlas::interior_bump(const Eigen::VectorXd& x) const {
  return smooth_step((1.0 - delta_ - x.norm()) / (0.5 * delta_));
}

double Atlas::denominator(const Eigen::VectorXd& x, const std::vector<int>& act) const {
  double s = interior_bump(x);
  for (int i : act) s += bump(i, x);
  return s;
}

std::vector<int> Atlas::active_charts(const Eigen::VectorXd& x) const {
  std::vector<int> act;
  const double r2 = bump_radius_ * bump_radius_;
  for (int j = 0; j < size(); ++j)
    if ((x - p_[j]).squaredNorm() < r2) act.push_back(j);
  return act;
}

double Atlas::psi(int j, const Eigen::VectorXd& x) const {
  const double bj = bump(j, x);
  if (bj == 0.0) return 0.0;
  double s = interior_bump(x) + bj;
  for (int i : nb_[j]) s += bump(i, x);
  return bj / s;
}

double Atlas::psi_interior(const Eigen::VectorXd& x) const {
  const double b0 = interior_bump(x);
  if (b0 == 0.0) return 0.0;
  return b0 / denominator(x, active_charts(x));
}

Eigen::VectorXd Atlas::psi_all(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
  const std::vector<int> act = active_charts(x);
  if (act.empty()) return out;
  const double s = denominator(x, act);
  for (int i : act) out[i] = bump(i, x) / s;
  return out;
}

Eigen::VectorXd Atlas::f(int j, const Eigen::VectorXd& x) const { return chart_f(R_[j] * x); }
Eigen::VectorXd Atlas::g(int j, const Eigen::VectorXd& y) const {
  return R_[j].transpose() * chart_g(y);
}

bool Atlas::overlapping(int l, int j) const {
  return (p_[l] - p_[j]).norm() < 4.0 * delta_;
}

TransitionBlocks Atlas::blocks(int l, int j) const {
  if (!overlapping(l, j)) throw SupportError("transition: charts do not overlap");
  const int n = dim_;
  const Eigen::MatrixXd M = R_[l] * R_[j].transpose();
  TransitionBlocks t;
  t.A = M.topLeftCorner(n - 1, n - 1);
  t.b = M.topRightCorner(n - 1, 1);
  t.c = M.bottomLeftCorner(1, n - 1);
  t.d = M(n - 1, n - 1);
  return t;
}

Eigen::VectorXd Atlas::transition_direct(int l, int j, const Eigen::VectorXd& y) const {
  if (!overlapping(l, j)) throw SupportError("transition: charts do not overlap");
  return f(l, g(j, y));
}

Eigen::VectorXd Atlas::transition_formula(int l, int j, const Eigen::VectorXd& yp) const {
  const TransitionBlocks t = blocks(l, j);
  return (-t.b + t.A * yp) / (t.d - t.c.dot(yp));
}

Eigen::VectorXd affine_transition(const TransitionBlocks& t, const Eigen::VectorXd& yp) {
  const double lam = 1.0 / t.d;
  return -lam * t.b + lam * lam * (t.A * t.d - t.b * t.c) * yp;
}

Eigen::VectorXd extended_transition(const TransitionBlocks& t, double delta, const Eigen::VectorXd& yp) {
  const double lam = 1.0 / t.d;
  const double phi = cutoff_one_two(yp.norm() / (4.0 * delta));
  double q = 1.0;
  if (phi > 0.0) {
    const double z = lam * t.c.dot(yp);
    q += phi * z / (1.0 - z);
  }
  return -lam * t.b + lam * lam * (t.A * t.d - t.b * t.c) * yp * q;
}

Eigen::VectorXd Atlas::transition_affine(int l, int j, const Eigen::VectorXd& yp) const {
  return affine_transition(blocks(l, j), yp);
}

Eigen::VectorXd Atlas::transition_extended(int l, int j, const Eigen::VectorXd& yp) const {
  return extended_transition(blocks(l, j), delta_, yp);
}

Eigen::MatrixXd Atlas::transition_extended_jacobian(int l, int j, const Eigen::VectorXd& yp) const {
  const TransitionBlocks t = blocks(l, j);
  const int m = dim_ - 1;
  const double lam = 1.0 / t.d;
  const Eigen::MatrixXd B = lam * lam * (t.A * t.d - t.b * t.c);
  const double rn = yp.norm();
  const double phi = cutoff_one_two(rn / (4.0 * delta_));
  const double z = lam * t.c.dot(yp);
  const double S = z / (1.0 - z);
  Eigen::VectorXd gphi = Eigen::VectorXd::Zero(m);
  if (rn > 0.0) gphi = cutoff_one_two_derivative(rn / (4.0 * delta_)) / (4.0 * delta_ * rn) * yp;
  const Eigen::VectorXd gS = lam * t.c.transpose() / ((1.0 - z) * (1.0 - z));
  const Eigen::VectorXd gq = gphi * S + phi * gS;
  const double q = 1.0 + phi * S;
  return B * (q * Eigen::MatrixXd::Identity(m, m) + yp * gq.transpose());
}

NewtonInverse Atlas::transition_extended_inverse(int l, int j, const Eigen::VectorXd& z,
                                                 double tol, int max_iter) const {
  const TransitionBlocks t = blocks(l, j);
  const double lam = 1.0 / t.d;
  const Eigen::MatrixXd B = lam * lam * (t.A * t.d - t.b * t.c);
  NewtonInverse out;
  out.y = B.partialPivLu().solve(z + lam * t.b);
  const double scale = std::max(1.0, z.norm());
  for (int it = 0; it <= max_iter; ++it) {
    const Eigen::VectorXd res = transition_extended(l, j, out.y) - z;
    out.residual = res.norm();
    out.iterations = it;
    if (out.residual <= tol * scale) {
      out.converged = true;
      break;
    }
    out.y -= transition_extended_jacobian(l, j, out.y).partialPivLu().solve(res);
  }
  return out;
}

PartitionCheck check_partition(const Atlas& atlas, int samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud;
  const int n = atlas.dim();
  const double delta = atlas.delta();
  PartitionCheck pc;
  pc.samples = samples;
  pc.min_psi = 1.0;
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x[k] = nd(rng);
    x.normalize();
    // Half the samples on the annulus, half anywhere in the closed ball.
    const double r = (i % 2 == 0) ? 1.0 - delta * ud(rng) : std::pow(ud(rng), 1.0 / n);
    x *= r;
    if (i % 4 == 0) x *= (1.0 - delta) / r;  // inner rim exactly
    const Eigen::VectorXd ps = atlas.psi_all(x);
    const double total = ps.sum() + atlas.psi_interior(x);
    pc.max_total_defect = std::max(pc.max_total_defect, std::abs(total - 1.0));
    if (x.norm() >= 1.0 - delta - 1e-15) {
      pc.max_sum_defect = std::max(pc.max_sum_defect, std::abs(ps.sum() - 1.0));
    }
    pc.min_psi = std::min(pc.min_psi, ps.minCoeff());
    for (int j = 0; j < atlas.size(); ++j)
      if (ps[j] != 0.0 && (x - atlas.center(j)).norm() >= 2.0 * delta)
        pc.max_support_leak = std::max(pc.max_support_leak, ps[j]);
  }
  return pc;
}

InverseEvidence check_transition_inverses(const Atlas& atlas, double tol) {
  const int m = atlas.dim() - 1;
  const double delta = atlas.delta();
  InverseEvidence ev;
  for (int j = 0; j < atlas.size(); ++j)
    for (int l : atlas.neighbors(j)) {
      if (l == j || !atlas.overlapping(l, j)) continue;
      ++ev.pairs;
      for (double rho : {0.0, 1.0, 2.0, 4.0, 6.0, 8.0, 12.0})
        for (int e = 0; e < 2 * m; ++e) {
          Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
          y[e % m] = (e < m ? 1.0 : -1.0) * rho * delta;
          const Eigen::VectorXd z = atlas.transition_extended(l, j, y);
          const NewtonInverse inv = atlas.transition_extended_inverse(l, j, z, tol);
          const double err = (inv.y - y).norm();
          ++ev.points;
          ev.max_iterations = std::max(ev.max_iterations, inv.iterations);
          ev.max_residual = std::max(ev.max_residual, inv.residual / std::max(1.0, z.norm()));
          ev.max_preimage_error = std::max(ev.max_preimage_error, err);
          if (!inv.converged || err > 1e-10) ++ev.failures;
          if (rho == 0.0) break;
        }
    }
  return ev;
}

}  // namespace dnsphere
