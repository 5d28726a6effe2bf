#include "dnsphere/charts/chart_norms.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

namespace {

constexpr double kCacheLimit = 2.0e7;

}  // namespace

ChartNormPlan::ChartNormPlan(const Atlas& atlas, int L, const ChartGridOptions& opt)
    : atlas_(&atlas), L_(L), opt_(opt) {
  const int n = atlas.dim();
  const int m = n - 1;
  n_.assign(m, opt.n_tan);
  a_.assign(m, opt.box_factor * atlas.r_delta());
  const int M = mode_count(n, L);
  long total = 0;
  charts_.resize(atlas.size());
  for (int j = 0; j < atlas.size(); ++j) {
    Chart& c = charts_[j];
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> ps;
    BoxField probe{n_, a_, {}};
    std::vector<int> idx(m, 0);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (long i = 0; i < probe.total(); ++i) {
      for (int k = 0; k < m; ++k) y[k] = probe.coordinate(k, idx[k]);
      const Eigen::VectorXd x = atlas.g(j, y);
      const double p = atlas.psi(j, x);
      if (p != 0.0) {
        for (int k = 0; k < m; ++k)
          if (idx[k] == 0) throw SupportError("chart_norm: box too small for the chart support");
        c.index.push_back(i);
        pts.push_back(x);
        ps.push_back(p);
      }
      for (int k = m - 1; k >= 0; --k) {
        if (++idx[k] < n_[k]) break;
        idx[k] = 0;
      }
    }
    c.points.resize(n, pts.size());
    c.psi.resize(ps.size());
    for (size_t q = 0; q < pts.size(); ++q) {
      c.points.col(q) = pts[q];
      c.psi[q] = ps[q];
    }
    total += static_cast<long>(pts.size());
  }
  if (static_cast<double>(total) * M <= kCacheLimit) {
    for (auto& c : charts_) {
      c.modes.resize(c.psi.size(), M);
      for (long q = 0; q < c.psi.size(); ++q)
        c.modes.row(q) = c.psi[q] * eval_modes(n, L, c.points.col(q)).transpose();
    }
  }
}

std::vector<double> ChartNormPlan::norms(const BoundaryField& f, const std::vector<double>& s) const {
  if (f.dim() != atlas_->dim()) throw InputError("chart_norm: dimension mismatch");
  if (f.L() > L_) throw InputError("chart_norm: field degree above the plan");
  const BoundaryField fl = f.resized(L_);
  const int m = atlas_->dim() - 1;
  const double c2 = opt_.convention == FourierConvention::Angular ? 4.0 * M_PI * M_PI : 1.0;
  std::vector<std::function<double(const double*)>> weights;
  for (double sv : s)
    weights.push_back([=](const double* xi) {
      double q = 0.0;
      for (int k = 0; k < m; ++k) q += xi[k] * xi[k];
      return std::pow(1.0 + c2 * q, sv);
    });
  std::vector<double> out(s.size(), 0.0);
  BoxField box{n_, a_, {}};
  box.values.assign(box.total(), 0.0);
  for (const Chart& c : charts_) {
    std::fill(box.values.begin(), box.values.end(), 0.0);
    if (c.modes.size() > 0) {
      const Eigen::VectorXd v = c.modes * fl.coeffs();
      for (size_t q = 0; q < c.index.size(); ++q) box.values[c.index[q]] = v[q];
    } else {
      for (size_t q = 0; q < c.index.size(); ++q)
        box.values[c.index[q]] = c.psi[q] * eval(fl, c.points.col(q));
    }
    const std::vector<double> nj = multiplier_norms(box, weights);
    for (size_t w = 0; w < s.size(); ++w) out[w] += nj[w];
  }
  return out;
}

double chart_norm(const BoundaryField& f, const Atlas& atlas, double s, const ChartGridOptions& opt) {
  return ChartNormPlan(atlas, f.L(), opt).norm(f, s);
}

HalfSpaceField chart_piece(const BallField& u, const Atlas& atlas, int j,
                           const HalfBoxOptions& opt) {
  const int n = atlas.dim();
  const int m = n - 1;
  const double a = opt.box_factor * atlas.r_delta();
  const double H = opt.height_factor * atlas.delta();
  Eigen::VectorXd y(n);
  return HalfSpaceField::sample(std::vector<int>(m, opt.n_tan), std::vector<double>(m, a), H,
                                opt.n_normal, [&](const double* yy) {
                                  for (int q = 0; q < n; ++q) y[q] = yy[q];
                                  const Eigen::VectorXd x = atlas.g(j, y);
                                  const double p = atlas.psi(j, x);
                                  if (p == 0.0) return 0.0;
                                  return p * eval(u, x);
                                });
}

ChartSampler::ChartSampler(const Atlas& atlas, const HalfBoxOptions& opt) {
  const int n = atlas.dim();
  const int m = n - 1;
  const double a = opt.box_factor * atlas.r_delta();
  const double H = opt.height_factor * atlas.delta();
  shape_ = HalfSpaceField::sample(std::vector<int>(m, opt.n_tan), std::vector<double>(m, a), H,
                                  opt.n_normal, [](const double*) { return 0.0; });
  Eigen::VectorXd y(n);
  for (int j = 0; j < atlas.size(); ++j) {
    Chart c;
    std::vector<Eigen::VectorXd> pts;
    long i = 0;
    HalfSpaceField::sample(shape_.n_tan, shape_.half_width, H, opt.n_normal, [&](const double* yy) {
      for (int q = 0; q < n; ++q) y[q] = yy[q];
      const Eigen::VectorXd x = atlas.g(j, y);
      const double p = atlas.psi(j, x);
      if (p != 0.0) {
        c.index.push_back(i);
        c.psi.push_back(p);
        pts.push_back(x);
      }
      ++i;
      return 0.0;
    });
    c.x.resize(n, static_cast<long>(pts.size()));
    for (size_t q = 0; q < pts.size(); ++q) c.x.col(q) = pts[q];
    charts_.push_back(std::move(c));
  }
}

HalfSpaceField ChartSampler::piece(const BallField& u, int j) const {
  const Chart& c = charts_.at(j);
  HalfSpaceField w = shape_;
  Eigen::VectorXd x(c.x.rows());
  for (size_t q = 0; q < c.index.size(); ++q) {
    x = c.x.col(q);
    w.values[c.index[q]] = c.psi[q] * eval(u, x);
  }
  return w;
}

HalfSpaceField apply_cutoff(HalfSpaceField w, const CutoffFamily& cut, int k, bool starred) {
  const int Nn = w.n_normal;
  std::vector<double> z(Nn + 1);
  for (int j = 0; j <= Nn; ++j) z[j] = cut.zeta(k, 1.0 - j * w.normal_spacing(), starred);
  for (long i = 0; i < w.tangential_total(); ++i)
    for (int j = 0; j <= Nn; ++j) w.values[i * (Nn + 1) + j] *= z[j];
  return w;
}

HalfSpaceField seminorm_piece(const BallField& u, const Atlas& atlas, const CutoffFamily& cut,
                              int j, int k, bool starred, const HalfBoxOptions& opt) {
  return apply_cutoff(chart_piece(u, atlas, j, opt), cut, k, starred);
}

double x_seminorm(const BallField& u, const Atlas& atlas, const CutoffFamily& cut, int s, double r,
                  int k, bool starred, const HalfBoxOptions& opt) {
  if (u.dim() != atlas.dim()) throw InputError("x_seminorm: dimension mismatch");
  double total = 0.0;
  for (int j = 0; j < atlas.size(); ++j)
    total += hsr_norm(apply_cutoff(chart_piece(u, atlas, j, opt), cut, k, starred), s, r,
                      opt.convention);
  return total;
}

}  // namespace dnsphere
