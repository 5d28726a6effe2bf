#include "dnsphere/charts/half_space.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "dnsphere/error.hpp"

namespace dnsphere {

namespace {

// One real-to-complex plan per shape, executed on fftw_malloc buffers so the
// alignment always matches the planning arrays. The planner is not thread
// safe; execution is.
fftw_plan plan_for(const std::vector<int>& n, long total, long half) {
  static std::mutex planner;
  static std::map<std::vector<int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(planner);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  double* in = fftw_alloc_real(total);
  fftw_complex* out = fftw_alloc_complex(half);
  const fftw_plan p =
      fftw_plan_dft_r2c(static_cast<int>(n.size()), n.data(), in, out, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  plans.emplace(n, p);
  return p;
}

long half_total(const std::vector<int>& n) {
  long t = n.back() / 2 + 1;
  for (size_t k = 0; k + 1 < n.size(); ++k) t *= n[k];
  return t;
}

// |u^|^2 on the half spectrum, last axis index 0..n/2.
std::vector<double> energies(const BoxField& u) {
  const long N = u.total(), H = half_total(u.n);
  const fftw_plan plan = plan_for(u.n, N, H);
  double* in = fftw_alloc_real(N);
  fftw_complex* out = fftw_alloc_complex(H);
  std::copy(u.values.begin(), u.values.end(), in);
  fftw_execute_dft_r2c(plan, in, out);
  std::vector<double> e(H);
  for (long i = 0; i < H; ++i) e[i] = out[i][0] * out[i][0] + out[i][1] * out[i][1];
  fftw_free(in);
  fftw_free(out);
  return e;
}

double conv_factor(FourierConvention c) { return c == FourierConvention::Angular ? 2.0 * M_PI : 1.0; }

}  // namespace

long BoxField::total() const {
  long t = 1;
  for (int k : n) t *= k;
  return t;
}

BoxField BoxField::sample(const std::vector<int>& n, const std::vector<double>& half_width,
                          const std::function<double(const double*)>& fn) {
  if (n.size() != half_width.size() || n.empty()) throw InputError("box: shape mismatch");
  BoxField b{n, half_width, {}};
  const int d = b.rank();
  b.values.resize(b.total());
  std::vector<int> idx(d, 0);
  std::vector<double> x(d);
  for (long i = 0; i < b.total(); ++i) {
    for (int k = 0; k < d; ++k) x[k] = b.coordinate(k, idx[k]);
    b.values[i] = fn(x.data());
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < n[k]) break;
      idx[k] = 0;
    }
  }
  return b;
}

namespace {

// Calls fn(i, xi, conj) for every frequency of the half spectrum in storage
// order. conj is the frequency of the conjugate entry, which the half
// spectrum omits, or null when that entry is stored itself. Conjugate
// indices follow the same index convention, so a Nyquist index maps to itself.
template <class Fn>
void for_each_frequency(const std::vector<int>& n, const std::vector<double>& half_width, Fn&& fn) {
  const int d = static_cast<int>(n.size());
  std::vector<int> h = n;
  h.back() = n.back() / 2 + 1;
  long total = 1;
  for (int k : h) total *= k;
  std::vector<int> idx(d, 0);
  std::vector<double> xi(d), xc(d);
  auto freq = [&](int k, int j) {
    const int m = j <= n[k] / 2 ? j : j - n[k];
    return m / (2.0 * half_width[k]);
  };
  for (long i = 0; i < total; ++i) {
    for (int k = 0; k < d; ++k) {
      xi[k] = freq(k, idx[k]);
      xc[k] = freq(k, (n[k] - idx[k]) % n[k]);
    }
    const int ml = idx[d - 1];
    fn(i, xi.data(), ml > 0 && 2 * ml != n[d - 1] ? xc.data() : nullptr);
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < h[k]) break;
      idx[k] = 0;
    }
  }
}

// Weight of a half-spectrum entry, including its omitted conjugate.
double entry_weight(const std::function<double(const double*)>& w, const double* xi,
                    const double* conj) {
  return conj ? w(xi) + w(conj) : w(xi);
}

double cell_factor(const BoxField& u) {
  double cell = 1.0;
  for (int k = 0; k < u.rank(); ++k) cell *= u.spacing(k) / u.n[k];
  return cell;
}

// x^e without pow for the integer and half-integer exponents the norms use.
double power(double x, double e) {
  const double twice = 2.0 * e;
  if (e >= 0.0 && e <= 8.0 && twice == std::floor(twice)) {
    const int k = static_cast<int>(e);
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return twice - 2 * k == 1.0 ? v * std::sqrt(x) : v;
  }
  return std::pow(x, e);
}

}  // namespace

std::vector<double> multiplier_norms(
    const BoxField& u, const std::vector<std::function<double(const double*)>>& weights) {
  const auto E = energies(u);
  std::vector<double> acc(weights.size(), 0.0);
  for_each_frequency(u.n, u.half_width, [&](long i, const double* xi, const double* conj) {
    for (size_t w = 0; w < weights.size(); ++w) acc[w] += entry_weight(weights[w], xi, conj) * E[i];
  });
  const double cell = cell_factor(u);
  for (double& a : acc) a = std::sqrt(a * cell);
  return acc;
}

double multiplier_norm(const BoxField& u, const std::function<double(const double*)>& weight) {
  return multiplier_norms(u, {weight})[0];
}

MultiplierSet::MultiplierSet(const std::vector<int>& n, const std::vector<double>& half_width,
                             const std::vector<std::function<double(const double*)>>& weights)
    : n_(n), half_width_(half_width) {
  if (n.size() != half_width.size() || n.empty()) throw InputError("multipliers: shape mismatch");
  tables_.assign(weights.size(), std::vector<double>(half_total(n)));
  for_each_frequency(n, half_width, [&](long i, const double* xi, const double* conj) {
    for (size_t w = 0; w < weights.size(); ++w) tables_[w][i] = entry_weight(weights[w], xi, conj);
  });
}

std::vector<double> MultiplierSet::norms(const BoxField& u) const {
  if (u.n != n_ || u.half_width != half_width_) throw InputError("multipliers: box shape differs");
  const auto E = energies(u);
  std::vector<double> acc;
  for (const auto& t : tables_) {
    double a = 0.0;
    for (size_t i = 0; i < E.size(); ++i) a += t[i] * E[i];
    acc.push_back(a);
  }
  const double cell = cell_factor(u);
  for (double& a : acc) a = std::sqrt(a * cell);
  return acc;
}

double hs_norm(const BoxField& u, double s, FourierConvention conv) {
  return hsr_norm(u, s, 0.0, conv);
}

double hsr_norm(const BoxField& u, double s, double r, FourierConvention conv) {
  const int d = u.rank();
  if (s == 0.0 && r == 0.0) {
    // Parseval
    double acc = 0.0, cell = 1.0;
    for (double v : u.values) acc += v * v;
    for (int k = 0; k < d; ++k) cell *= u.spacing(k);
    return std::sqrt(acc * cell);
  }
  const double c2 = std::pow(conv_factor(conv), 2);
  const auto E = energies(u);
  const int nh = u.n[d - 1] / 2 + 1;
  double acc = 0.0, t = 0.0, tan_factor = 1.0;
  // The weight is even in each xi_k, and the tangential factor is shared by
  // each run along the last axis.
  for_each_frequency(u.n, u.half_width, [&](long i, const double* xi, const double* conj) {
    if (i % nh == 0) {
      t = 0.0;
      for (int k = 0; k + 1 < d; ++k) t += xi[k] * xi[k];
      tan_factor = d > 1 ? power(1.0 + c2 * t, r) : 1.0;
    }
    const double q = t + xi[d - 1] * xi[d - 1];
    acc += (conj ? 2.0 : 1.0) * tan_factor * power(1.0 + c2 * q, s) * E[i];
  });
  return std::sqrt(acc * cell_factor(u));
}

double box_edge_max(const BoxField& u) {
  const int d = u.rank();
  double m = 0.0;
  std::vector<int> idx(d, 0);
  for (long i = 0; i < u.total(); ++i) {
    bool edge = false;
    for (int k = 0; k < d; ++k) edge = edge || idx[k] == 0;
    if (edge) m = std::max(m, std::abs(u.values[i]));
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < u.n[k]) break;
      idx[k] = 0;
    }
  }
  return m;
}

long HalfSpaceField::tangential_total() const {
  long t = 1;
  for (int k : n_tan) t *= k;
  return t;
}

HalfSpaceField HalfSpaceField::sample(const std::vector<int>& n_tan,
                                      const std::vector<double>& half_width, double height,
                                      int n_normal,
                                      const std::function<double(const double*)>& fn) {
  if (n_tan.size() != half_width.size()) throw InputError("half-space: shape mismatch");
  if (!(height > 0.0) || n_normal < 2) throw InputError("half-space: bad normal grid");
  HalfSpaceField w{n_tan, half_width, height, n_normal, {}};
  const int m = static_cast<int>(n_tan.size());
  const long T = w.tangential_total();
  w.values.assign(T * (n_normal + 1), 0.0);
  std::vector<int> idx(m, 0);
  std::vector<double> x(m + 1);
  for (long i = 0; i < T; ++i) {
    for (int k = 0; k < m; ++k) x[k] = -half_width[k] + idx[k] * 2.0 * half_width[k] / n_tan[k];
    for (int j = 0; j <= n_normal; ++j) {
      x[m] = j * w.normal_spacing();
      w.values[i * (n_normal + 1) + j] = fn(x.data());
    }
    for (int k = m - 1; k >= 0; --k) {
      if (++idx[k] < n_tan[k]) break;
      idx[k] = 0;
    }
  }
  return w;
}

BoxField HalfSpaceField::slice(int j) const {
  BoxField b{n_tan, half_width, {}};
  const long T = tangential_total();
  b.values.resize(T);
  for (long i = 0; i < T; ++i) b.values[i] = values[i * (n_normal + 1) + j];
  return b;
}

double HalfSpaceField::support_certificate() const {
  const int m = static_cast<int>(n_tan.size());
  const long T = tangential_total();
  double c = 0.0;
  std::vector<int> idx(m, 0);
  for (long i = 0; i < T; ++i) {
    bool edge = false;
    for (int k = 0; k < m; ++k) edge = edge || idx[k] == 0;
    for (int j = 0; j <= n_normal; ++j)
      if (edge || j == n_normal) c = std::max(c, std::abs(values[i * (n_normal + 1) + j]));
    for (int k = m - 1; k >= 0; --k) {
      if (++idx[k] < n_tan[k]) break;
      idx[k] = 0;
    }
  }
  return c;
}

BoxField extend(const HalfSpaceField& w, int s) {
  if (s < 0 || s > 2) throw InputError("extend: s must be 0, 1 or 2");
  const int Nn = w.n_normal;
  BoxField b;
  b.n = w.n_tan;
  b.n.push_back(2 * Nn);
  b.half_width = w.half_width;
  b.half_width.push_back(w.height);
  const long T = w.tangential_total();
  b.values.assign(T * 2 * Nn, 0.0);
  auto at = [&](long i, int j) { return j <= Nn ? w.values[i * (Nn + 1) + j] : 0.0; };
  for (long i = 0; i < T; ++i) {
    double* row = b.values.data() + i * 2 * Nn;
    // Box node q sits at x_n = (q - Nn) dx.
    for (int q = Nn; q < 2 * Nn; ++q) row[q] = at(i, q - Nn);
    for (int q = 1; q < Nn; ++q) {
      const int m = Nn - q;  // x_n = -m dx
      if (s == 1) row[q] = at(i, m);
      else if (s == 2) row[q] = 3.0 * at(i, m) - 2.0 * at(i, 2 * m);
    }
    // q = 0 is x_n = -H, which the certificate keeps at zero.
  }
  return b;
}

void require_support(const HalfSpaceField& w) {
  double sup = 0.0;
  for (double v : w.values) {
    if (!std::isfinite(v)) throw InputError("half-space: non-finite sample");
    sup = std::max(sup, std::abs(v));
  }
  if (w.support_certificate() > 1e-13 * std::max(1.0, sup))
    throw SupportError("half-space: samples do not vanish at the box edge");
}

double hsr_norm(const HalfSpaceField& w, int s, double r, FourierConvention conv) {
  require_support(w);
  return hsr_norm(extend(w, s), static_cast<double>(s), r, conv);
}

}  // namespace dnsphere
