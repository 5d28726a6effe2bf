#include "dnsphere/charts/witness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "dnsphere/charts/chart_norms.hpp"
#include "dnsphere/error.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

namespace {

using Rng = std::mt19937_64;
using Weight = std::function<double(const double*)>;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Packet {
  std::vector<double> c, xi;
  double sigma, amp, phase;
};

// Sum of modulated Gaussians amp cos(2 pi xi.x + phase) exp(-|x - c|^2 / (2 sigma^2)).
struct PacketSum {
  std::vector<Packet> p;
};

// Box and packet ranges resolved by the grids below.
struct Setup {
  int dim;
  int N;
  double a;
  double sig_lo, sig_hi, xi_hi, c_hi;
};

Setup setup_for(int dim) {
  if (dim == 2) return {2, 160, 3.0, 0.12, 0.25, 3.0, 0.4};
  return {3, 80, 4.0, 0.3, 0.4, 1.5, 0.3};
}

double uni(Rng& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

// Packet parameters in [0, 1]: d centers, d frequencies, sigma, amplitude, phase.
// The families draw single packets: sums of separated packets only dilute
// the ratios, and few parameters keep the compass refinement effective.
int packet_params(int d) { return 2 * d + 3; }

Packet decode_packet(const double* t, const Setup& su, int d, bool half) {
  Packet q;
  q.c.resize(d);
  q.xi.resize(d);
  for (int k = 0; k < d; ++k) {
    q.c[k] = su.c_hi * (2.0 * t[k] - 1.0);
    q.xi[k] = su.xi_hi * (2.0 * t[d + k] - 1.0) / std::sqrt(d);
  }
  if (half) q.c[d - 1] = 0.6 * t[d - 1];
  q.sigma = su.sig_lo + (su.sig_hi - su.sig_lo) * t[2 * d];
  q.amp = 2.0 * t[2 * d + 1] - 1.0;
  q.phase = 2.0 * M_PI * t[2 * d + 2];
  return q;
}

PacketSum decode_packets(const double* t, const Setup& su, int d, int count, bool half) {
  PacketSum ps;
  for (int i = 0; i < count; ++i) ps.p.push_back(decode_packet(t + i * packet_params(d), su, d, half));
  return ps;
}

// Normal step matches the tangential one.
int normal_nodes(const Setup& su) { return static_cast<int>(std::lround(su.N / 2.0)); }

HalfSpaceField half_box(const Setup& su, const std::function<double(const double*)>& fn) {
  return HalfSpaceField::sample(std::vector<int>(su.dim - 1, su.N),
                                std::vector<double>(su.dim - 1, su.a), su.a, normal_nodes(su), fn);
}

std::vector<double> box_axis(int n, double a) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = -a + i * 2.0 * a / n;
  return x;
}

std::vector<double> normal_axis(int Nn, double H) {
  std::vector<double> x(Nn + 1);
  for (int j = 0; j <= Nn; ++j) x[j] = j * (H / Nn);
  return x;
}

using Cplx = std::complex<double>;

// Factor of packet q along axis k, times its derivative factor when asked.
Cplx axis_factor(const Packet& q, int k, double x, bool deriv) {
  const double y = x - q.c[k];
  const double s2 = q.sigma * q.sigma;
  Cplx e = std::polar(std::exp(-y * y / (2.0 * s2)), 2.0 * M_PI * q.xi[k] * x);
  if (deriv) e *= Cplx(-y / s2, 2.0 * M_PI * q.xi[k]);
  return e;
}

// Packet sum on a tensor grid, last axis fastest. Each packet is a product
// of per-axis complex factors; deriv >= 0 differentiates along that axis.
std::vector<double> sample_grid(const PacketSum& u, const std::vector<std::vector<double>>& axes,
                                int deriv = -1) {
  const int d = static_cast<int>(axes.size());
  long total = 1;
  for (const auto& a : axes) total *= static_cast<long>(a.size());
  std::vector<double> out(total, 0.0);
  std::vector<std::vector<Cplx>> tab(d);
  for (const auto& q : u.p) {
    for (int k = 0; k < d; ++k) {
      tab[k].clear();
      for (double x : axes[k]) tab[k].push_back(axis_factor(q, k, x, k == deriv));
    }
    const Cplx lead = std::polar(q.amp, q.phase);
    std::vector<size_t> idx(d, 0);
    for (long i = 0; i < total; ++i) {
      Cplx v = lead;
      for (int k = 0; k < d; ++k) v *= tab[k][idx[k]];
      out[i] += v.real();
      for (int k = d - 1; k >= 0; --k) {
        if (++idx[k] < axes[k].size()) break;
        idx[k] = 0;
      }
    }
  }
  return out;
}

BoxField packet_box(const Setup& su, const PacketSum& u, int deriv = -1) {
  BoxField b{std::vector<int>(su.dim, su.N), std::vector<double>(su.dim, su.a), {}};
  b.values = sample_grid(u, std::vector<std::vector<double>>(su.dim, box_axis(su.N, su.a)), deriv);
  return b;
}

HalfSpaceField empty_half(const Setup& su) {
  HalfSpaceField w;
  w.n_tan.assign(su.dim - 1, su.N);
  w.half_width.assign(su.dim - 1, su.a);
  w.height = su.a;
  w.n_normal = normal_nodes(su);
  return w;
}

HalfSpaceField packet_half(const Setup& su, const PacketSum& u) {
  HalfSpaceField w = empty_half(su);
  std::vector<std::vector<double>> axes(su.dim - 1, box_axis(su.N, su.a));
  axes.push_back(normal_axis(w.n_normal, su.a));
  w.values = sample_grid(u, axes);
  return w;
}

using SetPtr = std::shared_ptr<const MultiplierSet>;

SetPtr full_set(const Setup& su, const std::vector<Weight>& ws) {
  return std::make_shared<const MultiplierSet>(std::vector<int>(su.dim, su.N),
                                               std::vector<double>(su.dim, su.a), ws);
}

// Weights on the box that extend() produces from half_box samples.
SetPtr extension_set(const Setup& su, const std::vector<Weight>& ws) {
  std::vector<int> n(su.dim - 1, su.N);
  n.push_back(2 * normal_nodes(su));
  return std::make_shared<const MultiplierSet>(n, std::vector<double>(su.dim, su.a), ws);
}

std::vector<double> extension_norms(const HalfSpaceField& w, int s, const MultiplierSet& set) {
  require_support(w);
  return set.norms(extend(w, s));
}

Weight hsr_weight(int dim, double s, double r, double c2 = 1.0) {
  return [=](const double* xi) {
    double t = 0.0;
    for (int k = 0; k + 1 < dim; ++k) t += xi[k] * xi[k];
    const double q = t + xi[dim - 1] * xi[dim - 1];
    return std::pow(1.0 + c2 * t, r) * std::pow(1.0 + c2 * q, s);
  };
}

Weight hs_weight(int dim, double s) { return hsr_weight(dim, s, 0.0); }

std::string fmt(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

WitnessRow make_row(const std::string& name, const std::string& params, int samples,
                    double max_half, double max_all, bool finite, double bound, double stability,
                    double exact_slack) {
  WitnessRow w;
  w.inequality = name;
  w.params = params;
  w.samples = samples;
  w.bound = bound;
  w.max_ratio = max_all;
  w.max_ratio_half = max_half;
  w.finite = finite && std::isfinite(max_all) && std::isfinite(max_half);
  if (max_half > 0.0)
    w.stable = std::abs(max_all / max_half - 1.0) <= stability;
  else
    w.stable = max_all == 0.0;
  w.pass = w.finite && w.stable;
  if (!std::isnan(bound)) w.pass = w.pass && max_all <= bound * (1.0 + exact_slack);
  return w;
}

WitnessRow make_row(const std::string& name, const std::string& params,
                    const std::vector<double>& ratios, double bound, double stability,
                    double exact_slack = 0.0) {
  const size_t half = ratios.size() / 2;
  double mh = 0.0, ma = 0.0;
  bool finite = true;
  for (size_t i = 0; i < ratios.size(); ++i) {
    finite = finite && std::isfinite(ratios[i]);
    ma = std::max(ma, ratios[i]);
    if (i < half) mh = std::max(mh, ratios[i]);
  }
  return make_row(name, params, static_cast<int>(ratios.size()), mh, ma, finite, bound, stability,
                  exact_slack);
}

// Ratio spread across a family of rows, for constants claimed independent of a parameter.
WitnessRow spread_row(const std::string& name, const std::string& params,
                      const std::vector<WitnessRow>& rows, double stability) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  double lo_h = lo, hi_h = 0.0;
  bool finite = true;
  for (const auto& r : rows) {
    lo = std::min(lo, r.max_ratio);
    hi = std::max(hi, r.max_ratio);
    lo_h = std::min(lo_h, r.max_ratio_half);
    hi_h = std::max(hi_h, r.max_ratio_half);
    finite = finite && r.finite;
  }
  WitnessRow w;
  w.inequality = name;
  w.params = params;
  w.samples = rows.empty() ? 0 : rows[0].samples;
  w.max_ratio = hi / lo;
  w.max_ratio_half = hi_h / lo_h;
  w.bound = 1.0 + stability;
  w.finite = finite && std::isfinite(w.max_ratio);
  w.stable = w.max_ratio <= 1.0 + stability && w.max_ratio_half <= 1.0 + stability;
  w.pass = w.finite && w.stable;
  return w;
}

// A parametrized sample family: theta in [0, 1]^p maps to one ratio per row.
struct Family {
  std::vector<std::string> names, params;
  std::vector<double> bounds;
  double slack = 0.0;
  int n_params = 0;
  std::function<std::vector<double>(const std::vector<double>&)> eval;
};

// Evaluations keyed by parameters: refinements of different rows often
// start from the same sample and share their first steps.
class Memo {
 public:
  explicit Memo(const Family& f) : f_(f) {}
  const std::vector<double>& operator()(const std::vector<double>& t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, f_.eval(t)).first;
    return it->second;
  }

 private:
  const Family& f_;
  std::map<std::vector<double>, std::vector<double>> cache_;
};

// Compass search on one row, started from a sample: cycles through the
// coordinates and halves the step after a full cycle without improvement.
double refine(const Family& f, Memo& memo, int row, std::vector<double> th, double best, int budget) {
  double step = 0.25;
  int used = 0, idle = 0, k = 0;
  while (used < budget && step >= 1.0 / 64.0) {
    bool improved = false;
    for (double sg : {1.0, -1.0}) {
      std::vector<double> t = th;
      t[k] = std::clamp(t[k] + sg * step, 0.0, 1.0);
      if (t[k] == th[k]) continue;
      const double v = memo(t)[row];
      ++used;
      if (std::isfinite(v) && v > best) {
        best = v;
        th = t;
        improved = true;
        break;
      }
      if (used >= budget) break;
    }
    idle = improved ? 0 : idle + 1;
    k = (k + 1) % f.n_params;
    if (idle >= f.n_params) {
      step /= 2.0;
      idle = 0;
    }
  }
  return best;
}

// Random starts; the best start of each sample set (N and 2N) is then
// refined, so the reported maxima probe the supremum rather than the tail.
std::vector<WitnessRow> run_family(const Family& f, int n2, Rng& g, double stab, int budget) {
  std::vector<std::vector<double>> th(n2, std::vector<double>(f.n_params));
  std::vector<std::vector<double>> R(n2);
  Memo memo(f);
  for (int i = 0; i < n2; ++i) {
    for (double& t : th[i]) t = uni(g, 0.0, 1.0);
    R[i] = memo(th[i]);
  }
  std::vector<WitnessRow> rows;
  const int half = n2 / 2;
  for (size_t q = 0; q < f.names.size(); ++q) {
    bool finite = true;
    int bh = 0, ba = 0;
    for (int i = 0; i < n2; ++i) {
      finite = finite && std::isfinite(R[i][q]);
      if (!std::isfinite(R[i][q])) continue;
      if (R[i][q] > R[ba][q] || !std::isfinite(R[ba][q])) ba = i;
      if (i < half && (R[i][q] > R[bh][q] || !std::isfinite(R[bh][q]))) bh = i;
    }
    const int row = static_cast<int>(q);
    const double mh = refine(f, memo, row, th[bh], R[bh][q], budget);
    const double ma = ba == bh ? mh : std::max(mh, refine(f, memo, row, th[ba], R[ba][q], budget));
    rows.push_back(make_row(f.names[q], f.params[q], n2, mh, ma, finite, f.bounds[q], stab, f.slack));
  }
  return rows;
}

Family trace_family(const Setup& su) {
  const int n = su.dim;
  const std::vector<double> S{0.6, 1.0, 1.5}, R{0.0, 1.0, 2.0};
  // Fine normal axis: the normal profile is scaled with the tangential frequency.
  const int Nn = n == 2 ? 1024 : 256;
  const double an = 4.0;
  const double kap_lo = n == 2 ? 0.1 : 0.2;
  std::vector<Weight> full, trace;
  Family f;
  for (double s : S)
    for (double r : R) {
      full.push_back(hsr_weight(n, s, r));
      trace.push_back(hs_weight(n - 1, s + r - 0.5));
      f.names.push_back("trace");
      f.params.push_back(fmt({{"s", s}, {"r", r}}));
      f.bounds.push_back(kNaN);
    }
  const int pp = packet_params(n - 1);
  f.n_params = pp + 2;
  std::vector<int> dims(n - 1, su.N);
  dims.push_back(Nn);
  std::vector<double> hw(n - 1, su.a);
  hw.push_back(an);
  const SetPtr full_w = std::make_shared<const MultiplierSet>(dims, hw, full);
  const SetPtr trace_w = std::make_shared<const MultiplierSet>(
      std::vector<int>(n - 1, su.N), std::vector<double>(n - 1, su.a), trace);
  f.eval = [=](const std::vector<double>& t) {
    Setup st = su;
    st.dim = n - 1;
    const PacketSum phi = decode_packets(t.data(), st, n - 1, 1, false);
    double xi2 = 0.0;
    for (double v : phi.p[0].xi) xi2 += v * v;
    const double sn = (kap_lo + (0.5 - kap_lo) * t[pp]) / std::sqrt(1.0 + xi2);
    const double beta = 2.0 * t[pp + 1] - 1.0;
    const BoxField tr{std::vector<int>(n - 1, su.N), std::vector<double>(n - 1, su.a),
                      sample_grid(phi, std::vector<std::vector<double>>(n - 1, box_axis(su.N, su.a)))};
    std::vector<double> prof;
    for (double x : box_axis(Nn, an)) {
      const double z = x / sn;
      prof.push_back((1.0 + beta * z) * std::exp(-0.5 * z * z));
    }
    BoxField w{dims, hw, {}};
    w.values.reserve(tr.values.size() * Nn);
    for (double v : tr.values)
      for (double p : prof) w.values.push_back(v * p);
    const auto nf = full_w->norms(w);
    const auto nt = trace_w->norms(tr);
    std::vector<double> out(full.size());
    for (size_t q = 0; q < full.size(); ++q) out[q] = nt[q] / nf[q];
    return out;
  };
  return f;
}

Family embedding_family(const Setup& su) {
  const int n = su.dim;
  std::vector<std::pair<double, double>> sr;
  for (double s : {0.75, 1.0}) {
    sr.push_back({s, n / 2.0 - s + 0.25});
    sr.push_back({s, n / 2.0 - s + 1.0});
  }
  Family f;
  std::vector<Weight> ws;
  for (auto [s, r] : sr) {
    ws.push_back(hsr_weight(n, s, r));
    f.names.push_back("embedding.Rn");
    f.params.push_back(fmt({{"s", s}, {"r", r}}));
    f.bounds.push_back(kNaN);
  }
  f.n_params = packet_params(n);
  const SetPtr set = full_set(su, ws);
  f.eval = [=](const std::vector<double>& t) {
    const PacketSum u = decode_packets(t.data(), su, n, 1, false);
    const BoxField b = packet_box(su, u);
    double sup = 0.0;
    for (double v : b.values) sup = std::max(sup, std::abs(v));
    const auto nn = set->norms(b);
    std::vector<double> out;
    for (double v : nn) out.push_back(sup / v);
    return out;
  };
  return f;
}

// Both conventions share the sampled boxes.
Family derivative_family(const Setup& su) {
  const int n = su.dim;
  const std::vector<std::pair<double, double>> sr{{0, 0}, {1, 0}, {0, 1}, {1, 2}};
  Family f;
  std::vector<Weight> lhs, rhs;
  for (bool angular : {true, false}) {
    const double c2 = angular ? 4.0 * M_PI * M_PI : 1.0;
    // The contraction is exact for multipliers in angular frequency; with
    // ordinary-frequency multipliers the constant is 2 pi.
    const std::string tag = angular ? "angular" : "ordinary";
    const double bound = angular ? 1.0 : 2.0 * M_PI;
    for (auto [s, r] : sr) {
      lhs.push_back(hsr_weight(n, s, r, c2));
      rhs.push_back(hsr_weight(n, s, r + 1, c2));
      rhs.push_back(hsr_weight(n, s + 1, r, c2));
      for (const char* which : {"partial.tangential", "partial.normal"}) {
        f.names.push_back(which);
        f.params.push_back(fmt({{"s", s}, {"r", r}}) + " convention=" + tag);
        f.bounds.push_back(bound);
      }
    }
  }
  f.slack = 1e-10;
  f.n_params = packet_params(n);
  const SetPtr rhs_w = full_set(su, rhs), lhs_w = full_set(su, lhs);
  f.eval = [=](const std::vector<double>& t) {
    const PacketSum u = decode_packets(t.data(), su, n, 1, false);
    const auto nu = rhs_w->norms(packet_box(su, u));
    const auto n0 = lhs_w->norms(packet_box(su, u, 0));
    const auto nn = lhs_w->norms(packet_box(su, u, n - 1));
    std::vector<double> out;
    for (size_t q = 0; q < lhs.size(); ++q) {
      out.push_back(n0[q] / nu[2 * q]);
      out.push_back(nn[q] / nu[2 * q + 1]);
    }
    return out;
  };
  return f;
}

Family product_family(const Setup& su) {
  const int n = su.dim;
  const double r0 = n / 2.0 - 1.0 + 0.5;
  const std::vector<double> R{0.0, r0, r0 + 0.5, r0 + 1.5};
  Family f;
  std::vector<Weight> ws{hsr_weight(n, 1, r0)};
  for (double r : R) {
    ws.push_back(hsr_weight(n, 1, r));
    f.names.push_back(r > r0 ? "product.two_term" : "product.below_r0");
    f.params.push_back(fmt({{"r0", r0}, {"r", r}}));
    f.bounds.push_back(kNaN);
  }
  const int pp = packet_params(n);
  f.n_params = 2 * pp;
  const SetPtr set = full_set(su, ws);
  f.eval = [=](const std::vector<double>& t) {
    const BoxField bu = packet_box(su, decode_packets(t.data(), su, n, 1, false));
    const BoxField bv = packet_box(su, decode_packets(t.data() + pp, su, n, 1, false));
    BoxField bw = bu;
    for (size_t i = 0; i < bw.values.size(); ++i) bw.values[i] *= bv.values[i];
    const auto nu = set->norms(bu);
    const auto nv = set->norms(bv);
    const auto nw = set->norms(bw);
    std::vector<double> out;
    for (size_t q = 0; q < R.size(); ++q) {
      double rhs = nu[0] * nv[q + 1];
      if (R[q] > r0) rhs += nu[q + 1] * nv[0];
      out.push_back(nw[q + 1] / rhs);
    }
    return out;
  };
  return f;
}

Family multiplication_family(const Setup& su) {
  const int n = su.dim;
  const std::vector<double> R{0.5, 1.0, 2.0};
  Family f;
  for (double r : R) {
    f.names.push_back("multiplication.bounded");
    f.params.push_back(fmt({{"r", r}}));
    f.bounds.push_back(kNaN);
  }
  const int pu = packet_params(n);
  f.n_params = pu + 3 + (n - 1);
  std::vector<Weight> ws{hsr_weight(n, 0, 0.0)};
  for (double r : R) ws.push_back(hsr_weight(n, 0, r));
  const SetPtr set = extension_set(su, ws);
  f.eval = [=](const std::vector<double>& t) {
    const PacketSum u = decode_packets(t.data(), su, n, 1, true);
    const double a0 = 2 * t[pu] - 1, a1 = 2 * t[pu + 1] - 1, ph = 2 * M_PI * t[pu + 2];
    std::vector<double> om(n - 1);
    for (int k = 0; k + 1 < n; ++k) om[k] = 2.0 * (2 * t[pu + 3 + k] - 1) / std::sqrt(n - 1.0);
    auto fx = [&](const double* x) {
      double th = ph;
      for (int k = 0; k + 1 < n; ++k) th += 2.0 * M_PI * om[k] * x[k];
      return a0 + a1 * std::cos(th) / (1.0 + x[n - 1] * x[n - 1]);
    };
    const HalfSpaceField wu = packet_half(su, u);
    const HalfSpaceField wf = half_box(su, fx);
    double finf = 0.0;
    for (double v : wf.values) finf = std::max(finf, std::abs(v));
    HalfSpaceField wfu = wu;
    for (size_t i = 0; i < wfu.values.size(); ++i) wfu.values[i] *= wf.values[i];
    const auto nu = extension_norms(wu, 0, *set);
    const auto nfu = extension_norms(wfu, 0, *set);
    std::vector<double> out;
    for (size_t q = 0; q < R.size(); ++q) {
      const double r = R[q];
      const int b = static_cast<int>(std::ceil(r));
      // sum over |alpha| <= b of sup |d^alpha_{x'} f|
      double W = finf;
      for (int k1 = 0; k1 <= b; ++k1)
        for (int k2 = 0; k1 + k2 <= b; ++k2) {
          if (k1 + k2 == 0 || (n == 2 && k2 > 0)) continue;
          double term = std::abs(a1) * std::pow(2.0 * M_PI * std::abs(om[0]), k1);
          if (n == 3) term *= std::pow(2.0 * M_PI * std::abs(om[1]), k2);
          W += term;
        }
      out.push_back(nfu[q + 1] / (2.0 * finf * nu[q + 1] + W * nu[0]));
    }
    return out;
  };
  return f;
}

Family composition_family(const Setup& su, const Atlas& atlas) {
  const int n = su.dim;
  const int m = n - 1;
  const double r0 = m / 2.0 + 0.25;
  const std::vector<int> S{0, 1};
  const std::vector<double> R{0.0, 1.0, 2.0};
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < atlas.size(); ++j)
    for (int l : atlas.neighbors(j)) pairs.push_back({l, j});
  Family f;
  for (int s : S)
    for (double r : R) {
      f.names.push_back("composition.transition");
      f.params.push_back(fmt({{"s", s}, {"r", r}, {"r0", r0}}));
      f.bounds.push_back(kNaN);
    }
  const int pu = packet_params(n);
  f.n_params = pu + 1;
  std::vector<SetPtr> sets;
  for (int s : S) {
    std::vector<Weight> ws;
    for (double r : R) ws.push_back(hsr_weight(n, s, r));
    sets.push_back(extension_set(su, ws));
  }
  const Atlas* at = &atlas;
  f.eval = [=](const std::vector<double>& t) {
    const size_t pi = std::min(pairs.size() - 1, static_cast<size_t>(t[pu] * pairs.size()));
    const auto [l, j] = pairs[pi];
    const TransitionBlocks tb = at->blocks(l, j);
    const double dl = at->delta();
    const PacketSum u = decode_packets(t.data(), su, n, 1, true);
    Eigen::VectorXd yp(m);
    const HalfSpaceField wu = packet_half(su, u);
    // u at (z(x'), x_n): one transition per tangential node, normal factors tabulated.
    HalfSpaceField wc = empty_half(su);
    const int Nn = wc.n_normal;
    const std::vector<double> xn = normal_axis(Nn, su.a), xt = box_axis(su.N, su.a);
    std::vector<std::vector<Cplx>> nf;
    for (const auto& q : u.p) {
      nf.emplace_back();
      for (double x : xn) nf.back().push_back(axis_factor(q, m, x, false));
    }
    wc.values.assign(wc.tangential_total() * (Nn + 1), 0.0);
    std::vector<int> idx(m, 0);
    for (long i = 0; i < wc.tangential_total(); ++i) {
      for (int k = 0; k < m; ++k) yp[k] = xt[idx[k]];
      const Eigen::VectorXd z = extended_transition(tb, dl, yp);
      for (size_t p = 0; p < u.p.size(); ++p) {
        Cplx c = std::polar(u.p[p].amp, u.p[p].phase);
        for (int k = 0; k < m; ++k) c *= axis_factor(u.p[p], k, z[k], false);
        for (int j = 0; j <= Nn; ++j) wc.values[i * (Nn + 1) + j] += (c * nf[p][j]).real();
      }
      for (int k = m - 1; k >= 0; --k) {
        if (++idx[k] < su.N) break;
        idx[k] = 0;
      }
    }
    // Non-affine part of the transition, one box per component.
    std::vector<BoxField> gc;
    for (int c = 0; c < m; ++c)
      gc.push_back(BoxField::sample(
          std::vector<int>(m, su.N), std::vector<double>(m, su.a), [&](const double* x) {
            for (int k = 0; k < m; ++k) yp[k] = x[k];
            return (extended_transition(tb, dl, yp) - affine_transition(tb, yp))[c];
          }));
    std::vector<double> out;
    for (size_t si = 0; si < S.size(); ++si) {
      const int s = S[si];
      const auto nc = extension_norms(wc, s, *sets[si]);
      const auto nu = extension_norms(wu, s, *sets[si]);
      for (size_t q = 0; q < R.size(); ++q) {
        double g2 = 0.0;
        for (const auto& b : gc) g2 += std::pow(hs_norm(b, 1.0 + r0 + R[q] + s), 2);
        // R[0] = 0 gives the plain H^s norm of u.
        out.push_back(nc[q] / (nu[q] + std::sqrt(g2) * nu[0]));
      }
    }
    return out;
  };
  return f;
}

// Localized modulated bump on the sphere, amp exp((x.c - 1) / w^2) cos(2 pi k x.e + phase)
// with e tangent at c. Parameters in [0, 1].
int sphere_packet_params(int dim) { return dim == 2 ? 5 : 7; }

struct SpherePacket {
  Eigen::VectorXd c, e;
  double w, k, phase, amp;
};

SpherePacket decode_sphere_packet(const double* t, int dim, int L) {
  SpherePacket q;
  const double kmax = 0.6 * L / (2.0 * M_PI);
  // Narrower bumps would not be resolved at degree L.
  const double wmin = 2.5 / L;
  if (dim == 2) {
    const double th = 2.0 * M_PI * t[0];
    q.c = Eigen::Vector2d(std::cos(th), std::sin(th));
    q.e = Eigen::Vector2d(-std::sin(th), std::cos(th));
    t += 1;
  } else {
    const double z = 2.0 * t[0] - 1.0, ph = 2.0 * M_PI * t[1], al = 2.0 * M_PI * t[2];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    q.c = Eigen::Vector3d(rho * std::cos(ph), rho * std::sin(ph), z);
    const Eigen::Vector3d e1(-std::sin(ph), std::cos(ph), 0.0);
    const Eigen::Vector3d e2 = Eigen::Vector3d(q.c).cross(e1);
    q.e = std::cos(al) * e1 + std::sin(al) * e2;
    t += 3;
  }
  q.w = wmin + (1.2 - wmin) * t[0];
  q.k = kmax * t[1];
  q.phase = 2.0 * M_PI * t[2];
  q.amp = 2.0 * t[3] - 1.0;
  return q;
}

BoundaryField sphere_packets(const double* t, int dim, int L, int count) {
  std::vector<SpherePacket> ps;
  for (int i = 0; i < count; ++i)
    ps.push_back(decode_sphere_packet(t + i * sphere_packet_params(dim), dim, L));
  return project_function(dim, L, [&](const Eigen::VectorXd& x) {
    double v = 0.0;
    for (const auto& q : ps)
      v += q.amp * std::exp((x.dot(q.c) - 1.0) / (q.w * q.w)) *
           std::cos(2.0 * M_PI * q.k * x.dot(q.e) + q.phase);
    return v;
  });
}

Family sphere_family(int dim) {
  const double d = dim - 1;
  const double s0 = d / 2.0 + 0.5;
  const int L = dim == 2 ? 16 : 10;
  const int K = 1;
  const std::vector<double> Sp{0.0, s0, s0 + 1.0, s0 + 2.0};
  const std::vector<double> Sg{0.0, 1.0, 2.0};
  Family f;
  auto row = [&](const std::string& name, const std::string& params, double bound) {
    f.names.push_back(name);
    f.params.push_back(params);
    f.bounds.push_back(bound);
  };
  row("sphere.interpolation", "random s0 s1 theta", 1.0);
  for (double sp : Sp) {
    const std::string p = fmt({{"s", sp}, {"s0", s0}});
    row("sphere.product", p, kNaN);
    row("sphere.power", p + " m=2", kNaN);
    row("sphere.power", p + " m=3", kNaN);
  }
  for (double sg : Sg) row("sphere.gradient", fmt({{"s", sg}}), kNaN);
  row("sphere.embedding", fmt({{"s0", s0}}), kNaN);
  f.slack = 1e-12;
  const int pp = K * sphere_packet_params(dim);
  f.n_params = 2 * pp + 3;
  const AngularGrid fine = AngularGrid::exact_for(dim, 8 * L + 8);
  f.eval = [=](const std::vector<double>& t) {
    const BoundaryField u = sphere_packets(t.data(), dim, L, K);
    const BoundaryField v = sphere_packets(t.data() + pp, dim, L, K);
    std::vector<double> out;
    // Interpolation at (s0, s1, theta) from the last parameters.
    const double a = 2.0 * t[2 * pp], b = a + 0.5 + 2.5 * t[2 * pp + 1];
    const double th = 0.05 + 0.9 * t[2 * pp + 2];
    out.push_back(sobolev_norm(u, a * (1 - th) + b * th) /
                  (std::pow(sobolev_norm(u, a), 1 - th) * std::pow(sobolev_norm(u, b), th)));
    const BoundaryField uv = multiply(u, v, 2 * L).field;
    const BoundaryField u2 = multiply(u, u, 2 * L).field;
    const BoundaryField u3 = multiply(u2, u, 3 * L).field;
    for (double sp : Sp) {
      double rhs = sobolev_norm(u, s0) * sobolev_norm(v, sp);
      if (sp > s0) rhs += sobolev_norm(u, sp) * sobolev_norm(v, s0);
      out.push_back(sobolev_norm(uv, sp) / rhs);
      const double base = sobolev_norm(u, s0);
      out.push_back(sobolev_norm(u2, sp) / (base * sobolev_norm(u, sp)));
      out.push_back(sobolev_norm(u3, sp) / (base * base * sobolev_norm(u, sp)));
    }
    const auto gu = tangential_gradient(u);
    for (double sg : Sg) {
      double g2 = 0.0;
      for (const auto& c : gu) g2 += std::pow(sobolev_norm(c, sg), 2);
      out.push_back(std::sqrt(g2) / (sobolev_norm(u, sg + 1) + sobolev_norm(u, 1.0)));
    }
    out.push_back(synth(u, fine).cwiseAbs().maxCoeff() / sobolev_norm(u, s0));
    return out;
  };
  return f;
}

void cutoff_rows(double delta, double stab, std::vector<WitnessRow>& out) {
  // Doubling here doubles the range of k.
  const CutoffFamily cut(delta, 8);
  for (bool starred : {false, true}) {
    std::vector<double> ratios;
    for (int k = 0; k < 8; ++k) {
      const double lo = cut.rho(k + 1, starred), hi = cut.rho(k, starred);
      double mx = 0.0;
      for (int i = 0; i <= 400; ++i)
        mx = std::max(mx, std::abs(cut.zeta_derivative(k, lo + (hi - lo) * i / 400.0, starred)));
      ratios.push_back(mx / std::ldexp(1.0, k));
    }
    out.push_back(make_row("cutoff.derivative_growth", starred ? "starred" : "plain", ratios, kNaN, stab));
  }
}

// One degree shell d0 with a random combination inside it, times the radial
// profile r^{d0 + 2 beta}. beta and d0 are stratified over the samples, so
// each half of the set sees every extreme; the ratios vary little within a
// shell.
BallField random_ball_field(Rng& g, const BallSpacePtr& sp, int stratum) {
  static const int kBeta[] = {0, 2, 5};
  const int beta = kBeta[stratum % 3];
  const int d0 = (stratum / 3) % 2 == 0 ? 0 : sp->L();
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(sp->modes(), sp->n_radial());
  std::normal_distribution<double> nd;
  for (int q = 0; q < sp->modes(); ++q) {
    if (sp->degree_of(q) != d0) continue;
    const double c = nd(g);
    for (int i = 0; i < sp->n_radial(); ++i)
      U(q, i) = c * std::pow(sp->radial_nodes()[i], d0 + 2 * beta);
  }
  return BallField(sp, U);
}

void seminorm_rows(int dim, double delta, int n2, Rng& g, double stab, std::vector<WitnessRow>& out) {
  const Atlas atlas = Atlas::create(dim, {delta});
  const CutoffFamily cut(delta, 3);
  const BallSpacePtr sp = BallSpace::create(dim, dim == 2 ? 8 : 4);
  HalfBoxOptions ho;
  if (dim == 3) {
    ho.n_tan = 24;
    ho.n_normal = 16;
  }
  const ChartSampler sampler(atlas, ho);
  std::vector<std::vector<double>> r0(4), r1(4), r0s(4);
  for (int i = 0; i < n2; ++i) {
    const BallField u = random_ball_field(g, sp, i);
    const double l2 = l2_norm(u), h1 = h1_norm(u);
    std::vector<double> x0(4, 0.0), x1(4, 0.0), xs(4, 0.0);
    for (int j = 0; j < atlas.size(); ++j) {
      const HalfSpaceField base = sampler.piece(u, j);
      for (int k = 0; k <= 3; ++k) {
        const HalfSpaceField w = apply_cutoff(base, cut, k, false);
        x0[k] += hsr_norm(w, 0, 0.0);
        x1[k] += hsr_norm(w, 1, 0.0);
        xs[k] += hsr_norm(apply_cutoff(base, cut, k, true), 0, 0.0);
      }
    }
    for (int k = 0; k <= 3; ++k) {
      r0[k].push_back(x0[k] / l2);
      r1[k].push_back(x1[k] / h1);
      r0s[k].push_back(xs[k] / l2);
    }
  }
  std::vector<double> all0, all0s;
  for (int k = 0; k <= 3; ++k) {
    out.push_back(make_row("low_norm.X00", fmt({{"k", k}}), r0[k], kNaN, stab));
    out.push_back(make_row("low_norm.X00.starred", fmt({{"k", k}}), r0s[k], kNaN, stab));
    out.push_back(make_row("low_norm.X10", fmt({{"k", k}}), r1[k], kNaN, stab));
  }
  // One constant for every k: the pooled maximum over k must be stable too.
  for (int i = 0; i < n2; ++i) {
    double a = 0.0, b = 0.0;
    for (int k = 0; k <= 3; ++k) {
      a = std::max(a, r0[k][i]);
      b = std::max(b, r0s[k][i]);
    }
    all0.push_back(a);
    all0s.push_back(b);
  }
  out.push_back(make_row("low_norm.X00", "k=0..3", all0, kNaN, stab));
  out.push_back(make_row("low_norm.X00.starred", "k=0..3", all0s, kNaN, stab));
}

}  // namespace

std::vector<WitnessRow> inequality_witness_suite(const WitnessOptions& opt) {
  if (opt.dim != 2 && opt.dim != 3) throw InputError("witness: dim must be 2 or 3");
  if (opt.samples < 2) throw InputError("witness: need at least 2 samples");
  const Setup su = setup_for(opt.dim);
  const int n2 = 2 * opt.samples;
  const double st = opt.stability;
  std::vector<WitnessRow> out;
  Rng g(opt.seed);
  const int budget = opt.refine_budget;
  std::vector<WitnessRow> tr = run_family(trace_family(su), n2, g, st, budget / 2);
  for (size_t q = 0; q < tr.size(); q += 3) {
    out.insert(out.end(), tr.begin() + q, tr.begin() + q + 3);
    const std::vector<WitnessRow> fam(tr.begin() + q, tr.begin() + q + 3);
    out.push_back(spread_row("trace.r_independence", fam[0].params.substr(0, fam[0].params.find(' ')),
                             fam, st));
  }
  auto add = [&](const Family& f, int b) {
    const auto rows = run_family(f, n2, g, st, b);
    out.insert(out.end(), rows.begin(), rows.end());
  };
  add(embedding_family(su), budget);
  add(derivative_family(su), budget);
  add(product_family(su), 4 * budget);
  add(multiplication_family(su), budget);
  const Atlas atlas = Atlas::create(opt.dim, {opt.delta});
  add(composition_family(su, atlas), budget);
  add(sphere_family(opt.dim), 4 * budget);
  cutoff_rows(opt.delta, st, out);
  if (opt.include_seminorm) seminorm_rows(opt.dim, opt.delta, 2 * opt.seminorm_samples, g, st, out);
  return out;
}

}  // namespace dnsphere
