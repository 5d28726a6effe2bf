#include "dnsphere/dn/scans.hpp"

#include <cmath>
#include <limits>

#include "dnsphere/error.hpp"

namespace dnsphere {

RadiusScan radius_scan(const BoundaryField& hd, const std::vector<double>& amplitudes,
                       const BoundaryField& psi, const RadiusScanOptions& opt) {
  const BallSpacePtr sp = resolve_space(hd.dim(), std::max(hd.L(), psi.L()), opt.dn);
  RadiusScan out;
  for (double a : amplitudes) {
    const ShapeState s = build_shape(a * hd, sp, opt.dn.M_cap);
    SeriesOptions so;
    so.M = std::max(opt.M, opt.M_ref);
    so.tol = 1e-17;
    so.keep_terms = true;
    const SeriesSolution ser = series_solve(s, psi, so);
    // The reported series stops at opt.M; the longer run is the reference.
    std::vector<double> head(ser.terms_h1.begin(),
                             ser.terms_h1.begin() + std::min<size_t>(ser.terms_h1.size(), opt.M + 1));
    const double ratio = fit_geometric_ratio(head);
    const size_t Nh = head.size();
    const bool diverging = Nh >= 4 && head[Nh - 1] >= head[Nh - 2] && head[Nh - 2] >= head[Nh - 3] &&
                           head[Nh - 1] > 0.0;
    for (size_t m = 0; m < Nh; ++m)
      out.rows.push_back({a, static_cast<int>(m), head[m], ratio, !diverging});

    const BoundaryField Gref = assemble_G(s, ser.u_total, psi);
    std::vector<BoundaryField> partial;
    BallField acc = ser.terms[0];
    partial.push_back(assemble_G(s, acc, psi));
    for (size_t m = 1; m < ser.terms.size(); ++m) {
      acc += ser.terms[m];
      partial.push_back(assemble_G(s, acc, psi));
    }
    for (double sv : opt.s_grid) {
      const double ref = sobolev_norm(Gref, sv);
      int Ms = -1;
      for (int M = static_cast<int>(partial.size()) - 1; M >= 0; --M) {
        if (sobolev_norm(partial[M] - Gref, sv) <= opt.tol_M * ref) Ms = M;
        else break;
      }
      out.truncation.push_back({a, sv, Ms});
    }
  }
  return out;
}

TameFit fit_tame_constants(const std::vector<double>& G, const std::vector<double>& a,
                           const std::vector<double>& b, bool allow_cs) {
  const size_t N = G.size();
  TameFit f{0.0, 0.0, 0.0, 0};
  if (N == 0) return f;
  auto feasible = [&](double c0, double cs) {
    if (c0 < 0 || cs < 0) return false;
    for (size_t i = 0; i < N; ++i)
      if (c0 * a[i] + cs * b[i] < G[i] * (1.0 - 1e-12)) return false;
    return true;
  };
  auto objective = [&](double c0, double cs) {
    double o = 0;
    for (size_t i = 0; i < N; ++i) o += (c0 * a[i] + cs * b[i]) / std::max(G[i], 1e-300);
    return o;
  };
  double c0 = 0;
  for (size_t i = 0; i < N; ++i) c0 = std::max(c0, a[i] > 0 ? G[i] / a[i] : 0.0);
  double best_c0 = c0, best_cs = 0.0, best = objective(c0, 0.0);
  if (allow_cs) {
    std::vector<std::pair<double, double>> cand;
    double cs = 0;
    for (size_t i = 0; i < N; ++i) cs = std::max(cs, b[i] > 0 ? G[i] / b[i] : 0.0);
    cand.push_back({0.0, cs});
    for (size_t i = 0; i < N; ++i)
      for (size_t j = i + 1; j < N; ++j) {
        const double det = a[i] * b[j] - a[j] * b[i];
        if (std::abs(det) < 1e-300) continue;
        cand.push_back({(G[i] * b[j] - G[j] * b[i]) / det, (a[i] * G[j] - a[j] * G[i]) / det});
      }
    for (const auto& [x, y] : cand) {
      if (!feasible(x, y)) continue;
      const double o = objective(x, y);
      if (o < best * (1.0 - 1e-12) || (o <= best * (1.0 + 1e-12) && y < best_cs)) {
        best = o;
        best_c0 = x;
        best_cs = y;
      }
    }
  }
  f.C0 = best_c0;
  f.Cs = best_cs;
  for (size_t i = 0; i < N; ++i)
    if (f.C0 * a[i] + f.Cs * b[i] < G[i] * (1.0 - 1e-10)) ++f.violations;
  return f;
}

TameReport tame_scan(const std::vector<TameSample>& samples, const std::vector<double>& s_grid,
                     double s0, const DnOptions& opt) {
  TameReport rep;
  std::vector<BoundaryField> Gs;
  for (const auto& smp : samples) Gs.push_back(dn_apply(smp.h, smp.psi, opt));
  for (double s : s_grid) {
    std::vector<double> G, a, b;
    for (size_t i = 0; i < samples.size(); ++i) {
      TameRow r;
      r.sample = static_cast<int>(i);
      r.s = s;
      r.G_s = sobolev_norm(Gs[i], s);
      r.psi_s1 = sobolev_norm(samples[i].psi, s + 1);
      r.psi_s01 = sobolev_norm(samples[i].psi, s0 + 1);
      r.h_s1 = sobolev_norm(samples[i].h, s + 1);
      rep.rows.push_back(r);
      G.push_back(r.G_s);
      a.push_back(r.psi_s1);
      b.push_back((1.0 + r.h_s1) * r.psi_s01);
    }
    TameFit f = fit_tame_constants(G, a, b, s > s0);
    f.s = s;
    rep.fits.push_back(f);
  }
  return rep;
}

}  // namespace dnsphere
