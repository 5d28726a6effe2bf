#include "dnsphere/harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "dnsphere/charts/chart_norms.hpp"
#include "dnsphere/charts/witness.hpp"
#include "dnsphere/dn/scans.hpp"
#include "dnsphere/error.hpp"
#include "dnsphere/harness/random_fields.hpp"
#include "dnsphere/oracles/oracles.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

DnOptions dn_options(const RunConfig& c) {
  DnOptions o;
  o.L = c.L;
  o.ball.n_radial = c.N_r;
  o.method = c.method == "fixed_point" ? SolveMethod::FixedPoint : SolveMethod::Series;
  o.series.M = c.M;
  o.series.tol = c.tol;
  o.M_cap = c.M_cap;
  return o;
}

// Errors that belong to one sample and should not abort the run.
bool numerical(const std::exception& e) {
  return dynamic_cast<const Error*>(&e) != nullptr && dynamic_cast<const ConfigError*>(&e) == nullptr;
}

std::string status_of(const std::exception& e) {
  std::string w = e.what();
  std::replace(w.begin(), w.end(), '\n', ' ');
  return "error: " + w;
}

double rel_l2(const BoundaryField& a, const BoundaryField& b) {
  const double nb = sobolev_norm(b, 0);
  const double d = sobolev_norm(a - b.resized(a.L()), 0);
  return nb > 0 ? d / nb : d;
}

struct ApplyOut {
  BoundaryField G, oracle;
  bool has_oracle = false;
  int M_used = 0;
  bool converged = true;
  double ratio = kNaN, margin = kNaN, residual = kNaN, err = kNaN;
  std::string status = "ok";
};

}  // namespace

CommandResult cmd_apply(const RunConfig& c) {
  const DnOptions o = dn_options(c);
  if (c.oracle == "translated_ball" && c.h_family != "translated")
    throw ConfigError("oracle translated_ball needs h_family = translated");
  if (c.oracle == "scaled_sphere" && c.h_family != "constant" && c.h_family != "zero")
    throw ConfigError("oracle scaled_sphere needs h_family = constant or zero");
  const BallSpacePtr space = resolve_space(c.dim, c.L, o);
  std::vector<ApplyOut> res(c.samples);
  parallel_for(c.samples, c.threads, [&](int i) {
    ApplyOut& r = res[i];
    try {
      SampleFields f = make_sample(c, i);
      if (c.oracle == "translated_ball") {
        TranslatedBallOptions to;
        to.L_h = c.h_L;
        const TranslatedBallResult t = translated_ball_oracle(c.h_amp, f.psi, c.L, to);
        f.h = t.h;
        r.oracle = t.G;
        r.has_oracle = true;
      }
      const ShapeState s = build_shape(f.h, space, c.M_cap);
      r.margin = s.wellposed_margin;
      BallField u;
      if (o.method == SolveMethod::Series) {
        SeriesSolution sol = series_solve(s, f.psi, o.series);
        u = std::move(sol.u_total);
        r.M_used = sol.M_used;
        r.converged = sol.converged;
        r.ratio = sol.fitted_ratio;
      } else {
        FixedPointResult fp = fixed_point_solve(s, f.psi, o.fixed_point);
        u = std::move(fp.u);
        r.M_used = fp.iterations;
      }
      r.residual = weak_residual(s, u);
      r.G = assemble_G(s, u, f.psi);
      if (c.oracle == "scaled_sphere") {
        r.oracle = scaled_sphere_oracle(c.h_family == "zero" ? 0.0 : c.h_amp, f.psi);
        r.has_oracle = true;
      } else if (c.oracle == "direct_galerkin") {
        r.oracle = direct_galerkin_oracle(f.h, f.psi, o).G;
        r.has_oracle = true;
      }
      if (r.has_oracle) r.err = rel_l2(r.G, r.oracle);
      if (!r.converged) r.status = "not_converged";
    } catch (const std::exception& e) {
      if (!numerical(e)) throw;
      r.converged = false;
      r.status = status_of(e);
    }
  });

  CommandResult out;
  Table coeffs{"apply_coefficients", {"sample", "index", "degree", "G", "oracle_G"}, {}};
  Table diag{"apply_summary",
             {"sample", "method", "M_used", "converged", "fitted_ratio", "wellposed_margin",
              "weak_residual", "rel_l2_error", "status"},
             {}};
  for (int i = 0; i < c.samples; ++i) {
    const ApplyOut& r = res[i];
    for (int k = 0; k < r.G.size(); ++k) {
      const double ov = r.has_oracle ? (k < r.oracle.size() ? r.oracle[k] : 0.0) : kNaN;
      coeffs.add({(long long)i, (long long)k, (long long)mode_degree(c.dim, k), r.G[k], ov});
    }
    diag.add({(long long)i, c.method, (long long)r.M_used, (long long)r.converged, r.ratio,
              r.margin, r.residual, r.err, r.status});
    if (!r.converged) out.exit_code = kExitNumerical;
    out.summary.push_back("sample " + std::to_string(i) + ": " + r.status +
                          (r.has_oracle ? ", rel L2 error vs " + c.oracle + " " + format_cell(r.err) : ""));
  }
  out.tables = {coeffs, diag};
  return out;
}

CommandResult cmd_derivative_check(const RunConfig& c) {
  const DnOptions o = dn_options(c);
  struct Out {
    std::vector<double> e1, e2;
    double asym = kNaN, norm = kNaN;
    std::string status = "ok";
  };
  std::vector<Out> res(c.samples);
  parallel_for(c.samples, c.threads, [&](int i) {
    Out& r = res[i];
    try {
      const SampleFields f = make_sample(c, i);
      const BoundaryField d1 = dn_derivative(f.h, f.eta, f.psi, o);
      const BoundaryField s11 = dn_second_derivative(f.h, f.eta, f.eta, f.psi, o);
      const BoundaryField s12 = dn_second_derivative(f.h, f.eta, f.eta2, f.psi, o);
      const BoundaryField s21 = dn_second_derivative(f.h, f.eta2, f.eta, f.psi, o);
      r.norm = sobolev_norm(s12, 0);
      r.asym = sobolev_norm(s12 - s21, 0);
      const BoundaryField G0 = dn_apply(f.h, f.psi, o);
      for (double t : c.t_grid) {
        const BoundaryField Gp = dn_apply(f.h + t * f.eta, f.psi, o);
        const BoundaryField Gm = dn_apply(f.h - t * f.eta, f.psi, o);
        r.e1.push_back(sobolev_norm((1.0 / (2 * t)) * (Gp - Gm) - d1, 0));
        r.e2.push_back(sobolev_norm((1.0 / (t * t)) * (Gp - 2.0 * G0 + Gm) - s11, 0));
      }
    } catch (const std::exception& e) {
      if (!numerical(e)) throw;
      r.status = status_of(e);
    }
  });
  CommandResult out;
  Table fd{"derivative_fd", {"sample", "order", "t", "fd_error", "error_ratio"}, {}};
  Table sym{"derivative_symmetry", {"sample", "second_norm", "asymmetry", "status"}, {}};
  for (int i = 0; i < c.samples; ++i) {
    const Out& r = res[i];
    for (int order : {1, 2}) {
      const auto& e = order == 1 ? r.e1 : r.e2;
      for (size_t k = 0; k < e.size(); ++k)
        fd.add({(long long)i, (long long)order, c.t_grid[k], e[k], k ? e[k - 1] / e[k] : kNaN});
    }
    sym.add({(long long)i, r.norm, r.asym, r.status});
    if (r.status != "ok") out.exit_code = kExitNumerical;
    std::string line = "sample " + std::to_string(i) + ": " + r.status;
    if (r.e1.size() >= 2)
      line += ", first-order ratio " + format_cell(r.e1[0] / r.e1[1]) + ", second-order ratio " +
              format_cell(r.e2[0] / r.e2[1]);
    out.summary.push_back(line);
  }
  out.tables = {fd, sym};
  return out;
}

CommandResult cmd_radius(const RunConfig& c) {
  RunConfig unit = c;
  unit.h_amp = 1.0;
  const SampleFields f = make_sample(unit, 0);
  RadiusScanOptions o;
  o.dn = dn_options(c);
  o.M = c.M;
  o.M_ref = std::max(40, c.M);
  o.tol_M = c.tol;
  o.s_grid = c.s_grid;
  CommandResult out;
  Table terms{"radius_terms", {"amplitude", "m", "norm_h1", "fitted_ratio", "converged"}, {}};
  Table trunc{"radius_truncation", {"amplitude", "s", "M_s"}, {}};
  try {
    const RadiusScan r = radius_scan(f.h, c.amplitudes, f.psi, o);
    for (const auto& row : r.rows) {
      terms.add({row.amplitude, (long long)row.m, row.norm_h1, row.fitted_ratio, (long long)row.converged});
      if (!row.converged) out.exit_code = kExitNumerical;
    }
    for (const auto& t : r.truncation) trunc.add({t.amplitude, t.s, (long long)t.M_s});
    for (const auto& row : r.rows)
      if (row.m == 0)
        out.summary.push_back("amplitude " + format_cell(row.amplitude) + ": fitted ratio " +
                              format_cell(row.fitted_ratio));
  } catch (const std::exception& e) {
    if (!numerical(e)) throw;
    out.exit_code = kExitNumerical;
    out.summary.push_back(status_of(e));
  }
  out.tables = {terms, trunc};
  return out;
}

CommandResult cmd_tame(const RunConfig& c) {
  std::vector<TameSample> smp;
  for (int i = 0; i < c.samples; ++i) {
    const SampleFields f = make_sample(c, i);
    smp.push_back({f.h, f.psi});
  }
  CommandResult out;
  Table rows{"tame_rows", {"sample", "s", "G_s", "psi_s1", "psi_s01", "h_s1"}, {}};
  Table fits{"tame_fits", {"s", "C0", "Cs", "violations"}, {}};
  try {
    const TameReport r = tame_scan(smp, c.s_grid, c.s0, dn_options(c));
    for (const auto& w : r.rows) rows.add({(long long)w.sample, w.s, w.G_s, w.psi_s1, w.psi_s01, w.h_s1});
    for (const auto& f : r.fits) {
      fits.add({f.s, f.C0, f.Cs, (long long)f.violations});
      out.summary.push_back("s " + format_cell(f.s) + ": C0 " + format_cell(f.C0) + ", Cs " +
                            format_cell(f.Cs) + ", violations " + std::to_string(f.violations));
    }
  } catch (const std::exception& e) {
    if (!numerical(e)) throw;
    out.exit_code = kExitNumerical;
    out.summary.push_back(status_of(e));
  }
  out.tables = {rows, fits};
  return out;
}

CommandResult cmd_norms(const RunConfig& c) {
  AtlasOptions ao;
  ao.delta = c.delta;
  const Atlas atlas = Atlas::create(c.dim, ao);
  ChartGridOptions go;
  go.n_tan = c.n_tan;
  go.box_factor = c.box_factor;
  go.convention = c.convention == "angular" ? FourierConvention::Angular : FourierConvention::Ordinary;
  const ChartNormPlan plan(atlas, c.psi_L, go);
  const int S = static_cast<int>(c.s_grid.size());
  std::vector<std::vector<double>> chart(c.samples), spec(c.samples, std::vector<double>(S));
  parallel_for(c.samples, c.threads, [&](int i) {
    auto rng = sample_rng(c.seed, i, 3);
    const BoundaryField f = random_boundary_field(c.dim, c.psi_L, 1.0, 0.0, rng, false);
    chart[i] = plan.norms(f, c.s_grid);
    for (int k = 0; k < S; ++k) spec[i][k] = sobolev_norm(f, c.s_grid[k]);
  });
  CommandResult out;
  Table eq{"norm_equivalence", {"sample", "s", "spectral", "chart", "ratio"}, {}};
  Table sum{"norm_summary",
            {"s", "min_ratio", "max_ratio", "min_ratio_half", "max_ratio_half", "stable"},
            {}};
  for (int k = 0; k < S; ++k) {
    double lo = INFINITY, hi = 0, lo2 = INFINITY, hi2 = 0;
    const int half = std::max(1, c.samples / 2);
    for (int i = 0; i < c.samples; ++i) {
      const double q = chart[i][k] / spec[i][k];
      eq.add({(long long)i, c.s_grid[k], spec[i][k], chart[i][k], q});
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      if (i < half) {
        lo2 = std::min(lo2, q);
        hi2 = std::max(hi2, q);
      }
    }
    const bool stable = std::abs(lo / lo2 - 1) <= 0.1 && std::abs(hi / hi2 - 1) <= 0.1;
    sum.add({c.s_grid[k], lo, hi, lo2, hi2, (long long)stable});
    out.summary.push_back("s " + format_cell(c.s_grid[k]) + ": chart/spectral in [" +
                          format_cell(lo) + ", " + format_cell(hi) + "]");
  }

  // |u|_{X^{0,0}_k} against ||u||_{L^2(B_1)} for harmonic extensions.
  Table xs{"x_seminorm", {"sample", "k", "starred", "seminorm", "l2_ball", "ratio"}, {}};
  if (!c.x_levels.empty()) {
    const int kmax = *std::max_element(c.x_levels.begin(), c.x_levels.end()) + 1;
    const CutoffFamily cut(c.delta, kmax);
    const BallSpacePtr sp = BallSpace::create(c.dim, c.psi_L);
    const int nx = std::min(c.samples, c.seminorm_samples);
    const int K = static_cast<int>(c.x_levels.size());
    std::vector<double> val(nx * K * 2), l2(nx);
    parallel_for(nx * K * 2, c.threads, [&](int t) {
      const int i = t / (2 * K), k = c.x_levels[(t / 2) % K];
      auto rng = sample_rng(c.seed, i, 3);
      const BoundaryField f = random_boundary_field(c.dim, c.psi_L, 1.0, 0.0, rng, false);
      const BallField u = harmonic_extension(f, sp);
      if (t % (2 * K) == 0) l2[i] = l2_norm(u);
      val[t] = x_seminorm(u, atlas, cut, 0, 0.0, k, t % 2 == 1);
    });
    for (int t = 0; t < nx * K * 2; ++t) {
      const int i = t / (2 * K), k = c.x_levels[(t / 2) % K];
      xs.add({(long long)i, (long long)k, (long long)(t % 2), val[t], l2[i], val[t] / l2[i]});
    }
  }
  // delta_0 evidence: the extended transitions invert from the affine guess
  const InverseEvidence ev = check_transition_inverses(atlas);
  Table inv{"transition_inverse",
            {"delta", "charts", "pairs", "points", "failures", "max_iterations", "max_residual",
             "max_preimage_error"},
            {}};
  inv.add({c.delta, (long long)atlas.size(), (long long)ev.pairs, (long long)ev.points,
           (long long)ev.failures, (long long)ev.max_iterations, ev.max_residual, ev.max_preimage_error});
  out.summary.push_back("extended transitions: " + std::to_string(ev.failures) + " Newton failures over " +
                        std::to_string(ev.points) + " points");
  if (ev.failures > 0) out.exit_code = kExitNumerical;
  out.tables = {eq, sum, xs, inv};
  return out;
}

CommandResult cmd_witness(const RunConfig& c) {
  WitnessOptions o;
  o.dim = c.dim;
  o.samples = c.witness_samples;
  o.seminorm_samples = c.seminorm_samples;
  o.seed = c.seed;
  o.delta = c.delta;
  CommandResult out;
  Table t{"witness",
          {"inequality", "params", "samples", "max_ratio", "max_ratio_half", "bound", "finite",
           "stable", "pass"},
          {}};
  int failed = 0;
  for (const auto& r : inequality_witness_suite(o)) {
    t.add({r.inequality, r.params, (long long)r.samples, r.max_ratio, r.max_ratio_half, r.bound,
           (long long)r.finite, (long long)r.stable, (long long)r.pass});
    if (!r.pass) {
      ++failed;
      out.summary.push_back("FAIL " + r.inequality + " " + r.params);
    }
  }
  out.summary.push_back(std::to_string(t.rows.size()) + " witness rows, " + std::to_string(failed) +
                        " failed");
  if (!std::all_of(t.rows.begin(), t.rows.end(), [](const auto& row) {
        return std::get<long long>(row[6]) == 1;
      }))
    out.exit_code = kExitNumerical;
  out.tables = {t};
  return out;
}

CommandResult run_command(const RunConfig& c) {
  validate(c);
  if (c.psi_family == "mode" && c.psi_mode >= mode_count(c.dim, c.psi_L))
    throw ConfigError("psi_mode outside the band psi_L");
  if (c.command == "apply") return cmd_apply(c);
  if (c.command == "derivative_check") return cmd_derivative_check(c);
  if (c.command == "radius") return cmd_radius(c);
  if (c.command == "tame") return cmd_tame(c);
  if (c.command == "norms") return cmd_norms(c);
  if (c.command == "witness") return cmd_witness(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

}  // namespace dnsphere
