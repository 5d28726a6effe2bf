#include "dnsphere/spectral/boundary_field.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/angular_transform.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

BoundaryField::BoundaryField(int dim, int L)
    : dim_(dim), L_(L), c_(Eigen::VectorXd::Zero(mode_count(dim, L))) {}

BoundaryField::BoundaryField(int dim, int L, Eigen::VectorXd coeffs)
    : dim_(dim), L_(L), c_(std::move(coeffs)) {
  if (c_.size() != mode_count(dim, L))
    throw InputError("BoundaryField: coefficient count does not match band limit");
  if (!c_.allFinite()) throw InputError("BoundaryField: non-finite coefficient");
}

BoundaryField BoundaryField::resized(int L) const {
  BoundaryField out(dim_, L);
  const int n = std::min(out.size(), size());
  out.c_.head(n) = c_.head(n);
  return out;
}

BoundaryField& BoundaryField::operator+=(const BoundaryField& o) {
  if (o.dim_ != dim_) throw InputError("dimension mismatch");
  if (o.L_ > L_) *this = resized(o.L_);
  c_.head(o.size()) += o.c_;
  return *this;
}

BoundaryField& BoundaryField::operator-=(const BoundaryField& o) {
  if (o.dim_ != dim_) throw InputError("dimension mismatch");
  if (o.L_ > L_) *this = resized(o.L_);
  c_.head(o.size()) -= o.c_;
  return *this;
}

BoundaryField& BoundaryField::operator*=(double a) {
  c_ *= a;
  return *this;
}

BoundaryField operator+(BoundaryField a, const BoundaryField& b) { return a += b; }
BoundaryField operator-(BoundaryField a, const BoundaryField& b) { return a -= b; }
BoundaryField operator*(double s, BoundaryField a) { return a *= s; }

namespace {

void require_grid(const AngularGrid& grid, int dim, int L, const char* what) {
  if (grid.dim() != dim) throw InputError(std::string(what) + ": grid dimension mismatch");
  if (grid.max_band_limit() < L)
    throw ResolutionError(std::string(what) + ": grid cannot represent degree " +
                          std::to_string(L));
}

}  // namespace

Eigen::VectorXd synth(const BoundaryField& f, const AngularGrid& grid) {
  require_grid(grid, f.dim(), f.L(), "synth");
  AngularTransform T(grid, f.L());
  return T.synth(f.coeffs());
}

BoundaryField analyze(const Eigen::VectorXd& v, const AngularGrid& grid, int L) {
  return analyze_report(v, grid, L).field;
}

AnalysisReport analyze_report(const Eigen::VectorXd& v, const AngularGrid& grid,
                              int L) {
  require_grid(grid, grid.dim(), L, "analyze");
  if (v.size() != grid.size()) throw InputError("analyze: sample count mismatch");
  if (!v.allFinite()) throw InputError("analyze: non-finite sample");
  AngularTransform T(grid, L);
  AnalysisReport r;
  r.field = BoundaryField(grid.dim(), L, T.analyze(v));
  const double total = v.cwiseProduct(v).dot(grid.weights());
  const double kept = r.field.coeffs().squaredNorm();
  r.out_of_band = total > 0 ? std::sqrt(std::max(0.0, total - kept) / total) : 0.0;
  return r;
}

double eval(const BoundaryField& f, const Eigen::VectorXd& xhat) {
  return eval_modes(f.dim(), f.L(), xhat).dot(f.coeffs());
}

double sobolev_norm(const BoundaryField& f, double s) {
  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i)
    acc += std::pow(1.0 + mode_eigenvalue(f.dim(), i), s) * f[i] * f[i];
  return std::sqrt(acc);
}

std::vector<BoundaryField> tangential_gradient(const BoundaryField& f) {
  const AngularGrid grid = AngularGrid::for_degree(f.dim(), f.L() + 1);
  AngularTransform T(grid, f.L());
  AngularTransform T1(grid, f.L() + 1);
  const auto comps = T.synth_tangential(f.coeffs());
  std::vector<BoundaryField> out;
  for (const auto& c : comps)
    out.emplace_back(f.dim(), f.L() + 1, T1.analyze(c).col(0));
  return out;
}

ProductResult multiply(const BoundaryField& f, const BoundaryField& g, int L_max) {
  if (f.dim() != g.dim()) throw InputError("multiply: dimension mismatch");
  const int Lp = f.L() + g.L();
  const int Lout = std::min(Lp, L_max);
  const AngularGrid grid = AngularGrid::exact_for(f.dim(), 2 * Lp + 1);
  const Eigen::VectorXd v = AngularTransform(grid, f.L()).synth(f.coeffs()).col(0).cwiseProduct(
      AngularTransform(grid, g.L()).synth(g.coeffs()).col(0));
  ProductResult r;
  r.field = BoundaryField(f.dim(), Lout, AngularTransform(grid, Lout).analyze(v).col(0));
  const double total = v.cwiseProduct(v).dot(grid.weights());
  r.truncated_l2 = std::sqrt(std::max(0.0, total - r.field.coeffs().squaredNorm()));
  return r;
}

BoundaryField project_function(int dim, int L,
                               const std::function<double(const Eigen::VectorXd&)>& fn,
                               int extra) {
  const AngularGrid grid = AngularGrid::exact_for(dim, 2 * L + 1 + std::max(0, extra));
  Eigen::VectorXd v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v[k] = fn(grid.points().col(k));
  return analyze(v, grid, L);
}

nlohmann::json to_json(const BoundaryField& f) {
  nlohmann::json j;
  j["dim"] = f.dim();
  j["degree_cut"] = f.L();
  j["coeffs"] = std::vector<double>(f.coeffs().data(), f.coeffs().data() + f.size());
  return j;
}

BoundaryField boundary_field_from_json(const nlohmann::json& j) {
  const auto c = j.at("coeffs").get<std::vector<double>>();
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
  return BoundaryField(j.at("dim").get<int>(), j.at("degree_cut").get<int>(), v);
}

}  // namespace dnsphere
