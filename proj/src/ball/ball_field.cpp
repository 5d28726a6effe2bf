#include "dnsphere/ball/ball_field.hpp"

#include <cmath>

#include "dnsphere/error.hpp"
#include "dnsphere/spectral/modes.hpp"

namespace dnsphere {

BallField::BallField(BallSpacePtr space)
    : space_(std::move(space)),
      U_(Eigen::MatrixXd::Zero(space_->modes(), space_->n_radial())) {}

BallField::BallField(BallSpacePtr space, Eigen::MatrixXd nodal)
    : space_(std::move(space)), U_(std::move(nodal)) {
  if (U_.rows() != space_->modes() || U_.cols() != space_->n_radial())
    throw InputError("BallField: nodal matrix has wrong shape");
}

BallField& BallField::operator+=(const BallField& o) {
  if (o.space_ != space_) throw InputError("BallField: different discretizations");
  U_ += o.U_;
  return *this;
}

BallField& BallField::operator-=(const BallField& o) {
  if (o.space_ != space_) throw InputError("BallField: different discretizations");
  U_ -= o.U_;
  return *this;
}

BallField& BallField::operator*=(double a) {
  U_ *= a;
  return *this;
}

BallField operator+(BallField a, const BallField& b) { return a += b; }
BallField operator-(BallField a, const BallField& b) { return a -= b; }
BallField operator*(double s, BallField a) { return a *= s; }

BallField harmonic_extension(const BoundaryField& psi, const BallSpacePtr& space) {
  if (psi.dim() != space->dim()) throw InputError("harmonic_extension: dimension mismatch");
  if (psi.L() > space->L())
    throw ResolutionError("harmonic_extension: boundary data exceeds the ball band limit");
  BallField u(space);
  const auto& r = space->radial_nodes();
  for (int i = 0; i < psi.size(); ++i) {
    const int d = space->degree_of(i);
    for (int j = 0; j < space->n_radial(); ++j) u.nodal()(i, j) = psi[i] * std::pow(r[j], d);
  }
  return u;
}

QuadVector sample_at_quad(const VectorBallField& g) {
  const BallSpace& s = *g.space;
  if (g.L > s.L() + 1) throw ResolutionError("vector field exceeds the quadrature band limit");
  AngularTransform T(s.quad_grid(), g.L);
  QuadVector out;
  for (const auto& c : g.comps) out.push_back(T.synth(s.radial_to_quad(c)));
  return out;
}

BallField poisson_div_solve(const VectorBallField& g) {
  return poisson_div_solve(g.space, sample_at_quad(g));
}

BallField poisson_div_solve(const BallSpacePtr& space, const QuadVector& g) {
  return BallField(space, space->solve_div(g));
}

VectorBallField gradient(const BallField& u) {
  const BallSpace& s = *u.space();
  const int dim = s.dim(), L = s.L(), Nr = s.n_radial();
  const AngularGrid grid = AngularGrid::for_degree(dim, L + 1);
  AngularTransform T(grid, L), T1(grid, L + 1);
  Eigen::MatrixXd D(Nr, Nr);
  for (int j = 0; j < Nr; ++j) D.row(j) = s.interpolator().derivative_row(s.radial_nodes()[j]);
  const Eigen::MatrixXd B = u.nodal() * D.transpose();
  Eigen::MatrixXd A(s.modes(), Nr);
  for (int j = 0; j < Nr; ++j) {
    const double r = s.radial_nodes()[j];
    if (r > 0) {
      A.col(j) = u.nodal().col(j) / r;
    } else {
      // f/r -> f'(0) for degree one, 0 otherwise.
      for (int i = 0; i < s.modes(); ++i) A(i, j) = s.degree_of(i) == 1 ? B(i, j) : 0.0;
    }
  }
  const Eigen::MatrixXd vr = T.synth(B);
  auto tang = T.synth_tangential(A);
  VectorBallField g{u.space(), L + 1, {}};
  for (int k = 0; k < dim; ++k) {
    tang[k] += grid.points().row(k).transpose().asDiagonal() * vr;
    g.comps.push_back(T1.analyze(tang[k]));
  }
  return g;
}

BoundaryField boundary_trace(const BallField& u) {
  return BoundaryField(u.dim(), u.L(), u.nodal().col(u.space()->n_radial() - 1));
}

BoundaryField radial_trace(const BallField& u) {
  const Eigen::RowVectorXd d1 = u.space()->interpolator().derivative_row(1.0);
  return BoundaryField(u.dim(), u.L(), u.nodal() * d1.transpose());
}

double l2_norm(const BallField& u) {
  const BallSpace& s = *u.space();
  const QuadScalar v = s.values_at_quad(u.nodal());
  return std::sqrt(s.integrate(v.cwiseProduct(v)));
}

double h1_norm(const BallField& u) {
  const BallSpace& s = *u.space();
  QuadScalar acc = s.values_at_quad(u.nodal()).array().square().matrix();
  for (const auto& g : s.gradient_at_quad(u.nodal())) acc += g.cwiseProduct(g);
  return std::sqrt(s.integrate(acc));
}

Eigen::VectorXd eval_all_modes(const BallField& u, double r) {
  return u.nodal() * u.space()->interpolator().value_row(r).transpose();
}

namespace {

Eigen::VectorXd direction(const Eigen::VectorXd& x, double& r) {
  r = x.norm();
  if (r > 1.0 + 1e-12) throw InputError("point outside the unit ball");
  if (r == 0.0) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(x.size());
    e[0] = 1.0;
    return e;
  }
  return x / r;
}

}  // namespace

double eval(const BallField& u, const Eigen::VectorXd& x) {
  double r;
  const Eigen::VectorXd xh = direction(x, r);
  return eval_modes(u.dim(), u.L(), xh).dot(eval_all_modes(u, std::min(r, 1.0)));
}

double eval(const VectorBallField& g, int comp, const Eigen::VectorXd& x) {
  double r;
  const Eigen::VectorXd xh = direction(x, r);
  const Eigen::VectorXd radial =
      g.comps[comp] * g.space->interpolator().value_row(std::min(r, 1.0)).transpose();
  return eval_modes(g.space->dim(), g.L, xh).dot(radial);
}

nlohmann::json to_json(const BallField& u) {
  const BallSpace& s = *u.space();
  nlohmann::json j;
  j["dim"] = s.dim();
  j["degree_cut"] = s.L();
  j["radial_nodes"] = std::vector<double>(s.radial_nodes().data(),
                                          s.radial_nodes().data() + s.n_radial());
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < s.modes(); ++i) {
    std::vector<double> row(s.n_radial());
    for (int j2 = 0; j2 < s.n_radial(); ++j2) row[j2] = u.nodal()(i, j2);
    rows.push_back(row);
  }
  j["values"] = rows;
  return j;
}

BallField ball_field_from_json(const nlohmann::json& j, const BallSpacePtr& space) {
  if (j.at("dim").get<int>() != space->dim() || j.at("degree_cut").get<int>() != space->L())
    throw InputError("ball field json does not match the discretization");
  const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(rows.size()) != space->modes()) throw InputError("bad mode count");
  Eigen::MatrixXd U(space->modes(), space->n_radial());
  for (int i = 0; i < space->modes(); ++i) {
    if (static_cast<int>(rows[i].size()) != space->n_radial()) throw InputError("bad radial count");
    for (int k = 0; k < space->n_radial(); ++k) U(i, k) = rows[i][k];
  }
  return BallField(space, U);
}

}  // namespace dnsphere
