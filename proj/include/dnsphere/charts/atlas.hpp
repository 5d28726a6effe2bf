#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dnsphere {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);
double smooth_step_derivative(double t);
// 1 for t <= 1, 0 for t >= 2.
double cutoff_one_two(double t);
double cutoff_one_two_derivative(double t);

// f(x) = (-x'/x_n, 1 - |x|) on x_n < 0, and its inverse
// g(y) = (1 - y_n)(1 + |y'|^2)^{-1/2} (y', -1) on y_n < 1.
Eigen::VectorXd chart_f(const Eigen::VectorXd& x);
Eigen::VectorXd chart_g(const Eigen::VectorXd& y);

// Orthogonal, det 1, maps p to the south pole (0, ..., 0, -1).
Eigen::MatrixXd rotation_to_south(const Eigen::VectorXd& p);

// Blocks of R_l R_j^{-1} = [A b; c d].
struct TransitionBlocks {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;
  double d = 1.0;
};

// The extended transition for given blocks.
Eigen::VectorXd extended_transition(const TransitionBlocks& t, double delta, const Eigen::VectorXd& yp);
Eigen::VectorXd affine_transition(const TransitionBlocks& t, const Eigen::VectorXd& yp);

struct NewtonInverse {
  Eigen::VectorXd y;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

struct AtlasOptions {
  double delta = 0.1;
  // Bump support radius is 2 delta times this.
  double bump_scale = 0.97;
  // Candidate points for the greedy cover on S^2.
  int candidates = 20000;
};

class Atlas {
 public:
  static Atlas create(int dim, const AtlasOptions& opt = {});

  int dim() const { return dim_; }
  double delta() const { return delta_; }
  int size() const { return static_cast<int>(p_.size()); }
  const Eigen::VectorXd& center(int j) const { return p_[j]; }
  const Eigen::MatrixXd& rotation(int j) const { return R_[j]; }
  const std::vector<int>& neighbors(int j) const { return nb_[j]; }
  // Radius of the image of K_j on the sphere in chart coordinates.
  double r_delta() const;

  double bump(int j, const Eigen::VectorXd& x) const;
  // Piece attached to K_0 = B_{1 - delta}; zero on the annulus.
  double interior_bump(const Eigen::VectorXd& x) const;
  double psi(int j, const Eigen::VectorXd& x) const;
  double psi_interior(const Eigen::VectorXd& x) const;
  // psi_j for all charts at x (mostly zeros).
  Eigen::VectorXd psi_all(const Eigen::VectorXd& x) const;
  // Charts whose bump does not vanish at x.
  std::vector<int> active_charts(const Eigen::VectorXd& x) const;

  Eigen::VectorXd f(int j, const Eigen::VectorXd& x) const;
  Eigen::VectorXd g(int j, const Eigen::VectorXd& y) const;

  bool overlapping(int l, int j) const;
  TransitionBlocks blocks(int l, int j) const;
  Eigen::VectorXd transition_direct(int l, int j, const Eigen::VectorXd& y) const;
  Eigen::VectorXd transition_formula(int l, int j, const Eigen::VectorXd& yp) const;
  Eigen::VectorXd transition_extended(int l, int j, const Eigen::VectorXd& yp) const;
  Eigen::MatrixXd transition_extended_jacobian(int l, int j, const Eigen::VectorXd& yp) const;
  // The affine map the extension agrees with for |y'| >= 8 delta.
  Eigen::VectorXd transition_affine(int l, int j, const Eigen::VectorXd& yp) const;
  NewtonInverse transition_extended_inverse(int l, int j, const Eigen::VectorXd& z,
                                            double tol = 1e-13, int max_iter = 60) const;

 private:
  int dim_ = 2;
  double delta_ = 0.1;
  double bump_radius_ = 0.2;
  std::vector<Eigen::VectorXd> p_;
  std::vector<Eigen::MatrixXd> R_;
  std::vector<std::vector<int>> nb_;
  double denominator(const Eigen::VectorXd& x, const std::vector<int>& act) const;
};

struct PartitionCheck {
  int samples = 0;
  double max_sum_defect = 0.0;   // |sum_j psi_j - 1| on the annulus
  double min_psi = 0.0;
  double max_support_leak = 0.0;  // psi_j outside K_j
  double max_total_defect = 0.0;  // |psi_0 + sum psi_j - 1| in the closed ball
};

// Random samples in 1 - delta <= |x| <= 1 and in the ball.
PartitionCheck check_partition(const Atlas& atlas, int samples, unsigned long long seed);

struct InverseEvidence {
  int pairs = 0;
  int points = 0;
  int failures = 0;  // Newton did not reach tol or missed the preimage
  int max_iterations = 0;
  double max_residual = 0.0;  // relative to max(1, |z|)
  double max_preimage_error = 0.0;
};

// Newton inversion of every overlapping extended transition at the images of
// y' = rho e for rho in {0, 1, 2, 4, 6, 8, 12} delta and 2(n-1) directions e.
InverseEvidence check_transition_inverses(const Atlas& atlas, double tol = 1e-12);

}  // namespace dnsphere
