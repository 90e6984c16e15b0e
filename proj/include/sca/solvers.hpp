#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sca/errors.hpp"

namespace sca {

// Smoothed-L0 tuning knobs.  Defaults are the canonical settings of the
// method: anneal sigma geometrically from 2*max|initial z| down to
// sigma_min, taking inner_iterations gradient steps per level.
struct Sl0Params {
  double sigma_min = 0.01;      // gray levels
  double sigma_decrease = 0.5;  // multiplicative, in (0,1)
  double mu = 2.0;              // gradient step scale
  int inner_iterations = 3;
};

// Sparse per-block error estimate in zigzag coordinates.
struct ErrorEstimate {
  Eigen::VectorXd values;    // length m; zero off the support
  std::vector<int> support;  // indices of entries deemed nonzero
};

// Feasibility projector onto {z : H z = x} built once per H and shared
// across blocks.  Rows of the sensing H are orthonormal, in which case the
// pseudo-inverse collapses to H^T; this is verified, not assumed.
class Sl0Projector {
 public:
  explicit Sl0Projector(Eigen::MatrixXd h);

  const Eigen::MatrixXd& h() const { return h_; }

  // Minimum-L2-norm solution H^T (H H^T)^-1 x.
  Eigen::VectorXd min_norm_solution(const Eigen::VectorXd& x) const;

  // In place: z <- z - H^T (H H^T)^-1 (H z - x).
  void project(Eigen::VectorXd& z, const Eigen::VectorXd& x) const;

 private:
  Eigen::MatrixXd h_;
  Eigen::MatrixXd pinv_t_;  // H^T (H H^T)^-1
};

// Sparse solution of the underdetermined system H z = x_tail by graduated
// smoothing: maximize sum exp(-z_i^2 / 2 sigma^2) subject to feasibility,
// lowering sigma geometrically.  Output is feasible to
// ||H z - x_tail|| <= 1e-8 (1 + ||x_tail||).
Eigen::VectorXd sl0_solve(const Sl0Projector& projector, const Eigen::VectorXd& x_tail,
                          const Sl0Params& params);
Eigen::VectorXd sl0_solve(const Eigen::MatrixXd& h, const Eigen::VectorXd& x_tail,
                          const Sl0Params& params);

// Least-squares fit of the error amplitudes on a known support: keeps only
// the support's columns of H and solves via SVD pseudo-inverse.  Support
// larger than the observation count is CapacityExceeded; a numerically
// rank-deficient column subset is SolverError.
ErrorEstimate least_squares_known_support(const Eigen::MatrixXd& h,
                                          const Eigen::VectorXd& x_tail,
                                          const std::vector<int>& support);

// support = {i : |z_i| > tau}; values keep z there, zero elsewhere.
ErrorEstimate threshold_to_sparse(const Eigen::VectorXd& z, double tau);

}  // namespace sca
