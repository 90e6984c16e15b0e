#include "sca/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sca {

Sl0Projector::Sl0Projector(Eigen::MatrixXd h) : h_(std::move(h)) {
  if (h_.rows() < 1 || h_.cols() < 1) throw ContractViolation("empty matrix");
  if (h_.rows() >= h_.cols())
    throw ContractViolation("system is not underdetermined: " + std::to_string(h_.rows()) +
                            " rows x " + std::to_string(h_.cols()) + " cols");
  if (!h_.allFinite()) throw ContractViolation("matrix has non-finite entries");

  const Eigen::MatrixXd gram = h_ * h_.transpose();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(h_.rows(), h_.rows());
  if ((gram - identity).cwiseAbs().maxCoeff() <= 1e-10) {
    // Orthonormal rows: pseudo-inverse is just the transpose.
    pinv_t_ = h_.transpose();
    return;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const Eigen::VectorXd d = ldlt.vectorD();
  if (ldlt.info() != Eigen::Success || d.minCoeff() <= 1e-12 * d.maxCoeff())
    throw SolverError("rank-deficient constraint matrix");
  pinv_t_ = ldlt.solve(h_).transpose();
}

Eigen::VectorXd Sl0Projector::min_norm_solution(const Eigen::VectorXd& x) const {
  return pinv_t_ * x;
}

void Sl0Projector::project(Eigen::VectorXd& z, const Eigen::VectorXd& x) const {
  z.noalias() -= pinv_t_ * (h_ * z - x);
}

Eigen::VectorXd sl0_solve(const Sl0Projector& projector, const Eigen::VectorXd& x_tail,
                          const Sl0Params& params) {
  if (x_tail.size() != projector.h().rows())
    throw ContractViolation("observation length does not match matrix rows");
  if (!x_tail.allFinite()) throw ContractViolation("observation has non-finite entries");
  if (!(params.sigma_min > 0.0) || !(params.sigma_decrease > 0.0) ||
      !(params.sigma_decrease < 1.0) || !(params.mu > 0.0) || params.inner_iterations < 1)
    throw ContractViolation("invalid smoothed-L0 parameters");

  Eigen::VectorXd z = projector.min_norm_solution(x_tail);
  const double peak = z.cwiseAbs().maxCoeff();
  if (peak == 0.0) return z;  // x_tail = 0: zero is feasible and maximally sparse

  for (double sigma = 2.0 * peak; sigma > params.sigma_min;
       sigma *= params.sigma_decrease) {
    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    for (int it = 0; it < params.inner_iterations; ++it) {
      // Gradient ascent on sum exp(-z^2/2sigma^2), step mu*sigma^2, followed
      // by projection back onto the constraint set.
      Eigen::VectorXd delta =
          z.array() * (-(z.array().square()) * inv_two_sigma_sq).exp();
      z -= params.mu * delta;
      projector.project(z, x_tail);
    }
  }
  return z;
}

Eigen::VectorXd sl0_solve(const Eigen::MatrixXd& h, const Eigen::VectorXd& x_tail,
                          const Sl0Params& params) {
  return sl0_solve(Sl0Projector(h), x_tail, params);
}

ErrorEstimate least_squares_known_support(const Eigen::MatrixXd& h,
                                          const Eigen::VectorXd& x_tail,
                                          const std::vector<int>& support) {
  if (x_tail.size() != h.rows())
    throw ContractViolation("observation length does not match matrix rows");
  if (static_cast<Eigen::Index>(support.size()) > h.rows())
    throw CapacityExceeded("support size " + std::to_string(support.size()) +
                           " exceeds observation count " + std::to_string(h.rows()));

  ErrorEstimate est;
  est.values = Eigen::VectorXd::Zero(h.cols());
  if (support.empty()) return est;

  Eigen::MatrixXd h_trunc(h.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) {
    const int col = support[i];
    if (col < 0 || col >= h.cols())
      throw ContractViolation("support index " + std::to_string(col) + " out of range");
    h_trunc.col(static_cast<Eigen::Index>(i)) = h.col(col);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h_trunc, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw SolverError("rank-deficient support columns (condition ~" +
                      std::to_string(sv(0) / std::max(sv(sv.size() - 1), 1e-300)) + ")");
  const Eigen::VectorXd w = svd.solve(x_tail);

  est.support = support;
  for (std::size_t i = 0; i < support.size(); ++i)
    est.values(support[i]) = w(static_cast<Eigen::Index>(i));
  return est;
}

ErrorEstimate threshold_to_sparse(const Eigen::VectorXd& z, double tau) {
  if (!(tau >= 0.0)) throw ContractViolation("threshold must be >= 0");
  ErrorEstimate est;
  est.values = Eigen::VectorXd::Zero(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > tau) {
      est.values(i) = z(i);
      est.support.push_back(static_cast<int>(i));
    }
  }
  return est;
}

}  // namespace sca
