#include "sca/transforms.hpp"

#include <cmath>
#include <numbers>

namespace sca {

DctBasis dct_basis(int n) {
  if (n < 1) throw ContractViolation("DCT size must be >= 1, got " + std::to_string(n));
  DctBasis basis;
  basis.n = n;
  basis.t.resize(n, n);
  const double a0 = std::sqrt(1.0 / n);
  const double ax = std::sqrt(2.0 / n);
  for (int x = 0; x < n; ++x) {
    const double alpha = (x == 0) ? a0 : ax;
    for (int y = 0; y < n; ++y)
      basis.t(x, y) = alpha * std::cos((2 * y + 1) * x * std::numbers::pi / (2 * n));
  }
  return basis;
}

Eigen::MatrixXd block_dct(const Eigen::MatrixXd& block, const DctBasis& basis) {
  if (block.rows() != basis.n || block.cols() != basis.n)
    throw ContractViolation("block size does not match DCT basis");
  return basis.t * block * basis.t.transpose();
}

Eigen::MatrixXd inverse_block_dct(const Eigen::MatrixXd& coeffs, const DctBasis& basis) {
  if (coeffs.rows() != basis.n || coeffs.cols() != basis.n)
    throw ContractViolation("coefficient size does not match DCT basis");
  return basis.t.transpose() * coeffs * basis.t;
}

ZigzagOrder zigzag_order(int n) {
  if (n < 1) throw ContractViolation("zigzag size must be >= 1, got " + std::to_string(n));
  ZigzagOrder order;
  order.n = n;
  order.forward.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    const int lo = std::max(0, s - n + 1);
    const int hi = std::min(s, n - 1);
    if (s % 2) {
      for (int u = lo; u <= hi; ++u) order.forward.emplace_back(u, s - u);  // down-left
    } else {
      for (int u = hi; u >= lo; --u) order.forward.emplace_back(u, s - u);  // up-right
    }
  }
  return order;
}

Eigen::VectorXd zigzag(const Eigen::MatrixXd& block, const ZigzagOrder& order) {
  if (block.rows() != order.n || block.cols() != order.n)
    throw ContractViolation("matrix size does not match zigzag order");
  Eigen::VectorXd out(order.forward.size());
  for (std::size_t i = 0; i < order.forward.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = block(order.forward[i].first, order.forward[i].second);
  return out;
}

Eigen::MatrixXd inverse_zigzag(const Eigen::VectorXd& v, const ZigzagOrder& order) {
  if (v.size() != static_cast<Eigen::Index>(order.forward.size()))
    throw ContractViolation("vector size does not match zigzag order");
  Eigen::MatrixXd out(order.n, order.n);
  for (std::size_t i = 0; i < order.forward.size(); ++i)
    out(order.forward[i].first, order.forward[i].second) = v(static_cast<Eigen::Index>(i));
  return out;
}

Eigen::MatrixXd sensing_matrix(const DctBasis& basis, const ZigzagOrder& order) {
  if (basis.n != order.n) throw ContractViolation("basis and zigzag order sizes differ");
  const int m = basis.n * basis.n;
  Eigen::MatrixXd g(m, m);
  // Separable 2-D DCT rewritten over scan positions: coefficient at scan
  // slot i gathers pixel at scan slot j with weight t(u_i,u_j)*t(v_i,v_j).
  for (int i = 0; i < m; ++i) {
    const auto [ui, vi] = order.forward[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const auto [uj, vj] = order.forward[static_cast<std::size_t>(j)];
      g(i, j) = basis.t(ui, uj) * basis.t(vi, vj);
    }
  }
  return g;
}

SensingSystem sensing_system(int block_size, int retained) {
  const int m = block_size * block_size;
  if (block_size < 1)
    throw ContractViolation("block size must be >= 1, got " + std::to_string(block_size));
  if (retained < 1 || retained >= m)
    throw ContractViolation("retained count " + std::to_string(retained) +
                            " out of range [1, " + std::to_string(m) + ")");
  SensingSystem sys;
  sys.block_size = block_size;
  sys.coeff_count = m;
  sys.retained = retained;
  sys.basis = dct_basis(block_size);
  sys.order = zigzag_order(block_size);
  sys.g = sensing_matrix(sys.basis, sys.order);
  sys.h = sys.g.bottomRows(m - retained);
  return sys;
}

int retained_count(int block_size, double compression_ratio) {
  if (block_size < 1)
    throw ContractViolation("block size must be >= 1, got " + std::to_string(block_size));
  if (!(compression_ratio > 1.0))
    throw ContractViolation("compression ratio must be > 1 (no observation rows would remain)");
  const int m = block_size * block_size;
  if (m < 2)
    throw ContractViolation("block size 1 leaves no room for observation rows");
  const int raw = static_cast<int>(std::lround(m / compression_ratio));
  return std::clamp(raw, 1, m - 1);
}

}  // namespace sca
