#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "sca/errors.hpp"

namespace sca {

// Orthonormal DCT-II basis of size n.  Row x is
//   t[x][y] = a(x) * cos((2y+1) x pi / (2n)),  a(0) = sqrt(1/n), else sqrt(2/n).
struct DctBasis {
  int n = 0;
  Eigen::MatrixXd t;  // n x n, rows are basis vectors
};

DctBasis dct_basis(int n);

// 2-D transform of one block: T * S * T'.  Inverse: T' * C * T.
Eigen::MatrixXd block_dct(const Eigen::MatrixXd& block, const DctBasis& basis);
Eigen::MatrixXd inverse_block_dct(const Eigen::MatrixXd& coeffs, const DctBasis& basis);

// JPEG zigzag scan order over an n x n grid, starting (0,0), (0,1), (1,0), ...
// forward[k] is the (row, col) visited at scan position k.
struct ZigzagOrder {
  int n = 0;
  std::vector<std::pair<int, int>> forward;
};

ZigzagOrder zigzag_order(int n);

Eigen::VectorXd zigzag(const Eigen::MatrixXd& block, const ZigzagOrder& order);
Eigen::MatrixXd inverse_zigzag(const Eigen::VectorXd& v, const ZigzagOrder& order);

// m x m matrix (m = n^2) that applies the 2-D DCT directly to zigzag-scanned
// vectors:  sensing_matrix * zigzag(E) == zigzag(T * E * T') for every E.
// Entry (i, j) = t[u_i][u_j] * t[v_i][v_j] where (u_k, v_k) is the k-th
// zigzag position.  Orthonormal because the basis is.
Eigen::MatrixXd sensing_matrix(const DctBasis& basis, const ZigzagOrder& order);

// Everything needed to form per-block observations: the scan, the full
// transform-domain matrix g and its last (m - retained) rows h.  A vector
// sparse in the pixel domain is observed through h in the discarded
// coefficient tail.
struct SensingSystem {
  int block_size = 0;
  int coeff_count = 0;  // m = block_size^2
  int retained = 0;     // n, coefficients kept by the compression stage
  DctBasis basis;
  ZigzagOrder order;
  Eigen::MatrixXd g;  // m x m
  Eigen::MatrixXd h;  // (m - retained) x m, rows retained..m-1 of g
};

// Requires 1 <= retained < block_size^2.
SensingSystem sensing_system(int block_size, int retained);

// Number of coefficients kept for a given compression ratio:
// round(m / ratio) clamped into [1, m-1].  ratio must be > 1.
int retained_count(int block_size, double compression_ratio);

}  // namespace sca
