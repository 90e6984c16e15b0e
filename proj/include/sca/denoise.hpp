#pragma once

#include <cstdint>
#include <string>

#include "sca/image.hpp"
#include "sca/solvers.hpp"
#include "sca/transforms.hpp"

namespace sca {

enum class Method { median_only, sca, sp_sca, combined };

const char* method_name(Method method);
Method parse_method(const std::string& name);

struct DenoiseConfig {
  int block_size = 8;
  double compression_ratio = 2.0;
  Sl0Params sl0;
  double tau = 10.0;     // impulse amplitude threshold, gray levels
  int median_window = 3;
  Method method = Method::sca;
};

struct DenoiseStats {
  std::int64_t blocks_total = 0;
  std::int64_t blocks_fallback = 0;       // known-support capacity exceeded
  std::int64_t blocks_solver_failed = 0;  // numerical failure, block passed through
};

struct DenoiseResult {
  Image image;
  DenoiseStats stats;
};

// The observation vector for one block: the discarded DCT tail, i.e. the
// last (m - retained) zigzag coefficients.  Zero for clean blocks by the
// sparsity premise, and equal to h * zigzag(error) otherwise.
Eigen::VectorXd block_observation(const Eigen::MatrixXd& block, const SensingSystem& sys);

// Unknown-support restoration of one block: estimate the sparse error from
// the tail via smoothed-L0, threshold, subtract.  On numerical solver
// failure the block is returned unchanged and *solver_failed is set.
Eigen::MatrixXd denoise_block_sca(const Eigen::MatrixXd& block, const SensingSystem& sys,
                                  const Sl0Projector& projector, const DenoiseConfig& cfg,
                                  bool* solver_failed = nullptr);
Eigen::MatrixXd denoise_block_sca(const Eigen::MatrixXd& block, const SensingSystem& sys,
                                  const DenoiseConfig& cfg);

// Flags pixels at the extreme gray levels (0 or 255 after rounding).
Image detect_salt_pepper(const Image& img);

// Known-support restoration: least squares over the flagged positions when
// they fit within the observation capacity (m - retained); otherwise falls
// back to local median imputation of the flagged pixels (*used_fallback).
// A rank-deficient flagged column set also takes the fallback and sets
// *solver_failed.
Eigen::MatrixXd denoise_block_sp(const Eigen::MatrixXd& block,
                                 const Eigen::MatrixXd& known_support_2d,
                                 const SensingSystem& sys, const DenoiseConfig& cfg,
                                 bool* used_fallback = nullptr,
                                 bool* solver_failed = nullptr);

// Whole-image pipeline dispatch:
//   median_only:  median filter
//   sca:          blockwise unknown-support restoration
//   sp_sca:       detect extremes, blockwise known-support restoration
//   combined:     median filter, sca pipeline, median filter
// Blocks are processed in parallel; output and stats are deterministic.
// Pixels are clamped to [0, 255] once, after assembly.
DenoiseResult denoise_image(const Image& img, const DenoiseConfig& cfg);

}  // namespace sca
