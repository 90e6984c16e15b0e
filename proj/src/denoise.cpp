#include "sca/denoise.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

namespace sca {

namespace {

// Runs fn(i) for i in [0, count) across hardware threads.  Each index owns
// its output slot, so scheduling cannot affect results.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Median of the unflagged pixels within the expanding square window around
// (r, c); falls back to the median of the whole block if every pixel is
// flagged.
double local_unflagged_median(const Eigen::MatrixXd& block, const Eigen::MatrixXd& flags,
                              int r, int c) {
  const int n = static_cast<int>(block.rows());
  std::vector<double> scratch;
  for (int half = 1; half < n; ++half) {
    scratch.clear();
    for (int rr = std::max(0, r - half); rr <= std::min(n - 1, r + half); ++rr)
      for (int cc = std::max(0, c - half); cc <= std::min(n - 1, c + half); ++cc)
        if (flags(rr, cc) == 0.0) scratch.push_back(block(rr, cc));
    if (!scratch.empty()) break;
  }
  if (scratch.empty()) {
    scratch.assign(block.data(), block.data() + block.size());
  }
  auto mid = scratch.begin() + scratch.size() / 2;
  std::nth_element(scratch.begin(), mid, scratch.end());
  return *mid;
}

Eigen::MatrixXd impute_flagged(const Eigen::MatrixXd& block, const Eigen::MatrixXd& flags) {
  Eigen::MatrixXd out = block;
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c)
      if (flags(r, c) != 0.0) out(r, c) = local_unflagged_median(block, flags, r, c);
  return out;
}

void validate_config(const DenoiseConfig& cfg) {
  retained_count(cfg.block_size, cfg.compression_ratio);  // throws if invalid
  if (!(cfg.tau >= 0.0)) throw ContractViolation("tau must be >= 0");
  if (cfg.median_window < 1 || cfg.median_window % 2 == 0)
    throw ContractViolation("median window must be odd and positive");
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::median_only: return "median_only";
    case Method::sca: return "sca";
    case Method::sp_sca: return "sp_sca";
    case Method::combined: return "combined";
  }
  throw ContractViolation("invalid method");
}

Method parse_method(const std::string& name) {
  if (name == "median_only") return Method::median_only;
  if (name == "sca") return Method::sca;
  if (name == "sp_sca") return Method::sp_sca;
  if (name == "combined") return Method::combined;
  throw ContractViolation("unknown method \"" + name + "\"");
}

Eigen::VectorXd block_observation(const Eigen::MatrixXd& block, const SensingSystem& sys) {
  if (block.rows() != sys.block_size || block.cols() != sys.block_size)
    throw ContractViolation("block size does not match sensing system");
  const Eigen::VectorXd coeffs = zigzag(block_dct(block, sys.basis), sys.order);
  return coeffs.tail(sys.coeff_count - sys.retained);
}

Eigen::MatrixXd denoise_block_sca(const Eigen::MatrixXd& block, const SensingSystem& sys,
                                  const Sl0Projector& projector, const DenoiseConfig& cfg,
                                  bool* solver_failed) {
  if (solver_failed) *solver_failed = false;
  const Eigen::VectorXd x_tail = block_observation(block, sys);
  Eigen::VectorXd z;
  try {
    z = sl0_solve(projector, x_tail, cfg.sl0);
  } catch (const SolverError&) {
    if (solver_failed) *solver_failed = true;
    return block;
  }
  const ErrorEstimate est = threshold_to_sparse(z, cfg.tau);
  if (est.support.empty()) return block;
  return block - inverse_zigzag(est.values, sys.order);
}

Eigen::MatrixXd denoise_block_sca(const Eigen::MatrixXd& block, const SensingSystem& sys,
                                  const DenoiseConfig& cfg) {
  return denoise_block_sca(block, sys, Sl0Projector(sys.h), cfg);
}

Image detect_salt_pepper(const Image& img) {
  Image mask(img.height(), img.width(), 0.0);
  for (std::size_t i = 0; i < img.data().size(); ++i) {
    const long v = std::lround(img.data()[i]);
    if (v == 0 || v == 255) mask.data()[i] = 1.0;
  }
  return mask;
}

Eigen::MatrixXd denoise_block_sp(const Eigen::MatrixXd& block,
                                 const Eigen::MatrixXd& known_support_2d,
                                 const SensingSystem& sys, const DenoiseConfig& cfg,
                                 bool* used_fallback, bool* solver_failed) {
  if (used_fallback) *used_fallback = false;
  if (solver_failed) *solver_failed = false;
  if (known_support_2d.rows() != block.rows() || known_support_2d.cols() != block.cols())
    throw ContractViolation("support mask size does not match block");

  const Eigen::VectorXd flags = zigzag(known_support_2d, sys.order);
  std::vector<int> support;
  for (Eigen::Index i = 0; i < flags.size(); ++i)
    if (flags(i) != 0.0) support.push_back(static_cast<int>(i));
  if (support.empty()) return block;

  if (static_cast<int>(support.size()) <= sys.coeff_count - sys.retained) {
    try {
      const ErrorEstimate est =
          least_squares_known_support(sys.h, block_observation(block, sys), support);
      return block - inverse_zigzag(est.values, sys.order);
    } catch (const SolverError&) {
      if (solver_failed) *solver_failed = true;
      return impute_flagged(block, known_support_2d);
    }
  }
  if (used_fallback) *used_fallback = true;
  return impute_flagged(block, known_support_2d);
}

namespace {

DenoiseResult run_sca_pipeline(const Image& img, const DenoiseConfig& cfg) {
  const SensingSystem sys =
      sensing_system(cfg.block_size, retained_count(cfg.block_size, cfg.compression_ratio));
  const Sl0Projector projector(sys.h);

  Partition part = partition_blocks(img, cfg.block_size);
  const std::size_t count = part.blocks.size();
  std::vector<Eigen::MatrixXd> cleaned(count);
  std::vector<unsigned char> failed(count, 0);
  parallel_for(count, [&](std::size_t i) {
    bool f = false;
    cleaned[i] = denoise_block_sca(part.blocks[i], sys, projector, cfg, &f);
    failed[i] = f ? 1 : 0;
  });

  DenoiseResult out{assemble_blocks(part.grid, cleaned), {}};
  out.stats.blocks_total = static_cast<std::int64_t>(count);
  for (unsigned char f : failed) out.stats.blocks_solver_failed += f;
  clamp_pixels(out.image);
  return out;
}

DenoiseResult run_sp_pipeline(const Image& img, const DenoiseConfig& cfg) {
  const SensingSystem sys =
      sensing_system(cfg.block_size, retained_count(cfg.block_size, cfg.compression_ratio));

  const Image mask = detect_salt_pepper(img);
  Partition part = partition_blocks(img, cfg.block_size);
  Partition mask_part = partition_blocks(mask, cfg.block_size);

  const std::size_t count = part.blocks.size();
  std::vector<Eigen::MatrixXd> cleaned(count);
  std::vector<unsigned char> fallback(count, 0), failed(count, 0);
  parallel_for(count, [&](std::size_t i) {
    bool fb = false, sf = false;
    cleaned[i] = denoise_block_sp(part.blocks[i], mask_part.blocks[i], sys, cfg, &fb, &sf);
    fallback[i] = fb ? 1 : 0;
    failed[i] = sf ? 1 : 0;
  });

  DenoiseResult out{assemble_blocks(part.grid, cleaned), {}};
  out.stats.blocks_total = static_cast<std::int64_t>(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.stats.blocks_fallback += fallback[i];
    out.stats.blocks_solver_failed += failed[i];
  }
  clamp_pixels(out.image);
  return out;
}

}  // namespace

DenoiseResult denoise_image(const Image& img, const DenoiseConfig& cfg) {
  validate_config(cfg);
  switch (cfg.method) {
    case Method::median_only:
      return {median_filter(img, cfg.median_window), {}};
    case Method::sca:
      return run_sca_pipeline(img, cfg);
    case Method::sp_sca:
      return run_sp_pipeline(img, cfg);
    case Method::combined: {
      DenoiseConfig inner = cfg;
      inner.method = Method::sca;
      DenoiseResult mid = run_sca_pipeline(median_filter(img, cfg.median_window), inner);
      return {median_filter(mid.image, cfg.median_window), mid.stats};
    }
  }
  throw ContractViolation("invalid method");
}

}  // namespace sca
