#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sca/denoise.hpp"
#include "sca/noise.hpp"

namespace sca {

// One row of experiment output.  Field order here is the CSV column order.
struct RunRecord {
  std::string method;
  std::string noise_kind;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  double psnr_noisy = 0.0;
  double psnr_denoised = 0.0;
  std::int64_t blocks_total = 0;
  std::int64_t blocks_fallback = 0;
  std::int64_t blocks_solver_failed = 0;
  double wall_time_s = 0.0;
};

std::string run_record_csv_header();
std::string run_record_csv_row(const RunRecord& rec);

// Formats a double with '.' separator and shortest round-trip digits;
// infinities render as "inf"/"-inf".
std::string format_double(double v);

// splitmix64 finalizer; the documented mixing step behind cell_seed.
std::uint64_t splitmix64(std::uint64_t x);

// Per-cell noise seed:
//   h = splitmix64(master);
//   h = splitmix64(h ^ (level_index + 1));
//   h = splitmix64(h ^ ((method_index + 1) << 32)).
// A cell's seed depends only on the master seed and its own indices, so
// adding rows or columns to a sweep never shifts other cells' noise.
std::uint64_t cell_seed(std::uint64_t master, std::size_t level_index,
                        std::size_t method_index);

// Builds an interior-valued image whose every block has exactly zero
// zigzag-DCT coefficients at positions retained..m-1.  Blocks are drawn by
// sampling the retained coefficients and inverting; draws whose pixels
// leave [1, 254] are rejected (with shrinking AC amplitude), never rescaled,
// since rescaling would break the zero tail.
Image synth_zero_tail(int size, int block_size, int retained, std::uint64_t seed);

struct DenoiseJob {
  std::string input_path;
  std::string output_path;
  std::string reference_path;  // optional; enables PSNR reporting
  DenoiseConfig cfg;
};

struct ExperimentJob {
  std::string input_path;
  std::string csv_path;
  NoiseKind kind = NoiseKind::random_valued;
  std::vector<double> levels;        // empty = default sweep for the kind
  std::vector<Method> methods;       // empty = default trio for the kind
  std::uint64_t master_seed = 0;
  std::string save_images_dir;       // empty = don't save
  DenoiseConfig cfg;                 // method field ignored (set per cell)
};

struct SynthJob {
  std::string output_path;
  int size = 256;
  int block_size = 8;
  double compression_ratio = 2.0;
  std::uint64_t seed = 0;
};

// Command entry points; return a process exit status and report problems on
// `err`.  The CLI main is a thin flag-parsing wrapper around these.
int cmd_denoise(const DenoiseJob& job, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentJob& job, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthJob& job, std::ostream& out, std::ostream& err);

}  // namespace sca
