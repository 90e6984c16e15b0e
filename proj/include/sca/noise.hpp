#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "sca/image.hpp"

namespace sca {

// Portable seeded random source.  The engine is std::mt19937_64, whose
// output sequence is fixed by the C++ standard, and every derived draw uses
// an explicit mapping (documented per method) rather than unspecified
// std::distribution internals, so streams reproduce across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Raw 64 engine bits.
  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1): top 53 engine bits scaled by 2^-53.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], unbiased via rejection sampling.
  int next_int(int lo, int hi);

  static const char* generator_name() { return "mt19937_64"; }

 private:
  std::mt19937_64 engine_;
};

enum class NoiseKind { random_valued, salt_pepper, missing };

const char* noise_kind_name(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string& name);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::random_valued;
  double level = 0.0;  // corruption probability in [0, 1]
  std::uint64_t seed = 0;
};

struct CorruptResult {
  Image noisy;
  Image mask;  // 1 where a pixel was replaced, else 0
};

// Seeded corruption.  Pixels are visited in row-major order; each consumes
// one Bernoulli draw, and a corrupted pixel consumes further draws for its
// replacement value (one per rejection for random_valued, one for
// salt_pepper, none for missing).  salt_pepper and missing require every
// input pixel in [1, 254] so corrupted pixels stay identifiable.
CorruptResult corrupt(const Image& img, const NoiseSpec& spec);

// Affine remap of [0, 255] onto [1, 254] with rounding; makes any 8-bit
// image satisfy the interior-valued precondition above.
Image remap_interior(const Image& img);

}  // namespace sca
