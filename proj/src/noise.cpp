#include "sca/noise.hpp"

#include <cmath>

namespace sca {

int SeededRng::next_int(int lo, int hi) {
  if (lo > hi) throw ContractViolation("empty integer range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
  // Reject draws in the final partial copy of [0, range) so every value is
  // equally likely.
  const std::uint64_t limit = (0 - range) / range * range + range;  // largest multiple
  std::uint64_t u;
  do {
    u = engine_();
  } while (limit != 0 && u >= limit);
  return lo + static_cast<int>(u % range);
}

const char* noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::random_valued: return "random_valued";
    case NoiseKind::salt_pepper: return "salt_pepper";
    case NoiseKind::missing: return "missing";
  }
  throw ContractViolation("invalid noise kind");
}

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "random_valued") return NoiseKind::random_valued;
  if (name == "salt_pepper") return NoiseKind::salt_pepper;
  if (name == "missing") return NoiseKind::missing;
  throw ContractViolation("unknown noise kind \"" + name + "\"");
}

CorruptResult corrupt(const Image& img, const NoiseSpec& spec) {
  if (!(spec.level >= 0.0 && spec.level <= 1.0))
    throw ContractViolation("noise level must be in [0, 1]");
  if (spec.kind != NoiseKind::random_valued) {
    for (double p : img.data())
      if (p < 1.0 || p > 254.0)
        throw ContractViolation(std::string(noise_kind_name(spec.kind)) +
                                " noise requires pixels in [1, 254], found " +
                                std::to_string(p));
  }

  CorruptResult out{img, Image(img.height(), img.width(), 0.0)};
  SeededRng rng(spec.seed);
  const std::size_t count = img.data().size();
  for (std::size_t i = 0; i < count; ++i) {
    if (rng.next_unit() >= spec.level) continue;
    const double original = img.data()[i];
    double replacement = 0.0;
    switch (spec.kind) {
      case NoiseKind::random_valued: {
        int v;
        do {
          v = rng.next_int(0, 255);
        } while (static_cast<double>(v) == original);
        replacement = v;
        break;
      }
      case NoiseKind::salt_pepper:
        replacement = rng.next_unit() < 0.5 ? 0.0 : 255.0;
        break;
      case NoiseKind::missing:
        replacement = 0.0;
        break;
    }
    out.noisy.data()[i] = replacement;
    out.mask.data()[i] = 1.0;
  }
  return out;
}

Image remap_interior(const Image& img) {
  Image out(img.height(), img.width());
  for (std::size_t i = 0; i < img.data().size(); ++i)
    out.data()[i] = std::round(1.0 + img.data()[i] * 253.0 / 255.0);
  return out;
}

}  // namespace sca
