#include "sca/runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sca {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string run_record_csv_header() {
  return "method,noise_kind,noise_level,seed,psnr_noisy,psnr_denoised,"
         "blocks_total,blocks_fallback,blocks_solver_failed,wall_time_s";
}

std::string run_record_csv_row(const RunRecord& rec) {
  std::ostringstream row;
  row << rec.method << ',' << rec.noise_kind << ',' << format_double(rec.noise_level) << ','
      << rec.seed << ',' << format_double(rec.psnr_noisy) << ','
      << format_double(rec.psnr_denoised) << ',' << rec.blocks_total << ','
      << rec.blocks_fallback << ',' << rec.blocks_solver_failed << ','
      << format_double(rec.wall_time_s);
  return row.str();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t level_index,
                        std::size_t method_index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(level_index) + 1));
  h = splitmix64(h ^ ((static_cast<std::uint64_t>(method_index) + 1) << 32));
  return h;
}

Image synth_zero_tail(int size, int block_size, int retained, std::uint64_t seed) {
  if (block_size < 1 || size < block_size || size % block_size != 0)
    throw ContractViolation("size must be a positive multiple of block_size");
  const int m = block_size * block_size;
  if (retained < 1 || retained >= m)
    throw ContractViolation("retained count out of range [1, " + std::to_string(m) + ")");

  const DctBasis basis = dct_basis(block_size);
  const ZigzagOrder order = zigzag_order(block_size);
  SeededRng rng(seed);
  Image img(size, size);

  const int grid = size / block_size;
  for (int br = 0; br < grid; ++br) {
    for (int bc = 0; bc < grid; ++bc) {
      // DC keeps the block mean around mid-gray; AC amplitude shrinks after
      // repeated misses so termination only fails for degenerate requests.
      double amplitude = 40.0;
      bool placed = false;
      for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
        if (attempt > 0 && attempt % 50 == 0) amplitude *= 0.5;
        Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(m);
        coeffs(0) = block_size * (100.0 + 56.0 * rng.next_unit());
        for (int i = 1; i < retained; ++i)
          coeffs(i) = amplitude * (2.0 * rng.next_unit() - 1.0);
        const Eigen::MatrixXd block = inverse_block_dct(inverse_zigzag(coeffs, order), basis);
        if (block.minCoeff() < 1.0 || block.maxCoeff() > 254.0) continue;
        for (int r = 0; r < block_size; ++r)
          for (int c = 0; c < block_size; ++c)
            img(br * block_size + r, bc * block_size + c) = block(r, c);
        placed = true;
      }
      if (!placed)
        throw SolverError("could not draw an in-range zero-tail block after 500 attempts");
    }
  }
  return img;
}

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> default_levels(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::random_valued:
    case NoiseKind::salt_pepper:
      return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    case NoiseKind::missing:
      return {0.1, 0.2, 0.3, 0.4};
  }
  throw ContractViolation("invalid noise kind");
}

std::vector<Method> default_methods(NoiseKind kind) {
  if (kind == NoiseKind::random_valued)
    return {Method::median_only, Method::sca, Method::combined};
  return {Method::median_only, Method::sp_sca, Method::combined};
}

// Deterministic per-cell image file name, e.g. "noisy_salt_pepper_p0.3_sca.pgm".
std::string cell_image_name(const char* stage, const ExperimentJob& job, double level,
                            Method method) {
  return std::string(stage) + "_" + noise_kind_name(job.kind) + "_p" + format_double(level) +
         "_" + method_name(method) + ".pgm";
}

}  // namespace

int cmd_denoise(const DenoiseJob& job, std::ostream& out, std::ostream& err) {
  try {
    const Image input = read_pgm(job.input_path);
    const auto start = std::chrono::steady_clock::now();
    const DenoiseResult result = denoise_image(input, job.cfg);
    const double wall = elapsed_seconds(start);
    write_pgm(result.image, job.output_path);

    out << "method=" << method_name(job.cfg.method);
    if (!job.reference_path.empty()) {
      const Image reference = read_pgm(job.reference_path);
      out << " psnr_noisy=" << format_double(psnr(reference, input))
          << " psnr_denoised=" << format_double(psnr(reference, result.image));
    }
    out << " blocks_total=" << result.stats.blocks_total
        << " blocks_fallback=" << result.stats.blocks_fallback
        << " blocks_solver_failed=" << result.stats.blocks_solver_failed
        << " wall_time_s=" << format_double(wall) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << " (input: " << job.input_path << ")\n";
    return 1;
  }
}

int cmd_experiment(const ExperimentJob& job, std::ostream& out, std::ostream& err) {
  try {
    Image clean = read_pgm(job.input_path);
    if (job.kind != NoiseKind::random_valued) clean = remap_interior(clean);

    const std::vector<double> levels =
        job.levels.empty() ? default_levels(job.kind) : job.levels;
    const std::vector<Method> methods =
        job.methods.empty() ? default_methods(job.kind) : job.methods;

    std::ofstream csv(job.csv_path);
    if (!csv) throw std::runtime_error("cannot open " + job.csv_path + " for writing");
    csv << "# generator=" << SeededRng::generator_name()
        << " master_seed=" << job.master_seed << "\n";
    csv << run_record_csv_header() << "\n";

    for (std::size_t li = 0; li < levels.size(); ++li) {
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        RunRecord rec;
        rec.method = method_name(methods[mi]);
        rec.noise_kind = noise_kind_name(job.kind);
        rec.noise_level = levels[li];
        rec.seed = cell_seed(job.master_seed, li, mi);

        const CorruptResult corrupted =
            corrupt(clean, NoiseSpec{job.kind, levels[li], rec.seed});
        rec.psnr_noisy = psnr(clean, corrupted.noisy);

        DenoiseConfig cfg = job.cfg;
        cfg.method = methods[mi];
        const auto start = std::chrono::steady_clock::now();
        const DenoiseResult result = denoise_image(corrupted.noisy, cfg);
        rec.wall_time_s = elapsed_seconds(start);
        rec.psnr_denoised = psnr(clean, result.image);
        rec.blocks_total = result.stats.blocks_total;
        rec.blocks_fallback = result.stats.blocks_fallback;
        rec.blocks_solver_failed = result.stats.blocks_solver_failed;

        csv << run_record_csv_row(rec) << "\n";
        if (!job.save_images_dir.empty()) {
          const std::string base = job.save_images_dir + "/";
          write_pgm(corrupted.noisy,
                    base + cell_image_name("noisy", job, levels[li], methods[mi]));
          write_pgm(result.image,
                    base + cell_image_name("denoised", job, levels[li], methods[mi]));
        }
        out << run_record_csv_row(rec) << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << " (input: " << job.input_path << ")\n";
    return 1;
  }
}

int cmd_synth(const SynthJob& job, std::ostream& out, std::ostream& err) {
  try {
    const int retained = retained_count(job.block_size, job.compression_ratio);
    const Image img =
        synth_zero_tail(job.size, job.block_size, retained, job.seed);
    write_pgm(img, job.output_path);
    out << "wrote " << job.output_path << " (" << job.size << "x" << job.size
        << ", block_size=" << job.block_size << ", retained=" << retained
        << ", seed=" << job.seed << ")\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sca
