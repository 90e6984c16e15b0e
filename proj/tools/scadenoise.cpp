#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sca/runner.hpp"

namespace {

void add_config_flags(CLI::App* cmd, sca::DenoiseConfig& cfg) {
  cmd->add_option("--block-size", cfg.block_size, "Block side in pixels")
      ->capture_default_str();
  cmd->add_option("--cr", cfg.compression_ratio,
                  "Compression ratio; retained coefficients = round(block^2 / cr)")
      ->capture_default_str();
  cmd->add_option("--tau", cfg.tau, "Impulse amplitude threshold (gray levels)")
      ->capture_default_str();
  cmd->add_option("--median-window", cfg.median_window, "Median filter window (odd)")
      ->capture_default_str();
  cmd->add_option("--sl0-sigma-min", cfg.sl0.sigma_min, "Smoothed-L0 final sigma")
      ->capture_default_str();
  cmd->add_option("--sl0-decrease", cfg.sl0.sigma_decrease, "Smoothed-L0 sigma decay factor")
      ->capture_default_str();
  cmd->add_option("--sl0-mu", cfg.sl0.mu, "Smoothed-L0 gradient step scale")
      ->capture_default_str();
  cmd->add_option("--sl0-inner", cfg.sl0.inner_iterations, "Smoothed-L0 steps per sigma")
      ->capture_default_str();
}

const std::vector<std::string> kMethodNames = {"median_only", "sca", "sp_sca", "combined"};
const std::vector<std::string> kKindNames = {"random_valued", "salt_pepper", "missing"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Impulse-noise removal for grayscale PGM images via block-DCT sparse recovery"};
  app.require_subcommand(1);

  // denoise
  auto* denoise = app.add_subcommand("denoise", "Denoise one PGM image");
  sca::DenoiseJob djob;
  std::string dmethod = "sca";
  denoise->add_option("input", djob.input_path, "Input PGM")->required();
  denoise->add_option("output", djob.output_path, "Output PGM")->required();
  denoise->add_option("--reference", djob.reference_path,
                      "Clean reference PGM for PSNR reporting");
  denoise->add_option("--method", dmethod, "Reconstruction method")
      ->check(CLI::IsMember(kMethodNames))
      ->capture_default_str();
  add_config_flags(denoise, djob.cfg);

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "Seeded noise-level sweep with CSV metrics");
  sca::ExperimentJob ejob;
  std::string ekind = "random_valued";
  std::vector<std::string> emethods;
  experiment->add_option("input", ejob.input_path, "Clean source PGM")->required();
  experiment->add_option("--csv", ejob.csv_path, "Output CSV path")->required();
  experiment->add_option("--kind", ekind, "Noise kind")
      ->check(CLI::IsMember(kKindNames))
      ->capture_default_str();
  experiment->add_option("--levels", ejob.levels, "Noise probabilities (default: kind's sweep)")
      ->delimiter(',');
  experiment
      ->add_option("--methods", emethods,
                   "Methods to compare (default: median_only + recovery + combined)")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodNames));
  experiment->add_option("--seed", ejob.master_seed, "Master seed")->capture_default_str();
  experiment->add_option("--save-images", ejob.save_images_dir,
                         "Directory for per-cell noisy/denoised PGMs");
  add_config_flags(experiment, ejob.cfg);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a zero-DCT-tail synthetic test image");
  sca::SynthJob sjob;
  std::string skind = "zero_tail";
  synth->add_option("output", sjob.output_path, "Output PGM")->required();
  synth->add_option("--kind", skind, "Synthetic family")
      ->check(CLI::IsMember(std::vector<std::string>{"zero_tail"}))
      ->capture_default_str();
  synth->add_option("--size", sjob.size, "Image side; must be a multiple of block size")
      ->capture_default_str();
  synth->add_option("--seed", sjob.seed, "RNG seed")->capture_default_str();
  synth->add_option("--block-size", sjob.block_size, "Block side in pixels")
      ->capture_default_str();
  synth->add_option("--cr", sjob.compression_ratio, "Compression ratio")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (denoise->parsed()) {
      djob.cfg.method = sca::parse_method(dmethod);
      return sca::cmd_denoise(djob, std::cout, std::cerr);
    }
    if (experiment->parsed()) {
      ejob.kind = sca::parse_noise_kind(ekind);
      for (const std::string& name : emethods) ejob.methods.push_back(sca::parse_method(name));
      return sca::cmd_experiment(ejob, std::cout, std::cerr);
    }
    if (synth->parsed()) return sca::cmd_synth(sjob, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
