#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sca/errors.hpp"

namespace sca {

// Grayscale image with real-valued samples in row-major order.  Values are
// nominally in [0,255] but intermediate results may leave that range; they
// are clamped only when written out as 8-bit PGM.
class Image {
 public:
  Image() = default;

  Image(int height, int width, double fill = 0.0)
      : height_(height), width_(width) {
    if (height < 1 || width < 1)
      throw ContractViolation("image dimensions must be positive, got " +
                              std::to_string(height) + "x" + std::to_string(width));
    data_.assign(static_cast<std::size_t>(height) * width, fill);
  }

  Image(int height, int width, std::vector<double> data)
      : height_(height), width_(width), data_(std::move(data)) {
    if (height < 1 || width < 1)
      throw ContractViolation("image dimensions must be positive, got " +
                              std::to_string(height) + "x" + std::to_string(width));
    if (data_.size() != static_cast<std::size_t>(height) * width)
      throw ContractViolation("pixel buffer size does not match dimensions");
  }

  int height() const { return height_; }
  int width() const { return width_; }

  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * width_ + c]; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * width_ + c]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// PGM (P2 ascii / P5 binary) reader.  Only maxval <= 255 is accepted.
// Malformed input raises ParseError naming the byte offset.
Image read_pgm(const std::string& path);
Image parse_pgm(const std::vector<unsigned char>& bytes);

// Writes binary P5 with maxval 255; each sample is round(clamp(p, 0, 255)).
// The byte layout is fixed ("P5\n<w> <h>\n255\n" + rows), so identical images
// produce identical files.
void write_pgm(const Image& img, const std::string& path);
std::vector<unsigned char> encode_pgm(const Image& img);

// Block partition geometry.  Images whose sides are not multiples of the
// block size are padded by mirror reflection (edge row/column not repeated).
struct BlockGrid {
  int block_size = 0;
  int rows = 0;  // blocks per column
  int cols = 0;  // blocks per row
  int pad_bottom = 0;
  int pad_right = 0;
};

struct Partition {
  BlockGrid grid;
  std::vector<Eigen::MatrixXd> blocks;  // row-major over the grid
};

// Splits `img` into block_size x block_size tiles.
Partition partition_blocks(const Image& img, int block_size);

// Inverse of partition_blocks: lays the tiles back down and crops the
// padding.  Block count / sizes must match the grid.
Image assemble_blocks(const BlockGrid& grid, const std::vector<Eigen::MatrixXd>& blocks);

// Square median filter with replicate borders.  `window` must be odd and
// positive; window == 1 is the identity.  Ties/even-rank issues do not arise
// since window*window is odd.
Image median_filter(const Image& img, int window);

// Peak signal-to-noise ratio against peak 255.  Identical images give
// +infinity.  Dimension mismatch is a contract violation.
double psnr(const Image& a, const Image& b);

// Clamps every sample into [0, 255].
void clamp_pixels(Image& img);

}  // namespace sca
