#include "sca/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sca {

namespace {

// Mirror index into [0, n) without repeating the edge sample: for n=4 the
// extension reads ... 2 1 | 0 1 2 3 | 2 1 0 1 ...
int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

Partition partition_blocks(const Image& img, int block_size) {
  if (block_size < 1)
    throw ContractViolation("block size must be >= 1, got " + std::to_string(block_size));

  Partition out;
  BlockGrid& grid = out.grid;
  grid.block_size = block_size;
  grid.rows = (img.height() + block_size - 1) / block_size;
  grid.cols = (img.width() + block_size - 1) / block_size;
  grid.pad_bottom = grid.rows * block_size - img.height();
  grid.pad_right = grid.cols * block_size - img.width();

  out.blocks.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
  for (int br = 0; br < grid.rows; ++br) {
    for (int bc = 0; bc < grid.cols; ++bc) {
      Eigen::MatrixXd block(block_size, block_size);
      for (int r = 0; r < block_size; ++r) {
        const int sr = reflect_index(br * block_size + r, img.height());
        for (int c = 0; c < block_size; ++c) {
          const int sc = reflect_index(bc * block_size + c, img.width());
          block(r, c) = img(sr, sc);
        }
      }
      out.blocks.push_back(std::move(block));
    }
  }
  return out;
}

Image assemble_blocks(const BlockGrid& grid, const std::vector<Eigen::MatrixXd>& blocks) {
  const int n = grid.block_size;
  if (n < 1 || grid.rows < 1 || grid.cols < 1)
    throw ContractViolation("invalid block grid");
  if (blocks.size() != static_cast<std::size_t>(grid.rows) * grid.cols)
    throw ContractViolation("block count " + std::to_string(blocks.size()) +
                            " does not match grid " + std::to_string(grid.rows) + "x" +
                            std::to_string(grid.cols));
  const int height = grid.rows * n - grid.pad_bottom;
  const int width = grid.cols * n - grid.pad_right;
  if (height < 1 || width < 1)
    throw ContractViolation("grid padding exceeds image size");

  Image img(height, width);
  for (int br = 0; br < grid.rows; ++br) {
    for (int bc = 0; bc < grid.cols; ++bc) {
      const Eigen::MatrixXd& block = blocks[static_cast<std::size_t>(br) * grid.cols + bc];
      if (block.rows() != n || block.cols() != n)
        throw ContractViolation("block size does not match grid block_size");
      for (int r = 0; r < n; ++r) {
        const int dr = br * n + r;
        if (dr >= height) break;
        for (int c = 0; c < n; ++c) {
          const int dc = bc * n + c;
          if (dc >= width) break;
          img(dr, dc) = block(r, c);
        }
      }
    }
  }
  return img;
}

Image median_filter(const Image& img, int window) {
  if (window < 1 || window % 2 == 0)
    throw ContractViolation("median window must be odd and positive, got " +
                            std::to_string(window));
  if (window == 1) return img;

  const int h = img.height(), w = img.width(), half = window / 2;
  Image out(h, w);
  std::vector<double> scratch;
  scratch.reserve(static_cast<std::size_t>(window) * window);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      scratch.clear();
      for (int dr = -half; dr <= half; ++dr) {
        const int rr = std::clamp(r + dr, 0, h - 1);  // replicate border
        for (int dc = -half; dc <= half; ++dc) {
          const int cc = std::clamp(c + dc, 0, w - 1);
          scratch.push_back(img(rr, cc));
        }
      }
      auto mid = scratch.begin() + scratch.size() / 2;
      std::nth_element(scratch.begin(), mid, scratch.end());
      out(r, c) = *mid;
    }
  }
  return out;
}

double psnr(const Image& a, const Image& b) {
  if (a.height() != b.height() || a.width() != b.width())
    throw ContractViolation("psnr requires equal dimensions");
  double sum = 0.0;
  const std::size_t count = a.data().size();
  for (std::size_t i = 0; i < count; ++i) {
    const double d = a.data()[i] - b.data()[i];
    sum += d * d;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sum / static_cast<double>(count);
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

void clamp_pixels(Image& img) {
  for (double& p : img.data()) p = std::clamp(p, 0.0, 255.0);
}

}  // namespace sca
