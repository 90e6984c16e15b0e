#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "sca/image.hpp"

using namespace sca;

namespace {

std::vector<unsigned char> bytes_of(const char* s) {
  return std::vector<unsigned char>(s, s + std::string(s).size());
}

// Brute-force median filter used as an independent oracle: materialize every
// window with replicate borders, fully sort, take the middle element.
Image median_oracle(const Image& img, int k) {
  const int half = k / 2;
  Image out(img.height(), img.width());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      std::vector<double> window;
      for (int dr = -half; dr <= half; ++dr) {
        for (int dc = -half; dc <= half; ++dc) {
          int rr = r + dr, cc = c + dc;
          rr = rr < 0 ? 0 : (rr >= img.height() ? img.height() - 1 : rr);
          cc = cc < 0 ? 0 : (cc >= img.width() ? img.width() - 1 : cc);
          window.push_back(img(rr, cc));
        }
      }
      std::sort(window.begin(), window.end());
      out(r, c) = window[window.size() / 2];
    }
  }
  return out;
}

Image random_image(int h, int w, unsigned seed, double lo = 0.0, double hi = 255.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Image img(h, w);
  for (double& p : img.data()) p = dist(rng);
  return img;
}

}  // namespace

TEST_CASE("image construction validates dimensions") {
  CHECK_THROWS_AS(Image(0, 4), ContractViolation);
  CHECK_THROWS_AS(Image(4, -1), ContractViolation);
  CHECK_THROWS_AS(Image(2, 2, std::vector<double>(3)), ContractViolation);
  Image img(2, 3, 7.0);
  CHECK(img.height() == 2);
  CHECK(img.width() == 3);
  CHECK(img(1, 2) == 7.0);
}

TEST_CASE("parse_pgm reads ascii P2") {
  const Image img = parse_pgm(bytes_of("P2 2 1 255 \n 0 255"));
  CHECK(img.height() == 1);
  CHECK(img.width() == 2);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(0, 1) == 255.0);
}

TEST_CASE("parse_pgm reads binary P5") {
  std::vector<unsigned char> bytes = bytes_of("P5 1 1 255 ");
  bytes.back() = '\n';  // single separator byte
  bytes.push_back(0x80);
  const Image img = parse_pgm(bytes);
  CHECK(img.height() == 1);
  CHECK(img.width() == 1);
  CHECK(img(0, 0) == 128.0);
}

TEST_CASE("parse_pgm handles header comments") {
  const Image img = parse_pgm(bytes_of("P2 # width\n2 # then height\n1 255\n13 37"));
  CHECK(img.width() == 2);
  CHECK(img(0, 0) == 13.0);
  CHECK(img(0, 1) == 37.0);
}

TEST_CASE("parse_pgm rejects color P6 as unsupported magic") {
  CHECK_THROWS_WITH_AS(parse_pgm(bytes_of("P6 1 1 255 xxx")),
                       doctest::Contains("unsupported magic"), ParseError);
}

TEST_CASE("parse_pgm rejects maxval above 255") {
  CHECK_THROWS_WITH_AS(parse_pgm(bytes_of("P2 1 1 65535 0")), doctest::Contains("maxval"),
                       ParseError);
}

TEST_CASE("parse_pgm reports byte offset of truncation") {
  std::vector<unsigned char> bytes = bytes_of("P5 2 2 255\nAB");  // 2 of 4 raster bytes
  try {
    parse_pgm(bytes);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == bytes.size());
    CHECK(std::string(e.what()).find("at byte") != std::string::npos);
  }
}

TEST_CASE("parse_pgm rejects samples above maxval") {
  CHECK_THROWS_WITH_AS(parse_pgm(bytes_of("P2 1 1 100 101")), doctest::Contains("exceeds"),
                       ParseError);
}

TEST_CASE("encode_pgm rounds and clamps") {
  Image img(1, 3);
  img(0, 0) = 127.6;
  img(0, 1) = -3.0;
  img(0, 2) = 300.0;
  const std::vector<unsigned char> bytes = encode_pgm(img);
  const std::size_t n = bytes.size();
  CHECK(bytes[n - 3] == 128);
  CHECK(bytes[n - 2] == 0);
  CHECK(bytes[n - 1] == 255);
}

TEST_CASE("pgm round trip equals round(clamp(img))") {
  const Image img = random_image(9, 13, 77, -40.0, 295.0);
  const Image back = parse_pgm(encode_pgm(img));
  REQUIRE(back.height() == img.height());
  REQUIRE(back.width() == img.width());
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c)
      CHECK(back(r, c) == std::lround(std::clamp(img(r, c), 0.0, 255.0)));
}

TEST_CASE("partition geometry for exact and padded tilings") {
  const Image a = random_image(16, 16, 1);
  const Partition pa = partition_blocks(a, 8);
  CHECK(pa.grid.rows == 2);
  CHECK(pa.grid.cols == 2);
  CHECK(pa.grid.pad_bottom == 0);
  CHECK(pa.grid.pad_right == 0);
  CHECK(pa.blocks.size() == 4);

  const Image b = random_image(10, 10, 2);
  const Partition pb = partition_blocks(b, 8);
  CHECK(pb.grid.rows == 2);
  CHECK(pb.grid.cols == 2);
  CHECK(pb.grid.pad_bottom == 6);
  CHECK(pb.grid.pad_right == 6);
  CHECK(pb.blocks.size() == 4);

  const Image c = random_image(8, 8, 3);
  const Partition pc = partition_blocks(c, 8);
  REQUIRE(pc.blocks.size() == 1);
  for (int r = 0; r < 8; ++r)
    for (int col = 0; col < 8; ++col) CHECK(pc.blocks[0](r, col) == c(r, col));
}

TEST_CASE("padding mirrors without repeating the edge") {
  // 3x3 with distinct values; rows pad as 0 1 2 | 1 0 (period 2h-2 = 4).
  Image img(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) img(r, c) = 10.0 * r + c;
  const Partition p = partition_blocks(img, 5);
  REQUIRE(p.blocks.size() == 1);
  const Eigen::MatrixXd& blk = p.blocks[0];
  CHECK(blk(3, 0) == img(1, 0));
  CHECK(blk(4, 0) == img(0, 0));
  CHECK(blk(0, 3) == img(0, 1));
  CHECK(blk(0, 4) == img(0, 0));
  CHECK(blk(3, 3) == img(1, 1));
}

TEST_CASE("partition then assemble restores arbitrary sizes exactly") {
  for (int block : {1, 4, 8, 16}) {
    for (auto [h, w] : {std::pair{10, 10}, {17, 23}, {16, 16}, {5, 31}}) {
      const Image img = random_image(h, w, static_cast<unsigned>(block * 100 + h + w));
      const Partition p = partition_blocks(img, block);
      const Image back = assemble_blocks(p.grid, p.blocks);
      REQUIRE(back.height() == h);
      REQUIRE(back.width() == w);
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) CHECK(back(r, c) == img(r, c));
    }
  }
}

TEST_CASE("assemble_blocks validates counts and sizes") {
  const Image img = random_image(16, 16, 9);
  Partition p = partition_blocks(img, 8);
  std::vector<Eigen::MatrixXd> short_list(p.blocks.begin(), p.blocks.end() - 1);
  CHECK_THROWS_AS(assemble_blocks(p.grid, short_list), ContractViolation);
  p.blocks[0] = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS_AS(assemble_blocks(p.grid, p.blocks), ContractViolation);
}

TEST_CASE("median_filter basics") {
  const Image constant(6, 7, 42.0);
  const Image filtered = median_filter(constant, 3);
  for (double p : filtered.data()) CHECK(p == 42.0);

  const Image img = random_image(5, 5, 11);
  const Image same = median_filter(img, 1);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) CHECK(same(r, c) == img(r, c));

  Image impulse(3, 3, 0.0);
  impulse(1, 1) = 255.0;
  CHECK(median_filter(impulse, 3)(1, 1) == 0.0);

  CHECK_THROWS_AS(median_filter(img, 2), ContractViolation);
  CHECK_THROWS_AS(median_filter(img, 0), ContractViolation);
  CHECK_THROWS_AS(median_filter(img, -3), ContractViolation);
}

TEST_CASE("median_filter matches brute-force sort oracle") {
  for (unsigned seed : {21u, 22u, 23u, 24u, 25u}) {
    const Image img = random_image(12, 12, seed);
    for (int k : {1, 3, 5}) {
      const Image fast = median_filter(img, k);
      const Image slow = median_oracle(img, k);
      for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) CHECK(fast(r, c) == slow(r, c));
    }
  }
}

TEST_CASE("psnr hand-computed values") {
  const Image a = random_image(16, 16, 31);
  CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());

  Image zero(16, 16, 0.0);
  Image full(16, 16, 255.0);
  CHECK(psnr(zero, full) == doctest::Approx(0.0).epsilon(1e-12));

  Image b = a;
  b(7, 3) += 255.0;  // one pixel of 256 differs by 255 -> 10 log10(256)
  CHECK(psnr(a, b) == doctest::Approx(24.082399653118497).epsilon(1e-12));
  CHECK(psnr(b, a) == doctest::Approx(psnr(a, b)).epsilon(1e-15));

  CHECK_THROWS_AS(psnr(a, Image(8, 16)), ContractViolation);
}

TEST_CASE("psnr drops by 10log10(4) when pixel errors double") {
  const Image a = random_image(16, 16, 41);
  const Image d = random_image(16, 16, 42, 0.5, 4.0);
  Image once = a, twice = a;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      once(r, c) += d(r, c);
      twice(r, c) += 2.0 * d(r, c);
    }
  }
  CHECK(psnr(a, once) - psnr(a, twice) ==
        doctest::Approx(6.020599913279624).epsilon(1e-9));
}

TEST_CASE("clamp_pixels clamps into [0,255]") {
  Image img(1, 3);
  img(0, 0) = -4.5;
  img(0, 1) = 99.25;
  img(0, 2) = 260.0;
  clamp_pixels(img);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(0, 1) == 99.25);
  CHECK(img(0, 2) == 255.0);
}
