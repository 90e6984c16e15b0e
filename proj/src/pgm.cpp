#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "sca/image.hpp"

namespace sca {

namespace {

// Header scanner over the raw byte buffer; keeps the byte offset for
// error reporting.
struct Cursor {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  unsigned char peek() const { return bytes[pos]; }

  // PGM headers allow '#' comments running to end of line anywhere between
  // tokens.
  void skip_space_and_comments() {
    while (!eof()) {
      if (std::isspace(peek())) {
        ++pos;
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  long parse_uint(const char* what) {
    skip_space_and_comments();
    if (eof()) throw ParseError(std::string("unexpected end of file reading ") + what, pos);
    if (!std::isdigit(peek()))
      throw ParseError(std::string("expected digit for ") + what, pos);
    long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (peek() - '0');
      if (value > 1000000000L)
        throw ParseError(std::string(what) + " out of range", pos);
      ++pos;
    }
    return value;
  }
};

}  // namespace

Image parse_pgm(const std::vector<unsigned char>& bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2)
    throw ParseError("file too short for PGM magic", 0);
  const char m0 = static_cast<char>(bytes[0]);
  const char m1 = static_cast<char>(bytes[1]);
  if (m0 != 'P' || (m1 != '2' && m1 != '5')) {
    std::string magic;
    magic += m0;
    magic += m1;
    throw ParseError("unsupported magic \"" + magic + "\" (want P2 or P5)", 0);
  }
  const bool binary = (m1 == '5');
  cur.pos = 2;

  const long width = cur.parse_uint("width");
  const long height = cur.parse_uint("height");
  if (width < 1 || height < 1)
    throw ParseError("image dimensions must be positive", cur.pos);
  if (width > 1 << 15 || height > 1 << 15)
    throw ParseError("image dimensions unreasonably large", cur.pos);
  const std::size_t maxval_at = cur.pos;
  const long maxval = cur.parse_uint("maxval");
  if (maxval < 1 || maxval > 255)
    throw ParseError("maxval " + std::to_string(maxval) + " unsupported (want 1..255)",
                     maxval_at);

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.eof() || !std::isspace(cur.peek()))
      throw ParseError("expected whitespace before binary raster", cur.pos);
    ++cur.pos;
    if (bytes.size() - cur.pos < count)
      throw ParseError("raster truncated (need " + std::to_string(count) + " bytes, have " +
                           std::to_string(bytes.size() - cur.pos) + ")",
                       bytes.size());
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned char v = bytes[cur.pos + i];
      if (v > maxval)
        throw ParseError("sample " + std::to_string(v) + " exceeds maxval", cur.pos + i);
      data[i] = static_cast<double>(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t at = cur.pos;
      const long v = cur.parse_uint("sample");
      if (v > maxval)
        throw ParseError("sample " + std::to_string(v) + " exceeds maxval", at);
      data[i] = static_cast<double>(v);
    }
  }

  return Image(static_cast<int>(height), static_cast<int>(width), std::move(data));
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return parse_pgm(bytes);
}

std::vector<unsigned char> encode_pgm(const Image& img) {
  char header[64];
  const int len = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", img.width(),
                                img.height());
  std::vector<unsigned char> out(header, header + len);
  out.reserve(out.size() + img.data().size());
  for (double p : img.data()) {
    const double clamped = p < 0.0 ? 0.0 : (p > 255.0 ? 255.0 : p);
    out.push_back(static_cast<unsigned char>(std::lround(clamped)));
  }
  return out;
}

void write_pgm(const Image& img, const std::string& path) {
  const std::vector<unsigned char> bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace sca
