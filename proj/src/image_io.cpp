#include "aliasfree/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "aliasfree/errors.hpp"

namespace aliasfree {

namespace {

constexpr int kMaxDimension = 1 << 16;

bool is_space(std::uint8_t b) { return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\v' || b == '\f'; }

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  // Whitespace and '#' comments; at least one whitespace byte is required
  // between header fields.
  void skip_separator(const char* field) {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) throw ParseError(std::string("expected whitespace before ") + field, pos_);
  }

  int read_int(const char* field) {
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > kMaxDimension) throw ParseError(std::string(field) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + field, pos_);
    return static_cast<int>(value);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

std::uint8_t quantize(double v) {
  const double clamped = std::clamp(v, -1.0, 1.0);
  return static_cast<std::uint8_t>(std::floor((clamped + 1.0) * 127.5 + 0.5));
}

}  // namespace

Image read_raster(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw ParseError("bad magic: expected P5 or P6", 0);
  }
  const int channels = bytes[1] == '5' ? 1 : 3;

  HeaderReader header(bytes);
  header.skip_separator("width");
  const std::size_t width_at = header.pos();
  const int width = header.read_int("width");
  header.skip_separator("height");
  const std::size_t height_at = header.pos();
  const int height = header.read_int("height");
  if (width == 0) throw ParseError("zero image width", width_at);
  if (height == 0) throw ParseError("zero image height", height_at);
  header.skip_separator("maxval");
  const std::size_t maxval_at = header.pos();
  const int maxval = header.read_int("maxval");
  if (maxval != 255) throw ParseError("unsupported maxval " + std::to_string(maxval) + " (only 255)", maxval_at);
  if (header.pos() >= bytes.size() || !is_space(bytes[header.pos()])) {
    throw ParseError("expected a single whitespace byte after maxval", header.pos());
  }
  const std::size_t payload_at = header.pos() + 1;

  const Shape shape{channels, height, width};
  const std::size_t needed = shape.size();
  if (bytes.size() - payload_at < needed) {
    throw ParseError("truncated payload: need " + std::to_string(needed) + " bytes, have " +
                         std::to_string(bytes.size() - payload_at),
                     bytes.size());
  }

  // The payload interleaves channels per pixel; Image is planar.
  Image img(shape);
  const std::uint8_t* p = bytes.data() + payload_at;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) img(c, y, x) = *p++ / 127.5 - 1.0;
    }
  }
  return img;
}

RasterFormat raster_format_for(const Image& img) {
  if (img.channels() == 1) return RasterFormat::PGM_P5;
  if (img.channels() == 3) return RasterFormat::PPM_P6;
  throw ShapeError("raster output needs 1 or 3 channels, got " + std::to_string(img.channels()));
}

std::vector<std::uint8_t> write_raster(const Image& img, RasterFormat format) {
  const int channels = format == RasterFormat::PGM_P5 ? 1 : 3;
  if (img.channels() != channels) {
    throw ShapeError(std::string(format == RasterFormat::PGM_P5 ? "P5" : "P6") + " needs " +
                     std::to_string(channels) + " channel(s), image has " + std::to_string(img.channels()));
  }
  const std::string header = std::string(format == RasterFormat::PGM_P5 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.size());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < channels; ++c) out.push_back(quantize(img(c, y, x)));
    }
  }
  return out;
}

Image read_raster_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_raster(bytes);
}

void write_raster_file(const std::filesystem::path& path, const Image& img) {
  const auto bytes = write_raster(img, raster_format_for(img));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace aliasfree
