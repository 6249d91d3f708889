#include "aliasfree/image.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "aliasfree/errors.hpp"

namespace aliasfree {

namespace {

void check_shape(const Shape& s) {
  if (s.channels < 1 || s.height < 1 || s.width < 1) {
    throw ShapeError("image dimensions must be positive, got " + to_string(s));
  }
}

void check_same(const Shape& a, const Shape& b) {
  if (!(a == b)) throw ShapeError("shape mismatch: " + to_string(a) + " vs " + to_string(b));
}

}  // namespace

std::string to_string(const Shape& s) {
  return std::to_string(s.channels) + "x" + std::to_string(s.height) + "x" + std::to_string(s.width);
}

Shape parse_shape(std::string_view text) {
  int dims[3] = {0, 0, 0};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 3; ++i) {
    auto [next, ec] = std::from_chars(p, end, dims[i]);
    if (ec != std::errc{} || next == p) throw ShapeError("malformed shape '" + std::string(text) + "'");
    p = next;
    if (i < 2) {
      if (p == end || (*p != 'x' && *p != 'X')) throw ShapeError("malformed shape '" + std::string(text) + "'");
      ++p;
    }
  }
  if (p != end) throw ShapeError("malformed shape '" + std::string(text) + "'");
  Shape s{dims[0], dims[1], dims[2]};
  check_shape(s);
  return s;
}

Image::Image(Shape shape, double fill) : shape_(shape) {
  check_shape(shape_);
  data_.assign(shape_.size(), fill);
}

Image::Image(Shape shape, std::vector<double> values) : shape_(shape), data_(std::move(values)) {
  check_shape(shape_);
  if (data_.size() != shape_.size()) {
    throw ShapeError("expected " + std::to_string(shape_.size()) + " values for shape " + to_string(shape_) +
                     ", got " + std::to_string(data_.size()));
  }
}

std::span<double> Image::plane(int c) {
  const std::size_t n = static_cast<std::size_t>(shape_.height) * shape_.width;
  return std::span<double>(data_).subspan(static_cast<std::size_t>(c) * n, n);
}

std::span<const double> Image::plane(int c) const {
  const std::size_t n = static_cast<std::size_t>(shape_.height) * shape_.width;
  return std::span<const double>(data_).subspan(static_cast<std::size_t>(c) * n, n);
}

bool Image::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Image& Image::operator+=(const Image& other) {
  check_same(shape_, other.shape_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Image& Image::operator-=(const Image& other) {
  check_same(shape_, other.shape_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Image& Image::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

Image operator+(Image lhs, const Image& rhs) { return lhs += rhs; }
Image operator-(Image lhs, const Image& rhs) { return lhs -= rhs; }
Image operator*(double scale, Image img) { return img *= scale; }

double l2_norm(const Image& img) {
  double s = 0.0;
  for (double v : img.values()) s += v * v;
  return std::sqrt(s);
}

double l2_distance(const Image& a, const Image& b) {
  check_same(a.shape(), b.shape());
  double s = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) s += (av[i] - bv[i]) * (av[i] - bv[i]);
  return std::sqrt(s);
}

double relative_l2(const Image& a, const Image& b) {
  const double d = l2_distance(a, b);
  const double n = l2_norm(b);
  if (n == 0.0) return d == 0.0 ? 0.0 : INFINITY;
  return d / n;
}

double max_abs_difference(const Image& a, const Image& b) {
  check_same(a.shape(), b.shape());
  double m = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
  return m;
}

}  // namespace aliasfree
