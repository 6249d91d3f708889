#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aliasfree {

struct Shape {
  int channels = 1;
  int height = 1;
  int width = 1;

  std::size_t size() const {
    return static_cast<std::size_t>(channels) * static_cast<std::size_t>(height) *
           static_cast<std::size_t>(width);
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// "CxHxW", e.g. "1x8x8".
std::string to_string(const Shape& shape);
Shape parse_shape(std::string_view text);

/// Dense C x H x W grid of doubles in row-major (channel, row, column) order.
class Image {
 public:
  Image() = default;
  explicit Image(Shape shape, double fill = 0.0);
  Image(Shape shape, std::vector<double> values);

  const Shape& shape() const { return shape_; }
  int channels() const { return shape_.channels; }
  int height() const { return shape_.height; }
  int width() const { return shape_.width; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int c, int y, int x) { return data_[index(c, y, x)]; }
  double operator()(int c, int y, int x) const { return data_[index(c, y, x)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> plane(int c);
  std::span<const double> plane(int c) const;

  bool all_finite() const;

  Image& operator+=(const Image& other);
  Image& operator-=(const Image& other);
  Image& operator*=(double scale);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * shape_.height + static_cast<std::size_t>(y)) * shape_.width +
           static_cast<std::size_t>(x);
  }

  Shape shape_{};
  std::vector<double> data_ = std::vector<double>(1, 0.0);
};

Image operator+(Image lhs, const Image& rhs);
Image operator-(Image lhs, const Image& rhs);
Image operator*(double scale, Image img);

double l2_norm(const Image& img);
double l2_distance(const Image& a, const Image& b);
/// ||a - b|| / ||b||; 0 when both are zero.
double relative_l2(const Image& a, const Image& b);
double max_abs_difference(const Image& a, const Image& b);

}  // namespace aliasfree
