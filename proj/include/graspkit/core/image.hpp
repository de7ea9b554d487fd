#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace graspkit {

/// Image-grid coordinate. row grows downward, col to the right.
struct Pixel {
  int row = 0;
  int col = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// Dense row-major raster of T.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, const T& fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }
  bool in_bounds(const Pixel& p) const { return in_bounds(p.row, p.col); }

  T& at(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  const T& at(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  T& at(const Pixel& p) { return at(p.row, p.col); }
  const T& at(const Pixel& p) const { return at(p.row, p.col); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  void fill(const T& v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

inline constexpr int kNeigh4[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
inline constexpr int kNeigh8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                      {0, 1},   {1, -1}, {1, 0},  {1, 1}};

}  // namespace graspkit
