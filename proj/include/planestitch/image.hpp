#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "planestitch/core.hpp"
#include "planestitch/errors.hpp"

namespace planestitch {

// Planar float raster with values nominally in [0,1]; 1 (gray) or 3 (RGB)
// channels.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, int channels, float fill = 0.0f)
      : w_(width), h_(height), c_(channels) {
    if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
      throw EmptyImage("invalid image dimensions");
    data_.assign(static_cast<size_t>(w_) * h_ * c_, fill);
  }

  int width() const { return w_; }
  int height() const { return h_; }
  int channels() const { return c_; }
  bool empty() const { return data_.empty(); }

  float& at(int c, int x, int y) { return data_[idx(c, x, y)]; }
  float at(int c, int x, int y) const { return data_[idx(c, x, y)]; }

  std::span<float> plane(int c) {
    return {data_.data() + static_cast<size_t>(c) * w_ * h_,
            static_cast<size_t>(w_) * h_};
  }
  std::span<const float> plane(int c) const {
    return {data_.data() + static_cast<size_t>(c) * w_ * h_,
            static_cast<size_t>(w_) * h_};
  }

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

  bool same_shape(const ImageBuffer& o) const {
    return w_ == o.w_ && h_ == o.h_ && c_ == o.c_;
  }

 private:
  size_t idx(int c, int x, int y) const {
    return (static_cast<size_t>(c) * h_ + y) * w_ + x;
  }

  int w_ = 0, h_ = 0, c_ = 0;
  std::vector<float> data_;
};

// Single-channel analysis raster (saliency, distortion, masks, luma) kept in
// double precision so downstream reductions are not limited by storage.
class ScalarMap {
 public:
  ScalarMap() = default;
  ScalarMap(int width, int height, double fill = 0.0) : w_(width), h_(height) {
    if (width <= 0 || height <= 0) throw EmptyImage("invalid map dimensions");
    data_.assign(static_cast<size_t>(w_) * h_, fill);
  }

  int width() const { return w_; }
  int height() const { return h_; }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[static_cast<size_t>(y) * w_ + x]; }
  double at(int x, int y) const { return data_[static_cast<size_t>(y) * w_ + x]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const ScalarMap& o) const { return w_ == o.w_ && h_ == o.h_; }

 private:
  int w_ = 0, h_ = 0;
  std::vector<double> data_;
};

// Grid of per-cell descriptors; each cell vector has unit L2 norm or is
// exactly zero (textureless cell). Cell-major layout keeps one descriptor
// contiguous for matching.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int channels, int width, int height)
      : c_(channels), w_(width), h_(height) {
    if (channels <= 0 || width <= 0 || height <= 0)
      throw DimensionMismatch("invalid feature map dimensions");
    data_.assign(static_cast<size_t>(c_) * w_ * h_, 0.0f);
  }

  int channels() const { return c_; }
  int width() const { return w_; }
  int height() const { return h_; }
  int cells() const { return w_ * h_; }

  std::span<float> cell(int x, int y) {
    return {data_.data() + (static_cast<size_t>(y) * w_ + x) * c_,
            static_cast<size_t>(c_)};
  }
  std::span<const float> cell(int x, int y) const {
    return {data_.data() + (static_cast<size_t>(y) * w_ + x) * c_,
            static_cast<size_t>(c_)};
  }
  std::span<const float> cell(int linear) const {
    return {data_.data() + static_cast<size_t>(linear) * c_,
            static_cast<size_t>(c_)};
  }

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

 private:
  int c_ = 0, w_ = 0, h_ = 0;
  std::vector<float> data_;
};

inline double luma_weight_r() { return 0.299; }
inline double luma_weight_g() { return 0.587; }
inline double luma_weight_b() { return 0.114; }

inline ScalarMap luma(const ImageBuffer& img) {
  if (img.empty()) throw EmptyImage("luma of empty image");
  ScalarMap out(img.width(), img.height());
  if (img.channels() == 1) {
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) out.at(x, y) = img.at(0, x, y);
  } else {
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x)
        out.at(x, y) = 0.299 * img.at(0, x, y) + 0.587 * img.at(1, x, y) +
                       0.114 * img.at(2, x, y);
  }
  return out;
}

// Bilinear sample of one channel at a position inside [0, w-1] x [0, h-1].
inline double bilinear_sample(const ImageBuffer& img, int c, double x, double y) {
  const int w = img.width(), h = img.height();
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  x0 = std::clamp(x0, 0, w - 1);
  y0 = std::clamp(y0, 0, h - 1);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = std::clamp(x - x0, 0.0, 1.0);
  const double fy = std::clamp(y - y0, 0.0, 1.0);
  const double v00 = img.at(c, x0, y0), v10 = img.at(c, x1, y0);
  const double v01 = img.at(c, x0, y1), v11 = img.at(c, x1, y1);
  return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
         fy * ((1.0 - fx) * v01 + fx * v11);
}

inline float clamp01(float v) { return std::clamp(v, 0.0f, 1.0f); }
inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace planestitch
