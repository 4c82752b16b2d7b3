#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gom/common.hpp"

namespace gom {

// Row-major images. RGB values live in [0,1]; depth is in world units with
// 0 marking invalid pixels; mask stores instance ids (0 = background).
struct ImageRgb {
  int width = 0, height = 0;
  std::vector<double> data;  // 3 * width * height

  ImageRgb() = default;
  ImageRgb(int w, int h) : width(w), height(h), data(3u * w * h, 0.0) {}
  Vec3 at(int u, int v) const {
    const size_t i = 3u * (static_cast<size_t>(v) * width + u);
    return {data[i], data[i + 1], data[i + 2]};
  }
  void set(int u, int v, const Vec3& c) {
    const size_t i = 3u * (static_cast<size_t>(v) * width + u);
    data[i] = c.x();
    data[i + 1] = c.y();
    data[i + 2] = c.z();
  }
};

struct ImageGray {
  int width = 0, height = 0;
  std::vector<double> data;

  ImageGray() = default;
  ImageGray(int w, int h) : width(w), height(h), data(1u * w * h, 0.0) {}
  double at(int u, int v) const { return data[static_cast<size_t>(v) * width + u]; }
  void set(int u, int v, double d) { data[static_cast<size_t>(v) * width + u] = d; }
};

struct ImageMask {
  int width = 0, height = 0;
  std::vector<uint8_t> data;

  ImageMask() = default;
  ImageMask(int w, int h) : width(w), height(h), data(1u * w * h, 0) {}
  uint8_t at(int u, int v) const { return data[static_cast<size_t>(v) * width + u]; }
  void set(int u, int v, uint8_t m) { data[static_cast<size_t>(v) * width + u] = m; }
};

// Binary PPM (P6), 8-bit; values are clamped and rounded on write.
void write_ppm(const std::filesystem::path& path, const ImageRgb& img);
ImageRgb read_ppm(const std::filesystem::path& path);

// PFM, single channel float32, little-endian (scale -1.0), bottom-up rows.
void write_pfm(const std::filesystem::path& path, const ImageGray& img);
ImageGray read_pfm(const std::filesystem::path& path);

// Binary PGM (P5), 8-bit.
void write_pgm(const std::filesystem::path& path, const ImageMask& img);
ImageMask read_pgm(const std::filesystem::path& path);

}  // namespace gom
