#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace topoharq {

/// 8-bit interleaved RGB raster, row-major with the origin at the top-left.
/// Pixel coordinates are (u, v) = (row, column), zero-indexed throughout.
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> data;  // height * width * 3

  uint8_t& at(int u, int v, int c) {
    return data[(static_cast<size_t>(u) * width + v) * 3 + c];
  }
  uint8_t at(int u, int v, int c) const {
    return data[(static_cast<size_t>(u) * width + v) * 3 + c];
  }
};

RgbImage make_rgb(int height, int width, uint8_t fill = 0);

/// Real-valued luma raster; values stay unrounded so later thresholds and
/// sweeps see the exact weighted sums.
struct GrayImage {
  int height = 0;
  int width = 0;
  std::vector<double> data;

  double& at(int u, int v) { return data[static_cast<size_t>(u) * width + v]; }
  double at(int u, int v) const { return data[static_cast<size_t>(u) * width + v]; }
};

/// Foreground mask; a pixel is active when its entry is nonzero.
struct BinaryImage {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> mask;

  bool active(int u, int v) const { return mask[static_cast<size_t>(u) * width + v] != 0; }
};

/// Decode a raster file by magic bytes: PNG (any 8/16-bit layout libpng can
/// expand to RGB), binary PGM (P5) or binary PPM (P6). Single-channel
/// sources are replicated across R, G and B. Throws std::runtime_error with
/// the offending path on unreadable, truncated or malformed input.
RgbImage load_image(const std::string& path);

/// ITU-R BT.601 luma: 0.299 R + 0.587 G + 0.114 B.
GrayImage to_grayscale(const RgbImage& img);

/// Threshold mask: active iff g >= nu. nu must lie in [0, 255].
BinaryImage binarize(const GrayImage& gray, double nu);

}  // namespace topoharq
