#include "topoharq/image.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace topoharq {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const char* what) {
  throw std::runtime_error(path + ": " + what);
}

RgbImage load_png(const std::string& path, std::FILE* fp) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "cannot init libpng");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "cannot init libpng");
  }
  std::vector<png_bytep> rows;
  RgbImage img;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "malformed PNG");
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);

  // Normalize whatever the file holds down to 8-bit RGB.
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != w * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported PNG layout");
  }

  img.height = static_cast<int>(h);
  img.width = static_cast<int>(w);
  img.data.resize(static_cast<size_t>(h) * w * 3);
  rows.resize(h);
  for (png_uint_32 u = 0; u < h; ++u)
    rows[u] = img.data.data() + static_cast<size_t>(u) * w * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

// Reads one PNM header token, skipping whitespace and '#' comment lines.
long pnm_token(std::FILE* fp, const std::string& path) {
  int ch = std::fgetc(fp);
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = std::fgetc(fp);
    } else if (!std::isspace(ch)) {
      break;
    }
    ch = std::fgetc(fp);
  }
  if (ch == EOF || !std::isdigit(ch)) fail(path, "malformed PNM header");
  long value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    if (value > 1 << 30) fail(path, "malformed PNM header");
    ch = std::fgetc(fp);
  }
  return value;
}

RgbImage load_pnm(const std::string& path, std::FILE* fp, bool color) {
  long w = pnm_token(fp, path);
  long h = pnm_token(fp, path);
  long maxval = pnm_token(fp, path);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) fail(path, "unsupported PNM");

  size_t samples = static_cast<size_t>(w) * h * (color ? 3 : 1);
  std::vector<uint8_t> raw(samples);
  if (std::fread(raw.data(), 1, samples, fp) != samples) fail(path, "truncated PNM");

  RgbImage img = make_rgb(static_cast<int>(h), static_cast<int>(w));
  for (size_t i = 0; i < static_cast<size_t>(w) * h; ++i) {
    if (color) {
      img.data[i * 3 + 0] = raw[i * 3 + 0];
      img.data[i * 3 + 1] = raw[i * 3 + 1];
      img.data[i * 3 + 2] = raw[i * 3 + 2];
    } else {
      img.data[i * 3 + 0] = img.data[i * 3 + 1] = img.data[i * 3 + 2] = raw[i];
    }
  }
  return img;
}

}  // namespace

RgbImage make_rgb(int height, int width, uint8_t fill) {
  RgbImage img;
  img.height = height;
  img.width = width;
  img.data.assign(static_cast<size_t>(height) * width * 3, fill);
  return img;
}

RgbImage load_image(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail(path, "cannot open");

  unsigned char magic[2] = {0, 0};
  if (std::fread(magic, 1, 2, fp.get()) != 2) fail(path, "truncated file");

  if (magic[0] == 0x89 && magic[1] == 'P') {
    std::rewind(fp.get());
    return load_png(path, fp.get());
  }
  if (magic[0] == 'P' && magic[1] == '5') return load_pnm(path, fp.get(), false);
  if (magic[0] == 'P' && magic[1] == '6') return load_pnm(path, fp.get(), true);
  fail(path, "unknown image format");
}

GrayImage to_grayscale(const RgbImage& img) {
  GrayImage g;
  g.height = img.height;
  g.width = img.width;
  g.data.resize(static_cast<size_t>(img.height) * img.width);
  for (size_t i = 0; i < g.data.size(); ++i) {
    g.data[i] = 0.299 * img.data[i * 3 + 0] + 0.587 * img.data[i * 3 + 1] +
                0.114 * img.data[i * 3 + 2];
  }
  return g;
}

BinaryImage binarize(const GrayImage& gray, double nu) {
  if (!(nu >= 0.0 && nu <= 255.0))
    throw std::invalid_argument("binarize: threshold must lie in [0, 255]");
  BinaryImage b;
  b.height = gray.height;
  b.width = gray.width;
  b.mask.resize(gray.data.size());
  for (size_t i = 0; i < gray.data.size(); ++i) b.mask[i] = gray.data[i] >= nu ? 1 : 0;
  return b;
}

}  // namespace topoharq
