#include "topoharq/codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace topoharq {

CodecBudget make_budget(int height, int width, double rate) {
  if (height < 1 || width < 1) throw std::invalid_argument("make_budget: empty image");
  if (!(rate > 0.0 && rate <= 1.0))
    throw std::invalid_argument("make_budget: rate must lie in (0, 1]");
  CodecBudget b;
  b.height = height;
  b.width = width;
  b.m = 3L * height * width;
  b.k = std::lround(2.0 * static_cast<double>(b.m) * rate);
  if (b.k <= CodecBudget::feature_symbols)
    throw std::invalid_argument("make_budget: rate leaves no payload beyond the feature tail");
  return b;
}

double rate_for_embedding_dim(int c, int stages) {
  if (c < 1 || stages < 0) throw std::invalid_argument("rate_for_embedding_dim: bad arguments");
  return static_cast<double>(c) / (6.0 * std::pow(4.0, stages));
}

namespace {

// Orthonormal 8x8 DCT-II basis, built once.
struct DctBasis {
  std::array<std::array<double, 8>, 8> c;

  DctBasis() {
    double pi = 3.141592653589793238462643383279502884;
    for (int i = 0; i < 8; ++i) {
      double amp = i == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int j = 0; j < 8; ++j) c[i][j] = amp * std::cos((2 * j + 1) * i * pi / 16.0);
    }
  }
};
const DctBasis basis;

// Zig-zag scan order over an 8x8 block, low to high frequency.
struct ZigZag {
  std::array<std::pair<int, int>, 64> at;

  ZigZag() {
    int idx = 0;
    for (int s = 0; s <= 14; ++s) {
      if (s % 2 == 0) {
        for (int i = std::min(s, 7); i >= std::max(0, s - 7); --i) at[idx++] = {i, s - i};
      } else {
        for (int i = std::max(0, s - 7); i <= std::min(s, 7); ++i) at[idx++] = {i, s - i};
      }
    }
  }
};
const ZigZag zigzag;

// Per-position payload scale; the DC term of a raw 8-bit block reaches
// 2040, higher positions shrink roughly with frequency.
double coeff_scale(int z) { return 1024.0 / (1.0 + z); }

void dct2(const double in[8][8], double out[8][8]) {
  double tmp[8][8];
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double acc = 0;
      for (int t = 0; t < 8; ++t) acc += basis.c[j][t] * in[i][t];
      tmp[i][j] = acc;
    }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double acc = 0;
      for (int t = 0; t < 8; ++t) acc += basis.c[i][t] * tmp[t][j];
      out[i][j] = acc;
    }
}

void idct2(const double in[8][8], double out[8][8]) {
  double tmp[8][8];
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double acc = 0;
      for (int t = 0; t < 8; ++t) acc += basis.c[t][j] * in[i][t];
      tmp[i][j] = acc;
    }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double acc = 0;
      for (int t = 0; t < 8; ++t) acc += basis.c[t][i] * tmp[t][j];
      out[i][j] = acc;
    }
}

struct BlockGrid {
  int hb, wb, blocks;

  explicit BlockGrid(const CodecBudget& b)
      : hb((b.height + 7) / 8), wb((b.width + 7) / 8), blocks(hb * wb) {}
};

}  // namespace

int BlockDctCodec::coeffs_per_block(const CodecBudget& b) {
  BlockGrid grid(b);
  long units = 3L * grid.blocks;
  long n = b.payload_reals() / units;
  if (n < 1)
    throw std::invalid_argument("BlockDctCodec: budget below one coefficient per block");
  return static_cast<int>(std::min(n, 64L));
}

std::vector<double> BlockDctCodec::encode(const RgbImage& img, const CodecBudget& b) const {
  if (img.height != b.height || img.width != b.width)
    throw std::invalid_argument("BlockDctCodec: image does not match the budget");
  BlockGrid grid(b);
  int n = coeffs_per_block(b);

  std::vector<double> payload(b.payload_reals(), 0.0);
  double block[8][8], freq[8][8];
  for (int c = 0; c < 3; ++c) {
    for (int bi = 0; bi < grid.hb; ++bi) {
      for (int bj = 0; bj < grid.wb; ++bj) {
        for (int i = 0; i < 8; ++i)
          for (int j = 0; j < 8; ++j) {
            int u = std::min(bi * 8 + i, b.height - 1);  // border replication
            int v = std::min(bj * 8 + j, b.width - 1);
            block[i][j] = img.at(u, v, c);
          }
        dct2(block, freq);
        size_t unit = static_cast<size_t>(c) * grid.blocks + static_cast<size_t>(bi) * grid.wb + bj;
        for (int z = 0; z < n; ++z) {
          auto [i, j] = zigzag.at[z];
          payload[unit * n + z] = freq[i][j] / coeff_scale(z);
        }
      }
    }
  }
  return payload;
}

RgbImage BlockDctCodec::decode(const std::vector<double>& payload, const CodecBudget& b) const {
  if (static_cast<long>(payload.size()) != b.payload_reals())
    throw std::invalid_argument("BlockDctCodec: payload length does not match the budget");
  BlockGrid grid(b);
  int n = coeffs_per_block(b);

  RgbImage img = make_rgb(b.height, b.width);
  double freq[8][8], block[8][8];
  for (int c = 0; c < 3; ++c) {
    for (int bi = 0; bi < grid.hb; ++bi) {
      for (int bj = 0; bj < grid.wb; ++bj) {
        for (auto& row : freq)
          for (double& x : row) x = 0;
        size_t unit = static_cast<size_t>(c) * grid.blocks + static_cast<size_t>(bi) * grid.wb + bj;
        for (int z = 0; z < n; ++z) {
          auto [i, j] = zigzag.at[z];
          freq[i][j] = payload[unit * n + z] * coeff_scale(z);
        }
        idct2(freq, block);
        for (int i = 0; i < 8; ++i) {
          int u = bi * 8 + i;
          if (u >= b.height) break;
          for (int j = 0; j < 8; ++j) {
            int v = bj * 8 + j;
            if (v >= b.width) break;
            double x = std::clamp(block[i][j], 0.0, 255.0);
            img.at(u, v, c) = static_cast<uint8_t>(std::lround(x));
          }
        }
      }
    }
  }
  return img;
}

SymbolBlock assemble_frame(const std::vector<double>& payload,
                           const std::vector<double>& features, const FeatureStats& stats,
                           const CodecBudget& b) {
  if (static_cast<long>(payload.size()) != b.payload_reals())
    throw std::invalid_argument("assemble_frame: payload length does not match the budget");
  if (features.size() != 2 * CodecBudget::feature_symbols)
    throw std::invalid_argument("assemble_frame: feature tail must hold 28 values");
  if (stats.mean.size() != features.size() || stats.stdev.size() != features.size())
    throw std::invalid_argument("assemble_frame: feature stats missing or mismatched");

  SymbolBlock frame;
  frame.reserve(b.k);
  for (size_t i = 0; i + 1 < payload.size(); i += 2) frame.emplace_back(payload[i], payload[i + 1]);
  for (size_t i = 0; i + 1 < features.size(); i += 2) {
    auto standardize = [&](size_t t) {
      if (stats.stdev[t] <= 0)
        throw std::invalid_argument("assemble_frame: degenerate feature stats");
      return (features[t] - stats.mean[t]) / stats.stdev[t];
    };
    frame.emplace_back(standardize(i), standardize(i + 1));
  }
  return frame;
}

FrameParts disassemble_frame(const SymbolBlock& frame, std::complex<double> gain,
                             const FeatureStats& stats, const CodecBudget& b) {
  if (static_cast<long>(frame.size()) != b.k)
    throw std::invalid_argument("disassemble_frame: frame length does not match the budget");
  if (std::norm(gain) <= 0) throw std::invalid_argument("disassemble_frame: zero fading gain");
  if (stats.mean.size() != 2 * CodecBudget::feature_symbols ||
      stats.stdev.size() != 2 * CodecBudget::feature_symbols)
    throw std::invalid_argument("disassemble_frame: feature stats missing or mismatched");

  FrameParts parts;
  parts.payload.reserve(b.payload_reals());
  long split = b.payload_symbols();
  for (long i = 0; i < split; ++i) {
    std::complex<double> z = frame[i] / gain;
    parts.payload.push_back(z.real());
    parts.payload.push_back(z.imag());
  }
  parts.features.reserve(2 * CodecBudget::feature_symbols);
  for (long i = split; i < b.k; ++i) {
    std::complex<double> z = frame[i] / gain;
    size_t t = parts.features.size();
    parts.features.push_back(z.real() * stats.stdev[t] + stats.mean[t]);
    t = parts.features.size();
    parts.features.push_back(z.imag() * stats.stdev[t] + stats.mean[t]);
  }
  return parts;
}

}  // namespace topoharq
