#pragma once

#include <vector>

#include "topoharq/channel.hpp"
#include "topoharq/image.hpp"

namespace topoharq {

/// Symbol budget of one frame. k complex channel uses carry the analog
/// payload plus a fixed tail of feature_symbols uses (28 standardized reals)
/// for the transmitter-side topology summary.
struct CodecBudget {
  int height = 0;
  int width = 0;
  long m = 0;  // source dimension, 3 * height * width
  long k = 0;  // complex channel uses per frame

  static constexpr int feature_symbols = 14;

  long payload_symbols() const { return k - feature_symbols; }
  long payload_reals() const { return 2 * payload_symbols(); }
  double rate() const { return static_cast<double>(k) / static_cast<double>(2 * m); }
};

/// Budget for a channel-use rate r = k / (2m), r in (0, 1]. The rate must
/// leave at least one payload symbol beyond the feature tail.
CodecBudget make_budget(int height, int width, double rate);

/// Rate equivalent of an encoder embedding width c after `stages` twofold
/// spatial reductions: r = c / (6 * 4^stages). Two stages suit thumbnail
/// inputs, four suit high-resolution ones.
double rate_for_embedding_dim(int c, int stages);

/// Analog source coder: image to payload reals and back. The payload has
/// exactly budget.payload_reals() entries in both directions.
class Codec {
public:
  virtual ~Codec() = default;
  virtual std::vector<double> encode(const RgbImage& img, const CodecBudget& b) const = 0;
  virtual RgbImage decode(const std::vector<double>& payload, const CodecBudget& b) const = 0;
};

/// Deterministic transform coder: per-channel 8x8 orthonormal DCT, zig-zag
/// truncation to the budget, and a fixed per-position scale that evens out
/// coefficient magnitudes across the payload. Blocks past the image edge
/// replicate the border; decode crops back and clamps to [0, 255]. With a
/// budget of 64 coefficients per block the round trip is exact up to pixel
/// rounding.
class BlockDctCodec : public Codec {
public:
  std::vector<double> encode(const RgbImage& img, const CodecBudget& b) const override;
  RgbImage decode(const std::vector<double>& payload, const CodecBudget& b) const override;

  /// Coefficients kept per (block, channel) under this budget, in [1, 64].
  /// Throws when the budget cannot fund one coefficient per block.
  static int coeffs_per_block(const CodecBudget& b);
};

/// Transmitter-side standardization constants for the feature tail.
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> stdev;
};

/// Pack payload reals and the standardized feature tail into one complex
/// frame of exactly budget.k symbols, payload first.
SymbolBlock assemble_frame(const std::vector<double>& payload,
                           const std::vector<double>& features, const FeatureStats& stats,
                           const CodecBudget& b);

struct FrameParts {
  std::vector<double> payload;
  std::vector<double> features;  // de-standardized
};

/// Undo assemble_frame on an equalized observation: divide out the fading
/// gain, split at the payload boundary, de-standardize the feature tail.
FrameParts disassemble_frame(const SymbolBlock& frame, std::complex<double> gain,
                             const FeatureStats& stats, const CodecBudget& b);

}  // namespace topoharq
