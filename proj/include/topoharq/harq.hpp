#pragma once

#include <cstdint>
#include <vector>

#include "topoharq/channel.hpp"
#include "topoharq/codec.hpp"
#include "topoharq/detector.hpp"
#include "topoharq/extract.hpp"
#include "topoharq/image.hpp"

namespace topoharq {

struct HarqConfig {
  int n_max = 3;
  ChannelSpec channel;
  CodecBudget budget;
  double chi = 0;  // acceptance threshold; +infinity accepts everything
};

/// Maximum-ratio combination of repeated receptions of one frame:
/// sum(conj(h_j) * y_j) / sum(|h_j|^2). Collapses to the arithmetic mean
/// when every gain is 1. Throws on an empty buffer.
SymbolBlock combine(const std::vector<Received>& buffer);

/// Flat view of the reception buffer padded to the full attempt budget:
/// n_max slots of k symbols each, zero until a transmission lands there.
SymbolBlock pad_view(const std::vector<Received>& buffer, int n_max, long k);

struct AttemptRecord {
  double psnr_db = 0;
  double distance = 0;
  int zeta = 0;
};

struct SessionResult {
  RgbImage reconstruction;  // from the last attempt
  int attempts = 0;
  int zeta = 0;  // 0 when the budget ran out without an accept
  std::vector<AttemptRecord> trace;
};

struct SessionContext {
  HarqConfig harq;
  DetectorModel detector;
  PipelineConfig pipeline;
  const Codec* codec = nullptr;
};

/// One incremental-knowledge session. The frame is encoded exactly once;
/// each attempt retransmits it, maximum-ratio combines everything received
/// so far, decodes, re-extracts the topology of the reconstruction and asks
/// the detector. Stops on accept or after n_max attempts. Attempt j draws
/// its channel stream from (session_seed, j), so sessions replay bit for
/// bit.
SessionResult run_session(const RgbImage& img, const SessionContext& ctx, uint64_t session_seed);

}  // namespace topoharq
