#pragma once

#include <string>
#include <vector>

#include "topoharq/cubical.hpp"

namespace topoharq {

/// Scalar summaries of one persistence diagram. All six treat the capped
/// essential intervals like ordinary points, so every value is finite.

/// (sqrt(2)/2) * (sum of persistence^p)^(1/p); 0 for an empty diagram.
double wasserstein_amplitude(const PersistenceDiagram& pd, int q, int p);

/// (sqrt(2)/2) * max persistence; 0 for an empty diagram.
double bottleneck_amplitude(const PersistenceDiagram& pd, int q);

/// Number of intervals whose closed span [birth, death] contains t.
double betti_curve(const PersistenceDiagram& pd, int q, double t);

/// layer-th largest tent function at t: each interval contributes
/// min(t - birth, death - t) inside (birth, death) and 0 outside. Returns 0
/// when fewer than `layer` intervals cover t. layer counts from 1.
double landscape_value(const PersistenceDiagram& pd, int q, int layer, double t);

/// Signed heat embedding at (r, s): each interval adds a Gaussian bump of
/// bandwidth kappa at (birth, death) minus its mirror at (death, birth),
/// scaled by 1/(8 pi kappa). Antisymmetric in (r, s).
double heat_kernel_value(const PersistenceDiagram& pd, int q, double kappa, double r, double s);

/// Shannon entropy (natural log) of the normalized persistence values;
/// 0 when the diagram is empty or carries no total persistence.
double persistent_entropy(const PersistenceDiagram& pd, int q);

/// Sampling plan turning diagrams into a fixed-length vector.
struct SignatureConfig {
  std::vector<int> wasserstein_orders = {1, 2};
  std::vector<int> landscape_layers = {1, 2};
  std::vector<double> heat_bandwidths = {10.0, 15.0};
  int betti_samples = 6;       // evenly spaced over [0, ceiling], endpoints included
  int landscape_samples = 100; // midpoint grid for the L2 amplitude
  int heat_grid = 32;          // midpoint grid per axis for the L2 amplitude

  int block_size() const {
    return betti_samples + static_cast<int>(landscape_layers.size()) +
           static_cast<int>(heat_bandwidths.size()) +
           static_cast<int>(wasserstein_orders.size()) + 2;  // + bottleneck + entropy
  }
};

/// One position of the feature vector: which filtration and homology
/// dimension it reads and which signature sample it stores.
struct FeatureDescriptor {
  std::string filtration;
  int q = 0;
  std::string signature;  // betti | landscape | heat | wasserstein | bottleneck | entropy
  int ip = 0;             // sample index, layer or order
  double dp = 0;          // heat bandwidth

  std::string token() const;  // e.g. "height(1,0)|q0|betti|s3"
};

/// Full layout: for each filtration, q = 0 then q = 1, block order
/// [betti samples, landscape amplitudes, heat amplitudes, wasserstein
/// amplitudes, bottleneck amplitude, entropy].
std::vector<FeatureDescriptor> feature_layout(const std::vector<std::string>& filtration_names,
                                              const SignatureConfig& cfg);

/// Value of a single layout entry for its diagram. vectorize() is exactly
/// this over the whole layout, so stored vectors replay entry by entry.
double evaluate_descriptor(const PersistenceDiagram& pd, const FeatureDescriptor& d,
                           const SignatureConfig& cfg);

/// Signature vector over all configured filtrations; diagrams must line up
/// with filtration_names.
std::vector<double> vectorize(const std::vector<PersistenceDiagram>& diagrams,
                              const std::vector<std::string>& filtration_names,
                              const SignatureConfig& cfg);

/// Ordered index subset kept by greedy decorrelation.
struct SelectionMask {
  std::vector<int> indices;
  double greedy_bound = 0;  // largest |Pearson| admitted while selecting
};

/// Greedy low-correlation subset over sample rows: seed with the feature of
/// highest variance, then repeatedly add the feature whose worst absolute
/// Pearson correlation against the chosen set is smallest. Constant
/// features are never eligible; ties resolve to the lowest index. Throws
/// when k exceeds the number of varying features.
SelectionMask pearson_select(const std::vector<std::vector<double>>& samples, int k);

}  // namespace topoharq
