#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boise/common.hpp"

namespace boise {

struct InformerAssay;
struct PosteriorEnsemble;
class ContinuousMatrix;

/// Indices of the n_top largest scores, ties broken toward the lowest index.
std::vector<int> top_set(std::span<const double> scores, int n_top);

/// n_top minus the sum of the n_top largest scores, summed in descending
/// order so equal-value selections produce bit-identical losses.
double top_set_loss(std::span<const double> scores, int n_top);

/// All indices ordered by score descending, ties toward the lowest index.
std::vector<int> rank_indices(std::span<const double> scores);

struct RankedCompound {
  int compound = 0;
  double score = 0.0;
  bool informer = false;
};

/// Ranks every compound by E(theta_{i*,j} | x0, x_A) descending.
std::vector<RankedCompound> rank_all(const PosteriorEnsemble& ensemble,
                                     const InformerAssay& assay);

/// Maps continuous informer readouts z_A to a binary outcome by nearest
/// centroid: training rows are grouped by their binary outcome on the
/// informer columns, each group contributes the mean of its continuous
/// readouts, and the closest centroid's outcome (Euclidean distance, ties to
/// the first-encountered outcome in row order) is returned.
std::vector<std::uint8_t> encode_intermediate(
    std::span<const double> z_readout,
    const std::vector<std::vector<double>>& training_z_rows,
    const std::vector<std::vector<std::uint8_t>>& training_x_rows);

}  // namespace boise
