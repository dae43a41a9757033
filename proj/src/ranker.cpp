#include "boise/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boise/pel.hpp"

namespace boise {

std::vector<int> rank_indices(std::span<const double> scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    if (scores[lhs] != scores[rhs]) return scores[lhs] > scores[rhs];
    return lhs < rhs;
  });
  return order;
}

std::vector<int> top_set(std::span<const double> scores, int n_top) {
  require(n_top >= 0 && n_top <= static_cast<int>(scores.size()),
          "top-set size out of range");
  std::vector<int> order = rank_indices(scores);
  order.resize(n_top);
  return order;
}

double top_set_loss(std::span<const double> scores, int n_top) {
  const std::vector<int> top = top_set(scores, n_top);
  double gain = 0.0;
  for (int j : top) gain += scores[j];  // descending order by construction
  return static_cast<double>(n_top) - gain;
}

std::vector<RankedCompound> rank_all(const PosteriorEnsemble& ensemble,
                                     const InformerAssay& assay) {
  const std::vector<double> theta = theta_hat_all(ensemble, assay);
  const std::vector<int> order = rank_indices(theta);
  std::vector<RankedCompound> ranked;
  ranked.reserve(order.size());
  for (int j : order) {
    const bool informer = std::find(assay.informers.begin(),
                                    assay.informers.end(),
                                    j) != assay.informers.end();
    ranked.push_back(RankedCompound{j, theta[j], informer});
  }
  return ranked;
}

std::vector<std::uint8_t> encode_intermediate(
    std::span<const double> z_readout,
    const std::vector<std::vector<double>>& training_z_rows,
    const std::vector<std::vector<std::uint8_t>>& training_x_rows) {
  require(!training_z_rows.empty(), "centroid coding needs training rows");
  require(training_z_rows.size() == training_x_rows.size(),
          "continuous and binary training rows must align");
  const std::size_t width = z_readout.size();

  struct Group {
    std::vector<std::uint8_t> outcome;
    std::vector<double> sum;
    int count = 0;
  };
  std::vector<Group> groups;  // in first-encountered row order
  for (std::size_t r = 0; r < training_z_rows.size(); ++r) {
    require(training_z_rows[r].size() == width &&
                training_x_rows[r].size() == width,
            "training row width must match the readout");
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.outcome == training_x_rows[r];
    });
    if (it == groups.end()) {
      groups.push_back(Group{training_x_rows[r],
                             std::vector<double>(width, 0.0), 0});
      it = std::prev(groups.end());
    }
    for (std::size_t t = 0; t < width; ++t) it->sum[t] += training_z_rows[r][t];
    ++it->count;
  }

  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double dist = 0.0;
    for (std::size_t t = 0; t < width; ++t) {
      const double d = z_readout[t] - groups[g].sum[t] / groups[g].count;
      dist += d * d;
    }
    if (dist < best_dist) {  // strict: ties keep the earlier outcome
      best_dist = dist;
      best = g;
    }
  }
  return groups[best].outcome;
}

}  // namespace boise
