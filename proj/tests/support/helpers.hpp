#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boise/common.hpp"
#include "boise/matrix.hpp"

namespace boise::testing {

inline std::vector<std::string> sequential_ids(const std::string& prefix,
                                               int count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (int i = 0; i < count; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

/// Matrix from explicit rows; -1 marks an unobserved cell.
inline BioactivityMatrix matrix_from_rows(
    const std::vector<std::vector<int>>& rows) {
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().size());
  std::vector<std::uint8_t> values, observed;
  for (const auto& row : rows)
    for (int v : row) {
      values.push_back(v == 1 ? 1 : 0);
      observed.push_back(v >= 0 ? 1 : 0);
    }
  return BioactivityMatrix(sequential_ids("t", m), sequential_ids("c", n),
                           std::move(values), std::move(observed));
}

inline BioactivityMatrix random_matrix(int m, int n, std::uint64_t seed,
                                       double density = 0.5) {
  Rng rng(seed);
  std::vector<std::uint8_t> values;
  values.reserve(static_cast<std::size_t>(m) * n);
  for (int c = 0; c < m * n; ++c)
    values.push_back(rng.bernoulli(density) ? 1 : 0);
  return BioactivityMatrix(sequential_ids("t", m), sequential_ids("c", n),
                           std::move(values),
                           std::vector<std::uint8_t>(
                               static_cast<std::size_t>(m) * n, 1));
}

/// Ideal block pattern flipped with the given noise rate. cluster_of[i]
/// assigns each target a latent cluster; block_of[j] is the compound's
/// active block, or -1 for background compounds active nowhere.
inline BioactivityMatrix block_matrix(const std::vector<int>& cluster_of,
                                      const std::vector<int>& block_of,
                                      double noise, std::uint64_t seed) {
  const int m = static_cast<int>(cluster_of.size());
  const int n = static_cast<int>(block_of.size());
  Rng rng(seed);
  std::vector<std::uint8_t> values;
  values.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const int ideal = block_of[j] >= 0 && block_of[j] == cluster_of[i];
      const int flipped = rng.bernoulli(noise) ? 1 - ideal : ideal;
      values.push_back(static_cast<std::uint8_t>(flipped));
    }
  return BioactivityMatrix(sequential_ids("t", m), sequential_ids("c", n),
                           std::move(values),
                           std::vector<std::uint8_t>(
                               static_cast<std::size_t>(m) * n, 1));
}

inline double median(std::vector<double> values) {
  require(!values.empty(), "median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  if (values.size() % 2 == 1) return values[h];
  return (values[h - 1] + values[h]) / 2.0;
}

}  // namespace boise::testing
