#pragma once

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "boise/common.hpp"

namespace boise {

/// Binary target-by-compound activity matrix with an observed mask.
/// Values at unobserved cells are never read.
class BioactivityMatrix {
 public:
  BioactivityMatrix(std::vector<std::string> targets,
                    std::vector<std::string> compounds,
                    std::vector<std::uint8_t> values,
                    std::vector<std::uint8_t> observed,
                    std::string corner_label = "target");

  int num_targets() const { return m_; }
  int num_compounds() const { return n_; }

  bool is_observed(int i, int j) const { return observed_[idx(i, j)] != 0; }

  int value(int i, int j) const {
    assert(is_observed(i, j));
    return values_[idx(i, j)];
  }

  const std::string& target_id(int i) const { return targets_[i]; }
  const std::string& compound_id(int j) const { return compounds_[j]; }
  const std::vector<std::string>& target_ids() const { return targets_; }
  const std::vector<std::string>& compound_ids() const { return compounds_; }
  const std::string& corner_label() const { return corner_; }

  /// Per-compound count of observed active cells.
  std::vector<int> column_sums() const;
  /// Per-compound count of observed cells.
  std::vector<int> column_observed() const;

  /// Mean of observed entries. Errors when nothing is observed.
  double observed_mean() const;

  bool fully_observed() const;

  /// Copy with row i removed (leave-one-out folds).
  BioactivityMatrix without_target(int i) const;

 private:
  std::size_t idx(int i, int j) const {
    assert(i >= 0 && i < m_ && j >= 0 && j < n_);
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int m_ = 0, n_ = 0;
  std::vector<std::string> targets_, compounds_;
  std::vector<std::uint8_t> values_, observed_;
  std::string corner_;
};

/// Continuous measurements (percent inhibition, z-scores) on the same axes.
class ContinuousMatrix {
 public:
  ContinuousMatrix(std::vector<std::string> targets,
                   std::vector<std::string> compounds,
                   std::vector<double> values, std::vector<std::uint8_t> observed,
                   std::string corner_label = "target");

  int num_targets() const { return m_; }
  int num_compounds() const { return n_; }
  bool is_observed(int i, int j) const { return observed_[idx(i, j)] != 0; }
  double value(int i, int j) const {
    assert(is_observed(i, j));
    return values_[idx(i, j)];
  }
  const std::string& target_id(int i) const { return targets_[i]; }
  const std::string& compound_id(int j) const { return compounds_[j]; }
  const std::vector<std::string>& target_ids() const { return targets_; }
  const std::vector<std::string>& compound_ids() const { return compounds_; }
  const std::string& corner_label() const { return corner_; }

 private:
  std::size_t idx(int i, int j) const {
    assert(i >= 0 && i < m_ && j >= 0 && j < n_);
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int m_ = 0, n_ = 0;
  std::vector<std::string> targets_, compounds_;
  std::vector<double> values_;
  std::vector<std::uint8_t> observed_;
  std::string corner_;
};

struct TwoSdResult {
  BioactivityMatrix matrix;
  std::vector<double> thresholds;   // per-target mean + 2*sd, for audit
  std::vector<int> constant_rows;   // rows with sd == 0 (all entries become 1)
};

/// Per-target activity call: active iff value >= mean + 2*sd over the row's
/// observed entries (sample sd). Rows with fewer than two observed entries
/// are an error; constant rows are flagged.
TwoSdResult binarize_2sd(const ContinuousMatrix& z);

/// Active iff z < threshold (strict).
BioactivityMatrix binarize_zscore(const ContinuousMatrix& z, double threshold);

using LoadedMatrix = std::variant<BioactivityMatrix, ContinuousMatrix>;

/// CSV with a compound header row and a leading target-id column. Cells equal
/// to missing_token become unobserved. Returns a binary matrix when every
/// observed cell is exactly 0 or 1, otherwise a continuous one.
LoadedMatrix load_csv(const std::string& path, const std::string& missing_token);

BioactivityMatrix load_binary_csv(const std::string& path,
                                  const std::string& missing_token);
ContinuousMatrix load_continuous_csv(const std::string& path,
                                     const std::string& missing_token);

void write_csv(const BioactivityMatrix& x, std::ostream& out,
               const std::string& missing_token);
void write_csv(const ContinuousMatrix& z, std::ostream& out,
               const std::string& missing_token);

}  // namespace boise
