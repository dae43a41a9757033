#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boise/matrix.hpp"

namespace boise {

/// 10% enrichment factor of a ranked compound list against revealed truth:
/// (hits in the top floor(n/10)) / floor(n/10), divided by the base rate.
/// `order` lists compound indices best-first; `truth` is indexed by compound.
double ef10(std::span<const int> order, std::span<const std::uint8_t> truth);

/// Normalized EF10 in [0,1]: 0.5 is random, 1 is the theoretical maximum.
double nef10(std::span<const int> order, std::span<const std::uint8_t> truth);

/// Area under the ROC step curve; tied scores contribute the trapezoid mean
/// over their block. `scores` is indexed by compound.
double rocauc(std::span<const double> scores,
              std::span<const std::uint8_t> truth);

/// Best Matthews correlation over all prefix splits of the ranking
/// (prefix = predicted positive). Splits with a zero denominator score 0.
double mcc_best_split(std::span<const int> order,
                      std::span<const std::uint8_t> truth);

/// Best F1 over the same prefix splits.
double f1_best_split(std::span<const int> order,
                     std::span<const std::uint8_t> truth);

/// Baseline informer rule: the n_informers compounds with the largest
/// observed column sums, ties toward the lowest index.
std::vector<int> frequent_hitters(const BioactivityMatrix& x0, int n_informers);

}  // namespace boise
