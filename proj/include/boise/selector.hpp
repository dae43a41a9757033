#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "boise/pel.hpp"

namespace boise {

enum class SelectionMethod { GreedyPel, Entropy };

struct SelectionConfig {
  int n_informers = 1;
  int n_top = 1;
  SelectionMethod method = SelectionMethod::GreedyPel;
  std::uint64_t seed = 0;
  int threads = 1;
  Pel1Config pel;

  void validate(int num_compounds) const {
    require(n_informers >= 0 && n_informers <= num_compounds,
            "informer count out of range");
    require(n_top >= 1 && n_top <= num_compounds, "top-set size out of range");
  }
};

struct SelectionStep {
  int chosen = 0;
  double score = 0.0;  // objective value of the set after this addition
};

struct SelectionResult {
  std::vector<int> informers;        // in selection order
  std::vector<SelectionStep> steps;  // aligned with informers
};

/// Scores a candidate informer set; lower is better.
using SetScorer = std::function<double(std::span<const int>)>;

/// Greedy minimization over a caller-supplied objective: repeatedly appends
/// the candidate with the smallest score, ties toward the lowest compound
/// index. Candidate evaluations at one step may run in parallel; the pick is
/// a deterministic (min value, min index) reduction.
SelectionResult greedy_select_with(const SetScorer& score, int num_compounds,
                                   int n_informers, int threads);

/// Greedy informer selection by Monte-Carlo PEL1 against a fixed ensemble.
/// All candidates at one step share a common random-number stream, so scores
/// are order-independent and exact duplicate columns tie bit-for-bit.
SelectionResult greedy_select(const PosteriorEnsemble& ensemble,
                              const SelectionConfig& config);

/// Shannon entropy of a link distribution in bits; 0 log 0 reads as 0.
double entropy(const LinkDistribution& dist);

/// One predictive row of the new target per ensemble member, drawn up front
/// and reused across the whole greedy run.
struct AuxiliaryDraws {
  std::vector<std::vector<std::uint8_t>> rows;
};
AuxiliaryDraws sample_auxiliary_rows(const PosteriorEnsemble& ensemble,
                                     std::uint64_t seed);

/// Expected posterior entropy of the new target's cluster label under
/// informer set A: the average over ensemble members of the link-distribution
/// entropy with outcomes restricted from the member's auxiliary row.
double entropy_score(const PosteriorEnsemble& ensemble,
                     const AuxiliaryDraws& aux, std::span<const int> informers);

/// Greedy informer selection by expected-entropy minimization.
SelectionResult accelerated_select(const PosteriorEnsemble& ensemble,
                                   const SelectionConfig& config);

/// Dispatch on config.method.
SelectionResult select_informers(const PosteriorEnsemble& ensemble,
                                 const SelectionConfig& config);

}  // namespace boise
