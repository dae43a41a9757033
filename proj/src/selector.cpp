#include "boise/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace boise {

SelectionResult greedy_select_with(const SetScorer& score, int num_compounds,
                                   int n_informers, int threads) {
  require(n_informers >= 0 && n_informers <= num_compounds,
          "informer count out of range");
  SelectionResult result;
  std::vector<char> chosen(num_compounds, 0);
  std::vector<int> candidate_set;
  while (static_cast<int>(result.informers.size()) < n_informers) {
    std::vector<double> scores(num_compounds,
                               std::numeric_limits<double>::infinity());
    std::vector<int> candidates;
    for (int j = 0; j < num_compounds; ++j)
      if (!chosen[j]) candidates.push_back(j);
    parallel_for(static_cast<int>(candidates.size()), threads, [&](int t) {
      const int j = candidates[t];
      std::vector<int> trial = result.informers;
      trial.push_back(j);
      scores[j] = score(trial);
    });
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int j = 0; j < num_compounds; ++j) {
      if (chosen[j]) continue;
      if (scores[j] < best_score) {  // strict: ties keep the lower index
        best_score = scores[j];
        best = j;
      }
    }
    require(best >= 0, "no candidate could be scored");
    chosen[best] = 1;
    result.informers.push_back(best);
    result.steps.push_back(SelectionStep{best, best_score});
  }
  return result;
}

SelectionResult greedy_select(const PosteriorEnsemble& ensemble,
                              const SelectionConfig& config) {
  require(!ensemble.samples.empty(), "ensemble is empty");
  const int n = ensemble.samples.front().num_compounds();
  config.validate(n);
  // The stream is keyed on the trial size, so every candidate at one greedy
  // step draws from the same sequence: predictive outcomes for the shared
  // prefix coincide and duplicate columns score bit-identically.
  auto scorer = [&](std::span<const int> trial) {
    const std::uint64_t s =
        mix_seed(config.seed, 0xA11, static_cast<std::uint64_t>(trial.size()));
    return pel1(ensemble, trial, config.n_top, s, config.pel);
  };
  return greedy_select_with(scorer, n, config.n_informers, config.threads);
}

double entropy(const LinkDistribution& dist) {
  double h = 0.0;
  for (double p : dist.p) {
    require(p >= -1e-15, "link distribution has a negative entry");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

AuxiliaryDraws sample_auxiliary_rows(const PosteriorEnsemble& ensemble,
                                     std::uint64_t seed) {
  Rng rng(seed);
  AuxiliaryDraws aux;
  aux.rows.reserve(ensemble.samples.size());
  for (const Clustering& c : ensemble.samples)
    aux.rows.push_back(sample_predictive_row(c, rng));
  return aux;
}

double entropy_score(const PosteriorEnsemble& ensemble,
                     const AuxiliaryDraws& aux,
                     std::span<const int> informers) {
  require(aux.rows.size() == ensemble.samples.size(),
          "auxiliary draws do not match the ensemble");
  InformerAssay assay;
  assay.informers.assign(informers.begin(), informers.end());
  assay.outcomes.resize(informers.size());
  double total = 0.0;
  for (std::size_t s = 0; s < ensemble.samples.size(); ++s) {
    for (std::size_t t = 0; t < informers.size(); ++t)
      assay.outcomes[t] = aux.rows[s][informers[t]];
    total += entropy(link_distribution(ensemble.samples[s], assay));
  }
  return total / static_cast<double>(ensemble.samples.size());
}

SelectionResult accelerated_select(const PosteriorEnsemble& ensemble,
                                   const SelectionConfig& config) {
  require(!ensemble.samples.empty(), "ensemble is empty");
  const int n = ensemble.samples.front().num_compounds();
  config.validate(n);
  const AuxiliaryDraws aux =
      sample_auxiliary_rows(ensemble, mix_seed(config.seed, 0xB22));
  auto scorer = [&](std::span<const int> trial) {
    return entropy_score(ensemble, aux, trial);
  };
  return greedy_select_with(scorer, n, config.n_informers, config.threads);
}

SelectionResult select_informers(const PosteriorEnsemble& ensemble,
                                 const SelectionConfig& config) {
  switch (config.method) {
    case SelectionMethod::GreedyPel:
      return greedy_select(ensemble, config);
    case SelectionMethod::Entropy:
      return accelerated_select(ensemble, config);
  }
  fail("unknown selection method");
}

}  // namespace boise
