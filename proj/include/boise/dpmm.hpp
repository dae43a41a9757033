#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boise/common.hpp"
#include "boise/matrix.hpp"

namespace boise {

struct Hyperparams {
  double m0 = 1.0;      // prior mass of the partition distribution
  double alpha0 = 1.0;  // Beta prior on per-cluster activity rates
  double beta0 = 1.0;

  void validate() const {
    require(m0 > 0 && alpha0 > 0 && beta0 > 0,
            "hyperparameters must be strictly positive");
  }
};

/// A partition of the targets with cached per-cluster Beta-posterior counts.
/// Counts are kept as integers (observed actives / observed cells) so the
/// cache stays exactly coherent under incremental Gibbs moves:
///   a(k,j) = alpha0 + actives,  b(k,j) = beta0 + (observed - actives),
/// where only observed cells contribute.
class Clustering {
 public:
  static Clustering from_labels(const BioactivityMatrix& x0,
                                std::vector<int> labels,
                                const Hyperparams& hyper);
  static Clustering single_cluster(const BioactivityMatrix& x0,
                                   const Hyperparams& hyper);
  static Clustering singletons(const BioactivityMatrix& x0,
                               const Hyperparams& hyper);

  int num_targets() const { return static_cast<int>(labels_.size()); }
  int num_compounds() const { return n_; }
  int num_clusters() const { return static_cast<int>(sizes_.size()); }
  int label(int i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  int cluster_size(int k) const { return sizes_[k]; }

  double a(int k, int j) const { return hyper_.alpha0 + actives_[cell(k, j)]; }
  double b(int k, int j) const {
    return hyper_.beta0 + observed_[cell(k, j)] - actives_[cell(k, j)];
  }
  int active_count(int k, int j) const { return actives_[cell(k, j)]; }
  int observed_count(int k, int j) const { return observed_[cell(k, j)]; }

  const Hyperparams& hyper() const { return hyper_; }

  /// Removes target i from its cluster; an emptied cluster is deleted
  /// (the last cluster is swapped into its slot). i must be re-attached
  /// before the clustering is used as a full partition again.
  void detach_target(int i, const BioactivityMatrix& x0);

  /// Attaches target i to cluster k; k == num_clusters() opens a new one.
  void attach_target(int i, int k, const BioactivityMatrix& x0);

  /// Relabels clusters in order of their smallest member index, so equal
  /// partitions compare equal by labels().
  void canonicalize();
  Clustering canonicalized() const;

  /// True when the cached counts match a from-scratch rebuild (exact
  /// integer comparison).
  bool counts_match(const BioactivityMatrix& x0) const;

 private:
  Clustering(const Hyperparams& hyper, int n) : hyper_(hyper), n_(n) {
    hyper_.validate();
  }
  std::size_t cell(int k, int j) const {
    return static_cast<std::size_t>(k) * n_ + j;
  }
  void add_counts(int i, int k, const BioactivityMatrix& x0, int sign);

  Hyperparams hyper_;
  int n_ = 0;
  std::vector<int> labels_;    // -1 while detached
  std::vector<int> sizes_;     // per cluster, all > 0
  std::vector<int> actives_;   // K x n observed actives
  std::vector<int> observed_;  // K x n observed cells
};

/// log p(C) of the Chinese-Restaurant partition distribution:
/// m0^K Gamma(m0) prod_k Gamma(m_k) / Gamma(m + m0).
double cr_log_prior(std::span<const int> cluster_sizes, double m0);
double cr_log_prior(const Clustering& clustering, double m0);

/// Prior expected number of clusters, sum_{i=0}^{m-1} m0/(m0+i).
double cr_prior_expected_clusters(int num_targets, double m0);

/// Full conditional for target i's label given everyone else's. The
/// clustering must already have i detached. Entry k < K is the probability
/// of joining existing cluster k; entry K opens a new cluster. Products run
/// over observed cells only and accumulate in log space.
std::vector<double> gibbs_conditional(const Clustering& without_i,
                                      const BioactivityMatrix& x0, int i);

struct SamplerConfig {
  int samples = 100;   // kept clusterings (M)
  int thinning = 50;   // sweeps between kept samples (N)
  int burn_in = 1000;  // discarded initial sweeps
  std::uint64_t seed = 0;
  enum class Init { SingleCluster, Singletons };
  Init init = Init::SingleCluster;
  bool check_counts_each_sweep = false;  // exact cache audit (tests)

  void validate() const {
    require(samples >= 1 && thinning >= 1 && burn_in >= 0,
            "sampler configuration out of range");
  }
};

struct PosteriorEnsemble {
  std::vector<Clustering> samples;       // canonicalized
  Hyperparams hyper;
  std::uint64_t seed = 0;
  int burn_in = 0;
  int thinning = 1;
  std::vector<int> cluster_count_trace;  // K after every sweep, burn-in included
};

/// Collapsed Gibbs sampler over target partitions. One sweep updates every
/// label in index order; every thinning-th sweep after burn-in is recorded.
/// Deterministic for a fixed seed and configuration.
PosteriorEnsemble sample_posterior(const BioactivityMatrix& x0,
                                   const Hyperparams& hyper,
                                   const SamplerConfig& config);

inline const std::vector<double>& default_m0_grid() {
  static const std::vector<double> grid{1, 2, 3, 5, 10, 15, 20, 30};
  return grid;
}

/// Empirical-Bayes hyperparameters: alpha0 = mean observed activity,
/// beta0 = 1 - alpha0, and m0 picked from the grid to minimize
/// |E_prior(K) - E_posterior(K)|, the latter estimated from a pilot chain
/// run at each candidate m0.
Hyperparams choose_hyperparams(const BioactivityMatrix& x0,
                               std::span<const double> m0_grid,
                               const SamplerConfig& pilot);
Hyperparams choose_hyperparams(const BioactivityMatrix& x0);

}  // namespace boise
