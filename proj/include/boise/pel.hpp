#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boise/dpmm.hpp"

namespace boise {

/// An informer set together with the binary outcomes observed on the new
/// target, aligned index-for-index.
struct InformerAssay {
  std::vector<int> informers;
  std::vector<std::uint8_t> outcomes;

  void validate(int num_compounds) const;
  bool empty() const { return informers.empty(); }
};

/// Conditional distribution of the new target's cluster link given a
/// clustering and the intermediate data. p[0] is the new-cluster mass c_0;
/// p[k+1] corresponds to cluster k of the clustering.
struct LinkDistribution {
  std::vector<double> p;
};

/// p_k proportional to m_k prod_{j in A} (a/(a+b))^x (b/(a+b))^(1-x), with
/// m_0 and the prior rates for the new cluster. Log-space internally.
LinkDistribution link_distribution(const Clustering& clustering,
                                   const InformerAssay& assay);

/// Draws intermediate outcomes for the informer columns: first the cluster
/// link (m_k vs m_0 weights), then independent Bernoulli(a/(a+b)) per column.
std::vector<std::uint8_t> sample_intermediate(const Clustering& clustering,
                                              std::span<const int> informers,
                                              Rng& rng);

/// Draws a full predictive row over all compounds (auxiliary sample for the
/// entropy selector).
std::vector<std::uint8_t> sample_predictive_row(const Clustering& clustering,
                                                Rng& rng);

/// E(theta_{i*,j} | C, x0, x_A): link-weighted posterior means, with the
/// observed outcome folded into column j when j is an informer.
double theta_tilde(const Clustering& clustering, const InformerAssay& assay,
                   int j);
std::vector<double> theta_tilde_all(const Clustering& clustering,
                                    const InformerAssay& assay);

/// log p(x_A | x0, C): CR-weighted mixture over links of the product
/// Bernoulli mass of the outcomes.
double log_p_xa_given_x0(const Clustering& clustering,
                         const InformerAssay& assay);
double p_xa_given_x0(const Clustering& clustering, const InformerAssay& assay);

/// E(theta_{i*,j} | x0, x_A) by recycling the ensemble: a self-normalized
/// importance average of theta_tilde with weights p(x_A|x0,C).
std::vector<double> theta_hat_all(const PosteriorEnsemble& ensemble,
                                  const InformerAssay& assay);
double theta_hat(const PosteriorEnsemble& ensemble, const InformerAssay& assay,
                 int j);

/// Posterior expected loss after intermediate data: the top-set rule applied
/// to theta_hat, scored by sum of (1 - theta_hat) over the chosen set.
double pel2(const PosteriorEnsemble& ensemble, const InformerAssay& assay,
            int n_top);

struct Pel1Config {
  int draws_per_sample = 1;  // predictive x_A draws per ensemble member
};

/// Posterior expected loss of an informer set before outcomes are known:
/// draws x_A per ensemble member, evaluates PEL2 once per distinct outcome,
/// and averages with multiplicity weights. Deterministic for a fixed seed.
double pel1(const PosteriorEnsemble& ensemble, std::span<const int> informers,
            int n_top, std::uint64_t seed, const Pel1Config& config = {});

}  // namespace boise
