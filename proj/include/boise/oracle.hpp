#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boise/pel.hpp"

namespace boise::oracle {

/// All set partitions of {0..m-1} as canonical label vectors (restricted
/// growth strings: cluster ids appear in first-occurrence order). Guarded at
/// m <= 12 (Bell(12) = 4,213,597).
std::vector<std::vector<int>> enumerate_partitions(int m);

/// Exact posterior over partitions given x0: the product-of-Beta-functions
/// likelihood (observed cells only) times the Chinese-Restaurant prior,
/// normalized over the full enumeration. Clusterings carry their count
/// caches so downstream evaluations reuse the shared predictive formulas.
struct ExactPosterior {
  std::vector<Clustering> clusterings;
  std::vector<double> probs;
};
ExactPosterior exact_posterior(const BioactivityMatrix& x0,
                               const Hyperparams& hyper);

/// E(theta_{i*,j} | x0, x_A) by total enumeration over partitions.
std::vector<double> exact_theta_hat_all(const ExactPosterior& posterior,
                                        const InformerAssay& assay);
double exact_theta_hat(const BioactivityMatrix& x0, const Hyperparams& hyper,
                       const InformerAssay& assay, int j);

/// Exact PEL2: the top-set rule applied to exact posterior means.
double exact_pel2(const ExactPosterior& posterior, const InformerAssay& assay,
                  int n_top);

/// Exact marginal mass of an outcome, sum_C p(C|x0) p(x_A|x0,C).
double exact_p_xa(const ExactPosterior& posterior, const InformerAssay& assay);

/// Exact PEL1: the full sum over partitions and all 2^|A| outcomes. Guarded
/// so the term count Bell(m) * 2^|A| stays enumerable.
double exact_pel1(const ExactPosterior& posterior,
                  std::span<const int> informers, int n_top);
double exact_pel1(const BioactivityMatrix& x0, const Hyperparams& hyper,
                  std::span<const int> informers, int n_top);

/// Clustering-free reduced model: x_{i,j} ~ Bernoulli(theta_j) with
/// theta_j ~ Beta(alpha, beta) i.i.d. per compound. Posterior means are
/// (alpha + s_j)/(alpha + beta + m), with the +outcome bump for informers.
std::vector<double> no_cluster_theta(const BioactivityMatrix& x0, double alpha,
                                     double beta, const InformerAssay& assay);

/// Exact PEL1 under the clustering-free model via the closed-form posterior
/// means. Requires a complete binary matrix.
double no_cluster_pel1(const BioactivityMatrix& x0, double alpha, double beta,
                       std::span<const int> informers, int n_top);

}  // namespace boise::oracle
