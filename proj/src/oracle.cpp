#include "boise/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "boise/ranker.hpp"

namespace boise::oracle {

namespace {

constexpr int kMaxPartitionTargets = 12;  // Bell(12) = 4,213,597
constexpr int kMaxEnumeratedInformers = 12;

void extend_partition(std::vector<int>& labels, int next, int used,
                      std::vector<std::vector<int>>& out) {
  const int m = static_cast<int>(labels.size());
  if (next == m) {
    out.push_back(labels);
    return;
  }
  for (int k = 0; k <= used; ++k) {
    labels[next] = k;
    extend_partition(labels, next + 1, std::max(used, k + 1), out);
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_partitions(int m) {
  require(m >= 1, "need at least one element");
  require(m <= kMaxPartitionTargets,
          "partition enumeration guarded at m <= 12");
  std::vector<std::vector<int>> out;
  std::vector<int> labels(m, 0);
  extend_partition(labels, 1, 1, out);
  return out;
}

ExactPosterior exact_posterior(const BioactivityMatrix& x0,
                               const Hyperparams& hyper) {
  hyper.validate();
  const int m = x0.num_targets();
  const int n = x0.num_compounds();
  const double lbeta0 = lbeta(hyper.alpha0, hyper.beta0);

  ExactPosterior post;
  std::vector<double> log_mass;
  for (auto& labels : enumerate_partitions(m)) {
    Clustering c = Clustering::from_labels(x0, std::move(labels), hyper);
    // Marginal likelihood: per cluster and compound, the Beta-function ratio
    // B(alpha0 + actives, beta0 + inactives) / B(alpha0, beta0) over
    // observed cells.
    double ll = 0.0;
    for (int k = 0; k < c.num_clusters(); ++k)
      for (int j = 0; j < n; ++j) {
        const int act = c.active_count(k, j);
        const int obs = c.observed_count(k, j);
        ll += lbeta(hyper.alpha0 + act, hyper.beta0 + (obs - act)) - lbeta0;
      }
    log_mass.push_back(ll + cr_log_prior(c, hyper.m0));
    post.clusterings.push_back(std::move(c));
  }
  const double lse = log_sum_exp(log_mass);
  post.probs.resize(log_mass.size());
  for (std::size_t t = 0; t < log_mass.size(); ++t)
    post.probs[t] = std::exp(log_mass[t] - lse);
  return post;
}

std::vector<double> exact_theta_hat_all(const ExactPosterior& posterior,
                                        const InformerAssay& assay) {
  require(!posterior.clusterings.empty(), "posterior is empty");
  const int n = posterior.clusterings.front().num_compounds();
  // p(C | x0, x_A) is proportional to p(C|x0) p(x_A|x0,C); reweight the
  // enumeration instead of recomputing a posterior.
  std::vector<double> weights(posterior.clusterings.size());
  double total = 0.0;
  for (std::size_t t = 0; t < posterior.clusterings.size(); ++t) {
    weights[t] = posterior.probs[t] *
                 p_xa_given_x0(posterior.clusterings[t], assay);
    total += weights[t];
  }
  require(total > 0.0, "outcome has zero exact mass");
  std::vector<double> acc(n, 0.0);
  for (std::size_t t = 0; t < posterior.clusterings.size(); ++t) {
    if (weights[t] == 0.0) continue;
    const std::vector<double> tilde =
        theta_tilde_all(posterior.clusterings[t], assay);
    for (int j = 0; j < n; ++j) acc[j] += weights[t] * tilde[j];
  }
  for (double& v : acc) v /= total;
  return acc;
}

double exact_theta_hat(const BioactivityMatrix& x0, const Hyperparams& hyper,
                       const InformerAssay& assay, int j) {
  require(j >= 0 && j < x0.num_compounds(), "compound index out of range");
  return exact_theta_hat_all(exact_posterior(x0, hyper), assay)[j];
}

double exact_pel2(const ExactPosterior& posterior, const InformerAssay& assay,
                  int n_top) {
  return top_set_loss(exact_theta_hat_all(posterior, assay), n_top);
}

double exact_p_xa(const ExactPosterior& posterior,
                  const InformerAssay& assay) {
  double mass = 0.0;
  for (std::size_t t = 0; t < posterior.clusterings.size(); ++t)
    mass += posterior.probs[t] *
            p_xa_given_x0(posterior.clusterings[t], assay);
  return mass;
}

double exact_pel1(const ExactPosterior& posterior,
                  std::span<const int> informers, int n_top) {
  require(!posterior.clusterings.empty(), "posterior is empty");
  const int n_a = static_cast<int>(informers.size());
  require(n_a <= kMaxEnumeratedInformers,
          "outcome enumeration guarded at |A| <= 12");
  InformerAssay assay;
  assay.informers.assign(informers.begin(), informers.end());
  assay.outcomes.resize(informers.size());
  double acc = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n_a); ++bits) {
    for (int t = 0; t < n_a; ++t)
      assay.outcomes[t] = (bits >> t) & 1 ? 1 : 0;
    const double mass = exact_p_xa(posterior, assay);
    if (mass == 0.0) continue;
    acc += mass * exact_pel2(posterior, assay, n_top);
  }
  return acc;
}

double exact_pel1(const BioactivityMatrix& x0, const Hyperparams& hyper,
                  std::span<const int> informers, int n_top) {
  return exact_pel1(exact_posterior(x0, hyper), informers, n_top);
}

std::vector<double> no_cluster_theta(const BioactivityMatrix& x0, double alpha,
                                     double beta, const InformerAssay& assay) {
  require(alpha > 0 && beta > 0, "Beta hyperparameters must be positive");
  require(x0.fully_observed(), "the clustering-free model expects complete data");
  assay.validate(x0.num_compounds());
  const int m = x0.num_targets();
  const std::vector<int> sums = x0.column_sums();
  std::vector<double> theta(x0.num_compounds());
  for (int j = 0; j < x0.num_compounds(); ++j)
    theta[j] = (alpha + sums[j]) / (alpha + beta + m);
  for (std::size_t t = 0; t < assay.informers.size(); ++t) {
    const int j = assay.informers[t];
    theta[j] = (alpha + sums[j] + assay.outcomes[t]) / (alpha + beta + m + 1);
  }
  return theta;
}

double no_cluster_pel1(const BioactivityMatrix& x0, double alpha, double beta,
                       std::span<const int> informers, int n_top) {
  require(alpha > 0 && beta > 0, "Beta hyperparameters must be positive");
  require(x0.fully_observed(), "the clustering-free model expects complete data");
  const int n_a = static_cast<int>(informers.size());
  require(n_a <= kMaxEnumeratedInformers,
          "outcome enumeration guarded at |A| <= 12");
  const int m = x0.num_targets();
  const std::vector<int> sums = x0.column_sums();

  InformerAssay assay;
  assay.informers.assign(informers.begin(), informers.end());
  assay.outcomes.resize(informers.size());
  double acc = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n_a); ++bits) {
    double mass = 1.0;
    for (int t = 0; t < n_a; ++t) {
      const std::uint8_t outcome = (bits >> t) & 1 ? 1 : 0;
      assay.outcomes[t] = outcome;
      // Predictive mass of one informer outcome is its posterior mean;
      // outcomes are independent across compounds in this model.
      const double rate = (alpha + sums[informers[t]]) / (alpha + beta + m);
      mass *= outcome ? rate : 1.0 - rate;
    }
    acc += mass * top_set_loss(no_cluster_theta(x0, alpha, beta, assay), n_top);
  }
  return acc;
}

}  // namespace boise::oracle
