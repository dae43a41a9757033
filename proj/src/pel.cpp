#include "boise/pel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "boise/ranker.hpp"

namespace boise {

void InformerAssay::validate(int num_compounds) const {
  require(informers.size() == outcomes.size(),
          "informer and outcome lengths differ");
  std::unordered_set<int> seen;
  for (int j : informers) {
    require(j >= 0 && j < num_compounds, "informer index out of range");
    require(seen.insert(j).second, "duplicate informer index");
  }
  for (auto o : outcomes) require(o <= 1, "outcomes must be 0 or 1");
}

namespace {

// Log weights (unnormalized) of the link distribution; slot 0 is the new
// cluster with mass m0 and prior rates.
void link_log_weights(const Clustering& c, const InformerAssay& assay,
                      std::vector<double>& logw) {
  const Hyperparams& h = c.hyper();
  const int K = c.num_clusters();
  logw.resize(K + 1);
  const double p1_new = h.alpha0 / (h.alpha0 + h.beta0);
  double lw0 = std::log(h.m0);
  for (std::size_t t = 0; t < assay.informers.size(); ++t)
    lw0 += assay.outcomes[t] ? std::log(p1_new) : std::log(1.0 - p1_new);
  logw[0] = lw0;
  for (int k = 0; k < K; ++k) {
    double lw = std::log(static_cast<double>(c.cluster_size(k)));
    for (std::size_t t = 0; t < assay.informers.size(); ++t) {
      const int j = assay.informers[t];
      const double a = c.a(k, j);
      const double b = c.b(k, j);
      lw += assay.outcomes[t] ? std::log(a / (a + b)) : std::log(b / (a + b));
    }
    logw[k + 1] = lw;
  }
}

std::string outcome_string(const InformerAssay& assay) {
  std::string s;
  s.reserve(assay.outcomes.size());
  for (auto o : assay.outcomes) s.push_back(o ? '1' : '0');
  return s;
}

}  // namespace

LinkDistribution link_distribution(const Clustering& clustering,
                                   const InformerAssay& assay) {
  assay.validate(clustering.num_compounds());
  std::vector<double> logw;
  link_log_weights(clustering, assay, logw);
  const double lse = log_sum_exp(logw);
  require(std::isfinite(lse), "link distribution underflowed to zero");
  LinkDistribution dist;
  dist.p.resize(logw.size());
  for (std::size_t k = 0; k < logw.size(); ++k)
    dist.p[k] = std::exp(logw[k] - lse);
  return dist;
}

namespace {

// Draw the link under CR_{m+1}: cluster k with m_k/(m+m0), new with
// m0/(m+m0). Returns -1 for the new cluster.
int draw_link(const Clustering& c, Rng& rng) {
  const double m0 = c.hyper().m0;
  const double total = c.num_targets() + m0;
  const double u = rng.uniform() * total;
  double cum = 0.0;
  for (int k = 0; k < c.num_clusters(); ++k) {
    cum += c.cluster_size(k);
    if (u < cum) return k;
  }
  return -1;
}

double link_rate(const Clustering& c, int link, int j) {
  if (link < 0) {
    const Hyperparams& h = c.hyper();
    return h.alpha0 / (h.alpha0 + h.beta0);
  }
  const double a = c.a(link, j);
  return a / (a + c.b(link, j));
}

}  // namespace

std::vector<std::uint8_t> sample_intermediate(const Clustering& clustering,
                                              std::span<const int> informers,
                                              Rng& rng) {
  const int link = draw_link(clustering, rng);
  std::vector<std::uint8_t> out(informers.size());
  for (std::size_t t = 0; t < informers.size(); ++t)
    out[t] = rng.bernoulli(link_rate(clustering, link, informers[t])) ? 1 : 0;
  return out;
}

std::vector<std::uint8_t> sample_predictive_row(const Clustering& clustering,
                                                Rng& rng) {
  const int link = draw_link(clustering, rng);
  std::vector<std::uint8_t> row(clustering.num_compounds());
  for (int j = 0; j < clustering.num_compounds(); ++j)
    row[j] = rng.bernoulli(link_rate(clustering, link, j)) ? 1 : 0;
  return row;
}

namespace {

std::vector<double> theta_tilde_from_link(const Clustering& c,
                                          const InformerAssay& assay,
                                          const LinkDistribution& link) {
  const Hyperparams& h = c.hyper();
  const int n = c.num_compounds();
  const int K = c.num_clusters();
  // Outcome lookup for informer columns: -1 when j is not an informer.
  std::vector<int> informer_outcome(n, -1);
  for (std::size_t t = 0; t < assay.informers.size(); ++t)
    informer_outcome[assay.informers[t]] = assay.outcomes[t];

  std::vector<double> theta(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const int x = informer_outcome[j];
    const double bump = x >= 0 ? 1.0 : 0.0;
    const double add = x > 0 ? 1.0 : 0.0;
    double v = link.p[0] * (h.alpha0 + add) / (h.alpha0 + h.beta0 + bump);
    for (int k = 0; k < K; ++k) {
      const double a = c.a(k, j);
      const double b = c.b(k, j);
      v += link.p[k + 1] * (a + add) / (a + b + bump);
    }
    theta[j] = v;
  }
  return theta;
}

}  // namespace

std::vector<double> theta_tilde_all(const Clustering& clustering,
                                    const InformerAssay& assay) {
  return theta_tilde_from_link(clustering, assay,
                               link_distribution(clustering, assay));
}

double theta_tilde(const Clustering& clustering, const InformerAssay& assay,
                   int j) {
  require(j >= 0 && j < clustering.num_compounds(),
          "compound index out of range");
  return theta_tilde_all(clustering, assay)[j];
}

double log_p_xa_given_x0(const Clustering& clustering,
                         const InformerAssay& assay) {
  assay.validate(clustering.num_compounds());
  if (assay.empty()) return 0.0;  // the empty product has mass 1
  std::vector<double> logw;
  link_log_weights(clustering, assay, logw);
  // link_log_weights carries the unnormalized CR masses (m_k and m0); the
  // mixture weights m_k/(m+m0) share the denominator, so normalize here.
  const double log_denom =
      std::log(clustering.num_targets() + clustering.hyper().m0);
  return log_sum_exp(logw) - log_denom;
}

double p_xa_given_x0(const Clustering& clustering, const InformerAssay& assay) {
  return std::exp(log_p_xa_given_x0(clustering, assay));
}

std::vector<double> theta_hat_all(const PosteriorEnsemble& ensemble,
                                  const InformerAssay& assay) {
  const std::size_t count = ensemble.samples.size();
  require(count > 0, "ensemble is empty");
  std::vector<double> logp(count);
  for (std::size_t s = 0; s < count; ++s)
    logp[s] = log_p_xa_given_x0(ensemble.samples[s], assay);
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logp) mx = std::max(mx, v);
  if (!std::isfinite(mx))
    fail("outcome " + outcome_string(assay) +
         " has zero estimated mass under every ensemble sample");

  const int n = ensemble.samples.front().num_compounds();
  std::vector<double> acc(n, 0.0);
  double total_weight = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    const double w = std::exp(logp[s] - mx);
    if (w == 0.0) continue;
    total_weight += w;
    const std::vector<double> tilde =
        theta_tilde_all(ensemble.samples[s], assay);
    for (int j = 0; j < n; ++j) acc[j] += w * tilde[j];
  }
  require(total_weight > 0.0, "self-normalizing weights vanished");
  for (double& v : acc) v /= total_weight;
  return acc;
}

double theta_hat(const PosteriorEnsemble& ensemble, const InformerAssay& assay,
                 int j) {
  const auto all = theta_hat_all(ensemble, assay);
  require(j >= 0 && j < static_cast<int>(all.size()),
          "compound index out of range");
  return all[j];
}

double pel2(const PosteriorEnsemble& ensemble, const InformerAssay& assay,
            int n_top) {
  const std::vector<double> theta = theta_hat_all(ensemble, assay);
  return top_set_loss(theta, n_top);
}

double pel1(const PosteriorEnsemble& ensemble, std::span<const int> informers,
            int n_top, std::uint64_t seed, const Pel1Config& config) {
  require(config.draws_per_sample >= 1, "draws_per_sample must be >= 1");
  InformerAssay assay;
  assay.informers.assign(informers.begin(), informers.end());
  if (informers.empty()) {
    // No intermediate data: a single empty outcome with mass 1.
    return pel2(ensemble, assay, n_top);
  }
  // Pool one (or more) predictive draws per ensemble member, then score each
  // distinct outcome once and average with multiplicity weights.
  Rng rng(seed);
  std::map<std::vector<std::uint8_t>, int> outcome_counts;
  for (const Clustering& c : ensemble.samples)
    for (int d = 0; d < config.draws_per_sample; ++d)
      ++outcome_counts[sample_intermediate(c, informers, rng)];

  const double total = static_cast<double>(ensemble.samples.size()) *
                       config.draws_per_sample;
  double acc = 0.0;
  for (const auto& [outcome, count] : outcome_counts) {
    assay.outcomes = outcome;
    acc += (count / total) * pel2(ensemble, assay, n_top);
  }
  return acc;
}

}  // namespace boise
