#include "boise/dpmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace boise {

Clustering Clustering::from_labels(const BioactivityMatrix& x0,
                                   std::vector<int> labels,
                                   const Hyperparams& hyper) {
  const int m = x0.num_targets();
  require(static_cast<int>(labels.size()) == m,
          "label vector length must equal the number of targets");
  int num_clusters = 0;
  for (int l : labels) {
    require(l >= 0, "cluster labels must be non-negative");
    num_clusters = std::max(num_clusters, l + 1);
  }
  Clustering c(hyper, x0.num_compounds());
  c.labels_ = std::move(labels);
  c.sizes_.assign(num_clusters, 0);
  c.actives_.assign(static_cast<std::size_t>(num_clusters) * c.n_, 0);
  c.observed_.assign(static_cast<std::size_t>(num_clusters) * c.n_, 0);
  for (int i = 0; i < m; ++i) {
    ++c.sizes_[c.labels_[i]];
    c.add_counts(i, c.labels_[i], x0, +1);
  }
  for (int k = 0; k < num_clusters; ++k)
    require(c.sizes_[k] > 0, "cluster ids must be contiguous and non-empty");
  return c;
}

Clustering Clustering::single_cluster(const BioactivityMatrix& x0,
                                      const Hyperparams& hyper) {
  return from_labels(x0, std::vector<int>(x0.num_targets(), 0), hyper);
}

Clustering Clustering::singletons(const BioactivityMatrix& x0,
                                  const Hyperparams& hyper) {
  std::vector<int> labels(x0.num_targets());
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(x0, std::move(labels), hyper);
}

void Clustering::add_counts(int i, int k, const BioactivityMatrix& x0,
                            int sign) {
  for (int j = 0; j < n_; ++j)
    if (x0.is_observed(i, j)) {
      actives_[cell(k, j)] += sign * x0.value(i, j);
      observed_[cell(k, j)] += sign;
    }
}

void Clustering::detach_target(int i, const BioactivityMatrix& x0) {
  const int k = labels_[i];
  require(k >= 0, "target already detached");
  labels_[i] = -1;
  --sizes_[k];
  add_counts(i, k, x0, -1);
  if (sizes_[k] == 0) {
    const int last = num_clusters() - 1;
    if (k != last) {
      sizes_[k] = sizes_[last];
      std::copy_n(actives_.begin() + cell(last, 0), n_,
                  actives_.begin() + cell(k, 0));
      std::copy_n(observed_.begin() + cell(last, 0), n_,
                  observed_.begin() + cell(k, 0));
      for (int& l : labels_)
        if (l == last) l = k;
    }
    sizes_.pop_back();
    actives_.resize(actives_.size() - n_);
    observed_.resize(observed_.size() - n_);
  }
}

void Clustering::attach_target(int i, int k, const BioactivityMatrix& x0) {
  require(labels_[i] == -1, "target already attached");
  require(k >= 0 && k <= num_clusters(), "cluster index out of range");
  if (k == num_clusters()) {
    sizes_.push_back(0);
    actives_.resize(actives_.size() + n_, 0);
    observed_.resize(observed_.size() + n_, 0);
  }
  labels_[i] = k;
  ++sizes_[k];
  add_counts(i, k, x0, +1);
}

void Clustering::canonicalize() {
  const int K = num_clusters();
  std::vector<int> new_id(K, -1);
  int next = 0;
  for (int l : labels_)
    if (new_id[l] == -1) new_id[l] = next++;
  require(next == K, "clustering has an empty cluster");
  std::vector<int> sizes(K);
  std::vector<int> actives(actives_.size()), observed(observed_.size());
  for (int k = 0; k < K; ++k) {
    const int t = new_id[k];
    sizes[t] = sizes_[k];
    std::copy_n(actives_.begin() + cell(k, 0), n_, actives.begin() + cell(t, 0));
    std::copy_n(observed_.begin() + cell(k, 0), n_,
                observed.begin() + cell(t, 0));
  }
  for (int& l : labels_) l = new_id[l];
  sizes_ = std::move(sizes);
  actives_ = std::move(actives);
  observed_ = std::move(observed);
}

Clustering Clustering::canonicalized() const {
  Clustering copy = *this;
  copy.canonicalize();
  return copy;
}

bool Clustering::counts_match(const BioactivityMatrix& x0) const {
  Clustering fresh = from_labels(x0, labels_, hyper_);
  return fresh.sizes_ == sizes_ && fresh.actives_ == actives_ &&
         fresh.observed_ == observed_;
}

double cr_log_prior(std::span<const int> cluster_sizes, double m0) {
  require(m0 > 0, "prior mass must be positive");
  int m = 0;
  double lp = std::lgamma(m0);
  for (int mk : cluster_sizes) {
    require(mk > 0, "cluster sizes must be positive");
    m += mk;
    lp += std::log(m0) + std::lgamma(static_cast<double>(mk));
  }
  require(m > 0, "partition must be non-empty");
  return lp - std::lgamma(m + m0);
}

double cr_log_prior(const Clustering& clustering, double m0) {
  std::vector<int> sizes(clustering.num_clusters());
  for (int k = 0; k < clustering.num_clusters(); ++k)
    sizes[k] = clustering.cluster_size(k);
  return cr_log_prior(sizes, m0);
}

double cr_prior_expected_clusters(int num_targets, double m0) {
  double e = 0.0;
  for (int i = 0; i < num_targets; ++i) e += m0 / (m0 + i);
  return e;
}

namespace {

// Unnormalized log weights of the full conditional for target i, with i
// detached: size weight times the Beta-Bernoulli predictive of row i over
// observed cells (Eq. with a/(a+b) per cell), plus the new-cluster entry
// weighted by m0 under the prior predictive.
void conditional_log_weights(const Clustering& without_i,
                             const BioactivityMatrix& x0, int i,
                             std::vector<double>& logw) {
  const Hyperparams& h = without_i.hyper();
  const int K = without_i.num_clusters();
  const int n = x0.num_compounds();
  logw.resize(K + 1);
  for (int k = 0; k < K; ++k) {
    double lw = std::log(static_cast<double>(without_i.cluster_size(k)));
    for (int j = 0; j < n; ++j) {
      if (!x0.is_observed(i, j)) continue;  // missing cells contribute 1
      const double a = without_i.a(k, j);
      const double b = without_i.b(k, j);
      lw += x0.value(i, j) ? std::log(a / (a + b)) : std::log(b / (a + b));
    }
    logw[k] = lw;
  }
  const double log_p1 = std::log(h.alpha0 / (h.alpha0 + h.beta0));
  const double log_p0 = std::log(h.beta0 / (h.alpha0 + h.beta0));
  double lw_new = std::log(h.m0);
  for (int j = 0; j < n; ++j) {
    if (!x0.is_observed(i, j)) continue;
    lw_new += x0.value(i, j) ? log_p1 : log_p0;
  }
  logw[K] = lw_new;
}

}  // namespace

std::vector<double> gibbs_conditional(const Clustering& without_i,
                                      const BioactivityMatrix& x0, int i) {
  std::vector<double> logw;
  conditional_log_weights(without_i, x0, i, logw);
  const double lse = log_sum_exp(logw);
  require(std::isfinite(lse), "gibbs conditional underflowed to zero");
  for (double& w : logw) w = std::exp(w - lse);
  return logw;
}

namespace {

// One full sweep: every target gets a collapsed Gibbs update in index order.
void gibbs_sweep(Clustering& state, const BioactivityMatrix& x0, Rng& rng,
                 std::vector<double>& logw) {
  for (int i = 0; i < x0.num_targets(); ++i) {
    state.detach_target(i, x0);
    conditional_log_weights(state, x0, i, logw);
    state.attach_target(i, rng.categorical_log(logw), x0);
  }
}

}  // namespace

PosteriorEnsemble sample_posterior(const BioactivityMatrix& x0,
                                   const Hyperparams& hyper,
                                   const SamplerConfig& config) {
  hyper.validate();
  config.validate();
  Clustering state = config.init == SamplerConfig::Init::SingleCluster
                         ? Clustering::single_cluster(x0, hyper)
                         : Clustering::singletons(x0, hyper);
  Rng rng(config.seed);
  PosteriorEnsemble ensemble;
  ensemble.hyper = hyper;
  ensemble.seed = config.seed;
  ensemble.burn_in = config.burn_in;
  ensemble.thinning = config.thinning;
  ensemble.samples.reserve(config.samples);
  const int total_sweeps = config.burn_in + config.samples * config.thinning;
  ensemble.cluster_count_trace.reserve(total_sweeps);

  std::vector<double> logw;
  for (int sweep = 1; sweep <= total_sweeps; ++sweep) {
    gibbs_sweep(state, x0, rng, logw);
    ensemble.cluster_count_trace.push_back(state.num_clusters());
    if (config.check_counts_each_sweep)
      require(state.counts_match(x0), "count cache lost coherence");
    if (sweep > config.burn_in &&
        (sweep - config.burn_in) % config.thinning == 0)
      ensemble.samples.push_back(state.canonicalized());
  }
  return ensemble;
}

Hyperparams choose_hyperparams(const BioactivityMatrix& x0,
                               std::span<const double> m0_grid,
                               const SamplerConfig& pilot) {
  require(!m0_grid.empty(), "m0 grid must be non-empty");
  const double mean = x0.observed_mean();
  if (mean == 0.0 || mean == 1.0)
    fail("degenerate data: all observed entries are equal, "
         "empirical alpha0 would be 0 or 1");
  Hyperparams best;
  best.alpha0 = mean;
  best.beta0 = 1.0 - mean;
  double best_gap = std::numeric_limits<double>::infinity();
  double best_m0 = m0_grid[0];
  for (std::size_t g = 0; g < m0_grid.size(); ++g) {
    Hyperparams h{m0_grid[g], mean, 1.0 - mean};
    SamplerConfig cfg = pilot;
    cfg.seed = mix_seed(pilot.seed, 0xE11, g);
    PosteriorEnsemble pilot_run = sample_posterior(x0, h, cfg);
    double post_k = 0.0;
    for (const Clustering& c : pilot_run.samples) post_k += c.num_clusters();
    post_k /= static_cast<double>(pilot_run.samples.size());
    const double prior_k =
        cr_prior_expected_clusters(x0.num_targets(), m0_grid[g]);
    const double gap = std::abs(prior_k - post_k);
    if (gap < best_gap) {
      best_gap = gap;
      best_m0 = m0_grid[g];
    }
  }
  best.m0 = best_m0;
  return best;
}

Hyperparams choose_hyperparams(const BioactivityMatrix& x0) {
  SamplerConfig pilot;
  pilot.samples = 40;
  pilot.thinning = 5;
  pilot.burn_in = 200;
  pilot.seed = 0;
  return choose_hyperparams(x0, default_m0_grid(), pilot);
}

}  // namespace boise
