#include "boise/cv.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>

#include "boise/ranker.hpp"

namespace boise {

std::string cv_method_name(CvMethod method) {
  switch (method) {
    case CvMethod::GreedyPel: return "greedy";
    case CvMethod::Entropy: return "entropy";
    case CvMethod::FrequentHitters: return "frequent-hitters";
    case CvMethod::RandomInformers: return "random";
  }
  fail("unknown cv method");
}

std::optional<CvMethod> cv_method_from_name(const std::string& name) {
  if (name == "greedy") return CvMethod::GreedyPel;
  if (name == "entropy") return CvMethod::Entropy;
  if (name == "frequent-hitters") return CvMethod::FrequentHitters;
  if (name == "random") return CvMethod::RandomInformers;
  return std::nullopt;
}

namespace {

std::vector<int> random_informers(int num_compounds, int n_informers,
                                  Rng& rng) {
  // Partial Fisher-Yates over the compound indices.
  std::vector<int> pool(num_compounds);
  std::iota(pool.begin(), pool.end(), 0);
  for (int t = 0; t < n_informers; ++t) {
    const int pick = t + rng.uniform_below(num_compounds - t);
    std::swap(pool[t], pool[pick]);
  }
  pool.resize(n_informers);
  return pool;
}

}  // namespace

FoldRanking rank_for_fold(const BioactivityMatrix& training,
                          const PosteriorEnsemble& ensemble,
                          const HeldOutRow& held_out, CvMethod method,
                          const CvConfig& config, std::uint64_t fold_seed) {
  using clock = std::chrono::steady_clock;
  FoldRanking out;

  const auto start = clock::now();
  switch (method) {
    case CvMethod::GreedyPel:
    case CvMethod::Entropy: {
      SelectionConfig sel;
      sel.n_informers = config.n_informers;
      sel.n_top = config.n_top;
      sel.method = method == CvMethod::GreedyPel ? SelectionMethod::GreedyPel
                                                 : SelectionMethod::Entropy;
      sel.seed = mix_seed(fold_seed, 0x5E1);
      sel.threads = config.threads;
      sel.pel = config.pel;
      out.informers = select_informers(ensemble, sel).informers;
      break;
    }
    case CvMethod::FrequentHitters:
      out.informers = frequent_hitters(training, config.n_informers);
      break;
    case CvMethod::RandomInformers: {
      Rng rng(mix_seed(fold_seed, 0xF0));
      out.informers =
          random_informers(training.num_compounds(), config.n_informers, rng);
      break;
    }
  }
  out.select_seconds =
      std::chrono::duration<double>(clock::now() - start).count();

  // Reveal the held-out row at the informer columns only. Informers whose
  // held-out entry is missing contribute no intermediate data.
  InformerAssay assay;
  for (int j : out.informers) {
    if (!held_out.is_observed(j)) continue;
    assay.informers.push_back(j);
    assay.outcomes.push_back(static_cast<std::uint8_t>(held_out.value(j)));
  }
  out.ranking = rank_all(ensemble, assay);
  return out;
}

std::vector<FoldResult> run_fold(const BioactivityMatrix& full, int target,
                                 int replicate, const CvConfig& config) {
  const BioactivityMatrix training = full.without_target(target);
  const std::uint64_t fold_seed =
      mix_seed(config.seed, 0xF01D, static_cast<std::uint64_t>(target),
               static_cast<std::uint64_t>(replicate));

  Hyperparams hyper;
  if (config.hyper) {
    hyper = *config.hyper;
  } else {
    SamplerConfig pilot;
    pilot.samples = 30;
    pilot.thinning = 3;
    pilot.burn_in = 100;
    pilot.seed = mix_seed(fold_seed, 0x9111);
    hyper = choose_hyperparams(training, default_m0_grid(), pilot);
  }
  SamplerConfig sampler = config.sampler;
  sampler.seed = mix_seed(fold_seed, 0x5A);
  const PosteriorEnsemble ensemble =
      sample_posterior(training, hyper, sampler);

  std::vector<FoldResult> results;
  for (CvMethod method : config.methods) {
    HeldOutRow held_out(full, target);
    FoldRanking fold =
        rank_for_fold(training, ensemble, held_out, method, config, fold_seed);

    // Leakage guard: nothing outside the informer columns may have been
    // read before truth is revealed below.
    for (int j : held_out.accessed())
      require(std::find(fold.informers.begin(), fold.informers.end(), j) !=
                  fold.informers.end(),
              "leakage: held-out column " + std::to_string(j) +
                  " read outside the informer set");

    FoldResult r;
    r.target = target;
    r.target_id = full.target_id(target);
    r.replicate = replicate;
    r.method = method;
    r.informers = fold.informers;
    r.select_seconds = fold.select_seconds;

    // Truth: the fully revealed row, restricted to observed cells.
    std::vector<int> order;
    std::vector<std::uint8_t> truth;
    std::vector<double> scores;
    std::vector<int> col_of;  // compact index per observed column
    col_of.assign(full.num_compounds(), -1);
    int next = 0;
    for (int j = 0; j < full.num_compounds(); ++j)
      if (full.is_observed(target, j)) {
        col_of[j] = next++;
        truth.push_back(static_cast<std::uint8_t>(full.value(target, j)));
      }
    scores.resize(next);
    for (const RankedCompound& rc : fold.ranking)
      if (col_of[rc.compound] >= 0) {
        order.push_back(col_of[rc.compound]);
        scores[col_of[rc.compound]] = rc.score;
      }

    try {
      r.nef10 = nef10(order, truth);
      r.rocauc = rocauc(scores, truth);
      r.mcc = mcc_best_split(order, truth);
      r.f1 = f1_best_split(order, truth);
      r.metrics_defined = true;
    } catch (const Error&) {
      r.metrics_defined = false;  // single-class or degenerate truth
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<FoldResult> run_cv(const BioactivityMatrix& full,
                               const CvConfig& config) {
  require(config.replicates >= 1, "need at least one replicate");
  const int folds = full.num_targets();
  const int jobs = folds * config.replicates;
  std::vector<std::vector<FoldResult>> per_job(jobs);
  parallel_for(jobs, config.threads, [&](int job) {
    const int target = job % folds;
    const int replicate = job / folds;
    CvConfig fold_config = config;
    fold_config.threads = 1;  // fold-level parallelism only
    per_job[job] = run_fold(full, target, replicate, fold_config);
  });
  std::vector<FoldResult> results;
  for (auto& job : per_job)
    for (auto& r : job) results.push_back(std::move(r));
  return results;
}

void write_cv_csv(const std::vector<FoldResult>& results, int n_informers,
                  std::ostream& out) {
  out << "target,method,replicate,n_a,nef10,rocauc,mcc,f1,select_seconds\n";
  for (const FoldResult& r : results) {
    out << r.target_id << ',' << cv_method_name(r.method) << ','
        << r.replicate << ',' << n_informers << ',';
    if (r.metrics_defined)
      out << r.nef10 << ',' << r.rocauc << ',' << r.mcc << ',' << r.f1;
    else
      out << "NA,NA,NA,NA";
    out << ',' << r.select_seconds << '\n';
  }
}

}  // namespace boise
