#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "boise/metrics.hpp"
#include "boise/selector.hpp"

namespace boise {

enum class CvMethod { GreedyPel, Entropy, FrequentHitters, RandomInformers };

std::string cv_method_name(CvMethod method);
std::optional<CvMethod> cv_method_from_name(const std::string& name);

struct CvConfig {
  int n_informers = 8;
  int n_top = 36;
  std::vector<CvMethod> methods{CvMethod::GreedyPel};
  SamplerConfig sampler;
  Pel1Config pel;
  std::optional<Hyperparams> hyper;  // empirical Bayes per fold when unset
  std::uint64_t seed = 0;
  int replicates = 1;  // independent seeds per fold
  int threads = 1;
};

struct FoldResult {
  int target = 0;
  std::string target_id;
  int replicate = 0;
  CvMethod method = CvMethod::GreedyPel;
  std::vector<int> informers;
  bool metrics_defined = false;  // false on single-class truth
  double nef10 = 0.0;
  double rocauc = 0.0;
  double mcc = 0.0;
  double f1 = 0.0;
  double select_seconds = 0.0;
};

/// View of the held-out target's row that records which columns were read.
/// The selection and ranking path may only touch informer columns; the
/// harness asserts this before truth is revealed for scoring.
class HeldOutRow {
 public:
  HeldOutRow(const BioactivityMatrix& full, int target)
      : full_(full), target_(target) {}

  bool is_observed(int j) const {
    accessed_.insert(j);
    return full_.is_observed(target_, j);
  }
  int value(int j) const {
    accessed_.insert(j);
    return full_.value(target_, j);
  }
  const std::set<int>& accessed() const { return accessed_; }

 private:
  const BioactivityMatrix& full_;
  int target_;
  mutable std::set<int> accessed_;
};

/// Selects informers on the training matrix, reveals the held-out row at the
/// informer columns only, and ranks every compound. Exposed separately so
/// tests can audit the access log.
struct FoldRanking {
  std::vector<int> informers;
  std::vector<RankedCompound> ranking;
  double select_seconds = 0.0;
};
FoldRanking rank_for_fold(const BioactivityMatrix& training,
                          const PosteriorEnsemble& ensemble,
                          const HeldOutRow& held_out, CvMethod method,
                          const CvConfig& config, std::uint64_t fold_seed);

/// One leave-one-out fold: sample a posterior on the training rows, run
/// every configured method against the shared ensemble, and score each
/// ranking against the revealed row (observed cells only). Single-class
/// truth leaves the metrics undefined and the run continues.
std::vector<FoldResult> run_fold(const BioactivityMatrix& full, int target,
                                 int replicate, const CvConfig& config);

/// Full leave-one-out sweep over all targets and replicates. Folds may run
/// in parallel; each owns an RNG stream derived from (seed, fold, replicate).
std::vector<FoldResult> run_cv(const BioactivityMatrix& full,
                               const CvConfig& config);

void write_cv_csv(const std::vector<FoldResult>& results, int n_informers,
                  std::ostream& out);

}  // namespace boise
