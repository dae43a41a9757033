#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "boise/dpmm.hpp"
#include "boise/ranker.hpp"
#include "boise/selector.hpp"

namespace boise {

/// Ensemble file schema: format tag, hyperparameters, sampler metadata,
/// canonical labels per sample, and the cluster-count trace.
std::string ensemble_to_json(const PosteriorEnsemble& ensemble);
void save_ensemble(const PosteriorEnsemble& ensemble, const std::string& path);

/// Rebuilds count caches against x0; validates shape and format.
PosteriorEnsemble load_ensemble(const std::string& path,
                                const BioactivityMatrix& x0);

struct SelectionReport {
  std::string method;
  int n_informers = 0;
  int n_top = 0;
  std::uint64_t seed = 0;
  SelectionResult result;
  bool monotone = true;  // per-step objective never increased
};

std::string selection_report_to_json(const SelectionReport& report);
void save_selection_report(const SelectionReport& report,
                           const std::string& path);
std::vector<int> load_informers(const std::string& path);

void write_ranking_csv(const std::vector<RankedCompound>& ranking,
                       const BioactivityMatrix& x0, std::ostream& out);

void write_trace_csv(const PosteriorEnsemble& ensemble, std::ostream& out);

}  // namespace boise
