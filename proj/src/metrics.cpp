#include "boise/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "boise/ranker.hpp"

namespace boise {

namespace {

struct TruthCounts {
  int n = 0;
  int actives = 0;
};

TruthCounts count_truth(std::span<const int> order,
                        std::span<const std::uint8_t> truth) {
  require(order.size() == truth.size(), "order and truth lengths differ");
  TruthCounts c;
  c.n = static_cast<int>(truth.size());
  for (auto t : truth) c.actives += t ? 1 : 0;
  return c;
}

}  // namespace

double ef10(std::span<const int> order, std::span<const std::uint8_t> truth) {
  const TruthCounts c = count_truth(order, truth);
  require(c.n >= 10, "EF10 needs at least 10 compounds");
  require(c.actives >= 1, "EF10 undefined without actives");
  const int top = c.n / 10;
  int hits = 0;
  for (int t = 0; t < top; ++t) hits += truth[order[t]] ? 1 : 0;
  const double top_rate = static_cast<double>(hits) / top;
  const double base_rate = static_cast<double>(c.actives) / c.n;
  return top_rate / base_rate;
}

double nef10(std::span<const int> order, std::span<const std::uint8_t> truth) {
  const TruthCounts c = count_truth(order, truth);
  require(c.n >= 10, "NEF10 needs at least 10 compounds");
  require(c.actives >= 1, "NEF10 undefined without actives");
  const int top = c.n / 10;
  const double base_rate = static_cast<double>(c.actives) / c.n;
  const double ef_max =
      (static_cast<double>(std::min(top, c.actives)) / top) / base_rate;
  require(ef_max > 1.0, "NEF10 degenerate: maximum EF equals the base EF");
  const double ef = ef10(order, truth);
  return (1.0 + (ef - 1.0) / (ef_max - 1.0)) / 2.0;
}

double rocauc(std::span<const double> scores,
              std::span<const std::uint8_t> truth) {
  require(scores.size() == truth.size(), "scores and truth lengths differ");
  int actives = 0;
  for (auto t : truth) actives += t ? 1 : 0;
  const int inactives = static_cast<int>(truth.size()) - actives;
  require(actives >= 1 && inactives >= 1,
          "ROCAUC undefined for single-class truth");

  const std::vector<int> order = rank_indices(scores);
  // Walk blocks of tied scores; within a block the curve is a straight
  // segment, so the block contributes its trapezoid.
  double area = 0.0;  // in units of (actives * inactives)
  double fp_before = 0.0;
  std::size_t pos = 0;
  while (pos < order.size()) {
    std::size_t end = pos;
    int tp_block = 0, fp_block = 0;
    while (end < order.size() && scores[order[end]] == scores[order[pos]]) {
      tp_block += truth[order[end]] ? 1 : 0;
      fp_block += truth[order[end]] ? 0 : 1;
      ++end;
    }
    area += tp_block * (fp_before + fp_block / 2.0);
    fp_before += fp_block;
    pos = end;
  }
  // Orient as P(active ranked above inactive): each active/inactive pair
  // counts 1 when concordant, 1/2 when tied.
  const double concordant =
      static_cast<double>(actives) * inactives - area;
  return concordant / (static_cast<double>(actives) * inactives);
}

namespace {

template <class Metric>
double best_prefix_split(std::span<const int> order,
                         std::span<const std::uint8_t> truth, Metric metric) {
  const TruthCounts c = count_truth(order, truth);
  require(c.actives >= 1 && c.actives < c.n,
          "split metrics undefined for single-class truth");
  double best = -std::numeric_limits<double>::infinity();
  int tp = 0;
  for (int prefix = 1; prefix <= c.n; ++prefix) {
    tp += truth[order[prefix - 1]] ? 1 : 0;
    const int fp = prefix - tp;
    const int fn = c.actives - tp;
    const int tn = c.n - prefix - fn;
    best = std::max(best, metric(tp, fp, fn, tn));
  }
  return best;
}

}  // namespace

double mcc_best_split(std::span<const int> order,
                      std::span<const std::uint8_t> truth) {
  return best_prefix_split(order, truth, [](int tp, int fp, int fn, int tn) {
    const double denom = std::sqrt(static_cast<double>(tp + fp)) *
                         std::sqrt(static_cast<double>(tp + fn)) *
                         std::sqrt(static_cast<double>(tn + fp)) *
                         std::sqrt(static_cast<double>(tn + fn));
    if (denom == 0.0) return 0.0;  // conventional score for degenerate cells
    return (static_cast<double>(tp) * tn - static_cast<double>(fp) * fn) /
           denom;
  });
}

double f1_best_split(std::span<const int> order,
                     std::span<const std::uint8_t> truth) {
  return best_prefix_split(order, truth, [](int tp, int fp, int fn, int) {
    const double denom = 2.0 * tp + fn + fp;
    if (denom == 0.0) return 0.0;
    return 2.0 * tp / denom;
  });
}

std::vector<int> frequent_hitters(const BioactivityMatrix& x0,
                                  int n_informers) {
  require(n_informers >= 0 && n_informers <= x0.num_compounds(),
          "informer count out of range");
  const std::vector<int> sums = x0.column_sums();
  std::vector<double> scores(sums.begin(), sums.end());
  return top_set(scores, n_informers);
}

}  // namespace boise
