#include "boise/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <string_view>

#include "json.hpp"

namespace boise {

namespace {

using nlohmann::json;

json ensemble_json(const PosteriorEnsemble& ensemble) {
  json j;
  j["format"] = "boise-ensemble";
  j["version"] = 1;
  j["seed"] = ensemble.seed;
  j["burn_in"] = ensemble.burn_in;
  j["thinning"] = ensemble.thinning;
  j["hyper"] = {{"m0", ensemble.hyper.m0},
                {"alpha0", ensemble.hyper.alpha0},
                {"beta0", ensemble.hyper.beta0}};
  json samples = json::array();
  for (const Clustering& c : ensemble.samples) samples.push_back(c.labels());
  j["samples"] = std::move(samples);
  j["trace"] = ensemble.cluster_count_trace;
  return j;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write file: " + path);
  out << body;
  require(out.good(), "write failed: " + path);
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

std::string ensemble_to_json(const PosteriorEnsemble& ensemble) {
  return ensemble_json(ensemble).dump(2) + "\n";
}

void save_ensemble(const PosteriorEnsemble& ensemble,
                   const std::string& path) {
  write_file(path, ensemble_to_json(ensemble));
}

PosteriorEnsemble load_ensemble(const std::string& path,
                                const BioactivityMatrix& x0) {
  const json j = parse_file(path);
  try {
    require(j.at("format") == "boise-ensemble",
            "not an ensemble file: " + path);
    PosteriorEnsemble ensemble;
    ensemble.seed = j.at("seed").get<std::uint64_t>();
    ensemble.burn_in = j.at("burn_in").get<int>();
    ensemble.thinning = j.at("thinning").get<int>();
    const json& h = j.at("hyper");
    ensemble.hyper = Hyperparams{h.at("m0").get<double>(),
                                 h.at("alpha0").get<double>(),
                                 h.at("beta0").get<double>()};
    ensemble.hyper.validate();
    for (const json& labels : j.at("samples"))
      ensemble.samples.push_back(Clustering::from_labels(
          x0, labels.get<std::vector<int>>(), ensemble.hyper));
    require(!ensemble.samples.empty(), "ensemble file has no samples");
    ensemble.cluster_count_trace =
        j.at("trace").get<std::vector<int>>();
    return ensemble;
  } catch (const json::exception& e) {
    fail("malformed ensemble file " + path + ": " + e.what());
  }
}

std::string selection_report_to_json(const SelectionReport& report) {
  json j;
  j["format"] = "boise-selection";
  j["version"] = 1;
  j["method"] = report.method;
  j["n_a"] = report.n_informers;
  j["n_t"] = report.n_top;
  j["seed"] = report.seed;
  j["informers"] = report.result.informers;
  json scores = json::array();
  for (const SelectionStep& s : report.result.steps) scores.push_back(s.score);
  j["step_scores"] = std::move(scores);
  j["monotone"] = report.monotone;
  return j.dump(2) + "\n";
}

void save_selection_report(const SelectionReport& report,
                           const std::string& path) {
  write_file(path, selection_report_to_json(report));
}

std::vector<int> load_informers(const std::string& path) {
  const json j = parse_file(path);
  try {
    require(j.at("format") == "boise-selection",
            "not a selection report: " + path);
    return j.at("informers").get<std::vector<int>>();
  } catch (const json::exception& e) {
    fail("malformed selection report " + path + ": " + e.what());
  }
}

void write_ranking_csv(const std::vector<RankedCompound>& ranking,
                       const BioactivityMatrix& x0, std::ostream& out) {
  char buf[64];
  out << "compound,score,rank,informer\n";
  int rank = 1;
  for (const RankedCompound& r : ranking) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r.score);
    out << x0.compound_id(r.compound) << ','
        << std::string_view(buf, ptr - buf) << ',' << rank++ << ','
        << (r.informer ? 1 : 0) << '\n';
  }
}

void write_trace_csv(const PosteriorEnsemble& ensemble, std::ostream& out) {
  out << "sweep,clusters\n";
  for (std::size_t s = 0; s < ensemble.cluster_count_trace.size(); ++s)
    out << (s + 1) << ',' << ensemble.cluster_count_trace[s] << '\n';
}

}  // namespace boise
