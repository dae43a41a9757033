// boise: informer-set selection and compound ranking from bioactivity
// matrices. Subcommands: binarize, sample, select, rank, cv.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "boise/cv.hpp"
#include "boise/io.hpp"
#include "boise/oracle.hpp"

namespace {

using namespace boise;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write file: " + path);
  return out;
}

std::vector<std::uint8_t> parse_bits(const std::string& csv) {
  std::vector<std::uint8_t> bits;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell == "0")
      bits.push_back(0);
    else if (cell == "1")
      bits.push_back(1);
    else
      fail("outcomes must be a comma-separated list of 0/1, got '" + cell +
           "'");
  }
  return bits;
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      vals.push_back(std::stod(cell));
    } catch (const std::exception&) {
      fail("expected a comma-separated list of numbers, got '" + cell + "'");
    }
  }
  return vals;
}

struct HyperFlags {
  std::optional<double> m0, alpha0, beta0;

  // Fills unspecified fields by empirical Bayes: alpha0 = observed mean,
  // beta0 = 1 - alpha0, m0 by the prior/posterior cluster-count match.
  Hyperparams resolve(const BioactivityMatrix& x0, std::uint64_t seed) const {
    Hyperparams h;
    if (alpha0) {
      h.alpha0 = *alpha0;
      h.beta0 = beta0 ? *beta0 : 1.0 - *alpha0;
    } else {
      const double mean = x0.observed_mean();
      require(mean > 0.0 && mean < 1.0,
              "degenerate data: supply --alpha0/--beta0 explicitly");
      h.alpha0 = mean;
      h.beta0 = beta0 ? *beta0 : 1.0 - mean;
    }
    if (m0) {
      h.m0 = *m0;
    } else {
      SamplerConfig pilot;
      pilot.samples = 40;
      pilot.thinning = 5;
      pilot.burn_in = 200;
      pilot.seed = mix_seed(seed, 0x9111);
      Hyperparams searched = choose_hyperparams(x0, default_m0_grid(), pilot);
      h.m0 = searched.m0;
      std::cerr << "empirical Bayes: m0=" << h.m0 << " alpha0=" << h.alpha0
                << " beta0=" << h.beta0 << "\n";
    }
    h.validate();
    return h;
  }
};

void add_hyper_flags(CLI::App* cmd, HyperFlags& flags) {
  cmd->add_option("--m0", flags.m0, "prior mass (default: empirical Bayes)");
  cmd->add_option("--alpha0", flags.alpha0,
                  "Beta prior alpha (default: observed activity mean)");
  cmd->add_option("--beta0", flags.beta0,
                  "Beta prior beta (default: 1 - alpha0)");
}

int run(int argc, char** argv) {
  CLI::App app{"Informer-set selection and compound ranking"};
  app.require_subcommand(1);

  // ---- binarize ----
  auto* binarize = app.add_subcommand(
      "binarize", "Threshold a continuous matrix to binary activity calls");
  std::string bin_input, bin_output, bin_missing = "NA", bin_rule = "2sd";
  std::string bin_thresholds_out;
  double bin_zcut = -2.0;
  binarize->add_option("--input", bin_input, "continuous CSV")->required();
  binarize->add_option("--output", bin_output, "binary CSV out")->required();
  binarize->add_option("--missing", bin_missing, "missing-value token");
  binarize->add_option("--rule", bin_rule, "2sd or zscore")
      ->check(CLI::IsMember({"2sd", "zscore"}));
  binarize->add_option("--threshold", bin_zcut,
                       "z-score cut for --rule zscore (active iff z < cut)");
  binarize->add_option("--thresholds-out", bin_thresholds_out,
                       "CSV of per-target 2sd thresholds");

  // ---- sample ----
  auto* sample = app.add_subcommand(
      "sample", "Draw clusterings from the partition posterior");
  std::string smp_input, smp_output, smp_missing = "NA", smp_trace;
  HyperFlags smp_hyper;
  SamplerConfig smp_cfg;
  std::string smp_init = "single";
  sample->add_option("--input", smp_input, "binary CSV")->required();
  sample->add_option("--output", smp_output, "ensemble JSON out")->required();
  sample->add_option("--missing", smp_missing, "missing-value token");
  add_hyper_flags(sample, smp_hyper);
  sample->add_option("--samples", smp_cfg.samples, "kept clusterings");
  sample->add_option("--thin", smp_cfg.thinning, "sweeps between samples");
  sample->add_option("--burnin", smp_cfg.burn_in, "discarded initial sweeps");
  sample->add_option("--seed", smp_cfg.seed, "RNG seed");
  sample->add_option("--init", smp_init, "single or singletons")
      ->check(CLI::IsMember({"single", "singletons"}));
  sample->add_option("--trace", smp_trace, "cluster-count trace CSV out");

  // ---- select ----
  auto* select = app.add_subcommand("select", "Choose an informer set");
  std::string sel_input, sel_ensemble, sel_output, sel_missing = "NA";
  std::string sel_method = "greedy";
  SelectionConfig sel_cfg;
  sel_cfg.threads = static_cast<int>(std::thread::hardware_concurrency());
  select->add_option("--input", sel_input, "binary CSV")->required();
  select->add_option("--ensemble", sel_ensemble, "ensemble JSON")->required();
  select->add_option("--output", sel_output, "selection report JSON out")
      ->required();
  select->add_option("--missing", sel_missing, "missing-value token");
  select->add_option("--method", sel_method, "greedy or entropy")
      ->check(CLI::IsMember({"greedy", "entropy"}));
  select->add_option("--na", sel_cfg.n_informers, "informer-set size")
      ->required();
  select->add_option("--nt", sel_cfg.n_top, "top-set size")->required();
  select->add_option("--seed", sel_cfg.seed, "RNG seed");
  select->add_option("--threads", sel_cfg.threads, "candidate parallelism");
  select->add_option("--draws", sel_cfg.pel.draws_per_sample,
                     "predictive draws per ensemble member");

  // ---- rank ----
  auto* rank = app.add_subcommand(
      "rank", "Rank all compounds given informer outcomes");
  std::string rnk_input, rnk_ensemble, rnk_output, rnk_missing = "NA";
  std::string rnk_informers_file, rnk_informers_list, rnk_outcomes;
  std::string rnk_z_outcomes, rnk_train_z;
  rank->add_option("--input", rnk_input, "binary CSV")->required();
  rank->add_option("--ensemble", rnk_ensemble, "ensemble JSON")->required();
  rank->add_option("--output", rnk_output, "ranking CSV out")->required();
  rank->add_option("--missing", rnk_missing, "missing-value token");
  rank->add_option("--informers", rnk_informers_file,
                   "selection report JSON with the informer set");
  rank->add_option("--informer-cols", rnk_informers_list,
                   "comma-separated informer column indices (0-based)");
  rank->add_option("--outcomes", rnk_outcomes,
                   "comma-separated binary outcomes aligned with informers");
  rank->add_option("--z-outcomes", rnk_z_outcomes,
                   "continuous informer readouts; coded to binary against "
                   "--train-z centroids");
  rank->add_option("--train-z", rnk_train_z,
                   "continuous training CSV for centroid coding");

  // ---- cv ----
  auto* cv = app.add_subcommand(
      "cv", "Leave-one-out retrospective evaluation");
  std::string cv_input, cv_output, cv_missing = "NA";
  std::vector<std::string> cv_methods{"greedy"};
  HyperFlags cv_hyper;
  CvConfig cv_cfg;
  cv_cfg.sampler.samples = 100;
  cv_cfg.sampler.thinning = 3;
  cv_cfg.sampler.burn_in = 300;
  cv_cfg.threads = static_cast<int>(std::thread::hardware_concurrency());
  cv->add_option("--input", cv_input, "binary CSV")->required();
  cv->add_option("--output", cv_output, "per-fold metrics CSV out")
      ->required();
  cv->add_option("--missing", cv_missing, "missing-value token");
  cv->add_option("--na", cv_cfg.n_informers, "informer-set size")->required();
  cv->add_option("--nt", cv_cfg.n_top, "top-set size")->required();
  cv->add_option("--method,--baseline", cv_methods,
                 "greedy, entropy, frequent-hitters, random (repeatable)");
  add_hyper_flags(cv, cv_hyper);
  cv->add_option("--samples", cv_cfg.sampler.samples, "kept clusterings");
  cv->add_option("--thin", cv_cfg.sampler.thinning, "sweeps between samples");
  cv->add_option("--burnin", cv_cfg.sampler.burn_in, "discarded sweeps");
  cv->add_option("--seed", cv_cfg.seed, "RNG seed");
  cv->add_option("--reps", cv_cfg.replicates, "independent seeds per fold");
  cv->add_option("--threads", cv_cfg.threads, "fold parallelism");
  cv->add_option("--draws", cv_cfg.pel.draws_per_sample,
                 "predictive draws per ensemble member");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help/version exit 0; every other parse failure is a usage error
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*binarize) {
    ContinuousMatrix z = load_continuous_csv(bin_input, bin_missing);
    std::ofstream out = open_output(bin_output);
    if (bin_rule == "2sd") {
      TwoSdResult result = binarize_2sd(z);
      write_csv(result.matrix, out, bin_missing);
      for (int i : result.constant_rows)
        std::cerr << "warning: constant row '" << z.target_id(i)
                  << "' binarizes to all-active\n";
      if (!bin_thresholds_out.empty()) {
        std::ofstream tout = open_output(bin_thresholds_out);
        tout << "target,threshold\n";
        for (int i = 0; i < z.num_targets(); ++i)
          tout << z.target_id(i) << ',' << result.thresholds[i] << '\n';
      }
    } else {
      write_csv(binarize_zscore(z, bin_zcut), out, bin_missing);
    }
    return 0;
  }

  if (*sample) {
    BioactivityMatrix x0 = load_binary_csv(smp_input, smp_missing);
    const Hyperparams hyper = smp_hyper.resolve(x0, smp_cfg.seed);
    smp_cfg.init = smp_init == "single" ? SamplerConfig::Init::SingleCluster
                                        : SamplerConfig::Init::Singletons;
    const PosteriorEnsemble ensemble = sample_posterior(x0, hyper, smp_cfg);
    save_ensemble(ensemble, smp_output);
    if (!smp_trace.empty()) {
      std::ofstream tout = open_output(smp_trace);
      write_trace_csv(ensemble, tout);
    }
    return 0;
  }

  if (*select) {
    BioactivityMatrix x0 = load_binary_csv(sel_input, sel_missing);
    const PosteriorEnsemble ensemble = load_ensemble(sel_ensemble, x0);
    sel_cfg.method = sel_method == "greedy" ? SelectionMethod::GreedyPel
                                            : SelectionMethod::Entropy;
    SelectionReport report;
    report.method = sel_method;
    report.n_informers = sel_cfg.n_informers;
    report.n_top = sel_cfg.n_top;
    report.seed = sel_cfg.seed;
    report.result = select_informers(ensemble, sel_cfg);
    for (std::size_t s = 1; s < report.result.steps.size(); ++s)
      if (report.result.steps[s].score > report.result.steps[s - 1].score)
        report.monotone = false;
    if (!report.monotone)
      std::cerr << "warning: per-step objective increased at some step "
                   "(Monte-Carlo noise)\n";
    save_selection_report(report, sel_output);
    return 0;
  }

  if (*rank) {
    BioactivityMatrix x0 = load_binary_csv(rnk_input, rnk_missing);
    const PosteriorEnsemble ensemble = load_ensemble(rnk_ensemble, x0);
    InformerAssay assay;
    if (!rnk_informers_file.empty())
      assay.informers = load_informers(rnk_informers_file);
    else if (!rnk_informers_list.empty())
      for (double v : parse_reals(rnk_informers_list))
        assay.informers.push_back(static_cast<int>(v));
    else
      fail("rank needs --informers or --informer-cols");

    if (!rnk_z_outcomes.empty()) {
      require(!rnk_train_z.empty(), "--z-outcomes needs --train-z");
      const std::vector<double> z_readout = parse_reals(rnk_z_outcomes);
      require(z_readout.size() == assay.informers.size(),
              "--z-outcomes length must match the informer set");
      ContinuousMatrix train_z = load_continuous_csv(rnk_train_z, rnk_missing);
      require(train_z.num_targets() == x0.num_targets() &&
                  train_z.num_compounds() == x0.num_compounds(),
              "--train-z shape must match --input");
      std::vector<std::vector<double>> z_rows;
      std::vector<std::vector<std::uint8_t>> x_rows;
      for (int i = 0; i < x0.num_targets(); ++i) {
        std::vector<double> zr;
        std::vector<std::uint8_t> xr;
        bool complete = true;
        for (int j : assay.informers) {
          if (!train_z.is_observed(i, j) || !x0.is_observed(i, j)) {
            complete = false;
            break;
          }
          zr.push_back(train_z.value(i, j));
          xr.push_back(static_cast<std::uint8_t>(x0.value(i, j)));
        }
        if (complete) {
          z_rows.push_back(std::move(zr));
          x_rows.push_back(std::move(xr));
        }
      }
      assay.outcomes = encode_intermediate(z_readout, z_rows, x_rows);
    } else if (!rnk_outcomes.empty()) {
      assay.outcomes = parse_bits(rnk_outcomes);
    } else {
      fail("rank needs --outcomes or --z-outcomes");
    }
    assay.validate(x0.num_compounds());

    std::ofstream out = open_output(rnk_output);
    write_ranking_csv(rank_all(ensemble, assay), x0, out);
    return 0;
  }

  if (*cv) {
    BioactivityMatrix x0 = load_binary_csv(cv_input, cv_missing);
    cv_cfg.methods.clear();
    for (const std::string& name : cv_methods) {
      auto method = cv_method_from_name(name);
      require(method.has_value(), "unknown cv method: " + name);
      cv_cfg.methods.push_back(*method);
    }
    if (cv_hyper.alpha0 || cv_hyper.m0)
      cv_cfg.hyper = cv_hyper.resolve(x0, cv_cfg.seed);
    const std::vector<FoldResult> results = run_cv(x0, cv_cfg);
    std::ofstream out = open_output(cv_output);
    write_cv_csv(results, cv_cfg.n_informers, out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const boise::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
