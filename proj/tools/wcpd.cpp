// wcpd: change point detection and segment clustering from the command line.
//
//   wcpd simulate          --spec spec.json --out series.csv
//   wcpd calibrate-filter  --beta 50 --out filter.json
//   wcpd detect            --input series.csv --beta 50 --filter filter.json --out-dir run/
//   wcpd cluster           --input series.csv --change-points run/change_points.txt --k 3 --out-dir run/
//   wcpd evaluate          --predicted run/change_points.txt --truth series.csv.truth --delta 50
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "wcpd/cpd.hpp"
#include "wcpd/error.hpp"
#include "wcpd/eval.hpp"
#include "wcpd/filter_io.hpp"
#include "wcpd/io.hpp"
#include "wcpd/random.hpp"
#include "wcpd/tssc.hpp"

namespace fs = std::filesystem;
using namespace wcpd;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Sub-seed streams, so each command draws independent randomness from the one
// configured seed.
constexpr std::uint64_t kFilterStream = 1;
constexpr std::uint64_t kClusterStream = 2;

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

struct SeriesOptions {
  std::string input;
  std::string truth;
  std::string columns;
  std::string label_column;
  std::string time_column;
  std::string delimiter;
  bool difference = false;
  std::string out_dir;
  std::size_t beta = 0;
  CLI::Option* input_opt = nullptr;
  CLI::Option* truth_opt = nullptr;
  CLI::Option* columns_opt = nullptr;
  CLI::Option* label_opt = nullptr;
  CLI::Option* time_opt = nullptr;
  CLI::Option* delim_opt = nullptr;
  CLI::Option* difference_opt = nullptr;
  CLI::Option* out_dir_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
};

void add_series_options(CLI::App* cmd, SeriesOptions& o) {
  o.input_opt = cmd->add_option("--input", o.input, "Delimited input file with a header row");
  o.truth_opt = cmd->add_option("--truth", o.truth, "Ground-truth change point sidecar (one index per line)");
  o.columns_opt = cmd->add_option("--columns", o.columns, "Comma-separated value column names (default: all)");
  o.label_opt = cmd->add_option("--label-column", o.label_column, "Integer label column");
  o.time_opt = cmd->add_option("--time-column", o.time_column, "Time column to ignore");
  o.delim_opt = cmd->add_option("--delimiter", o.delimiter, "Field delimiter (default ',')");
  o.difference_opt = cmd->add_flag("--difference", o.difference, "Use the first difference of the series");
  o.out_dir_opt = cmd->add_option("--out-dir", o.out_dir, "Output directory");
  o.beta_opt = cmd->add_option("--beta", o.beta, "Window size in samples");
}

RunConfig base_config(const CommonOptions& common) {
  RunConfig cfg;
  if (!common.config_path.empty()) cfg = parse_run_config(read_text_file(common.config_path));
  if (common.seed_opt->count()) cfg.seed = common.seed;
  return cfg;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(',', pos);
    const auto item = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!item.empty()) out.push_back(item);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

void apply_series_options(RunConfig& cfg, const SeriesOptions& o) {
  if (o.input_opt->count()) cfg.input_path = o.input;
  if (o.truth_opt->count()) cfg.truth_path = o.truth;
  if (o.columns_opt->count()) cfg.columns.value_columns = split_names(o.columns);
  if (o.label_opt->count()) cfg.columns.label_column = o.label_column;
  if (o.time_opt->count()) cfg.columns.time_column = o.time_column;
  if (o.delim_opt->count()) {
    if (o.delimiter == "\\t" || o.delimiter == "tab") {
      cfg.columns.delimiter = '\t';
    } else if (o.delimiter.size() == 1) {
      cfg.columns.delimiter = o.delimiter[0];
    } else {
      throw DataError("delimiter must be a single character");
    }
  }
  if (o.difference_opt->count()) cfg.difference = o.difference;
  if (o.out_dir_opt->count()) cfg.output_dir = o.out_dir;
  if (o.beta_opt->count()) cfg.beta = o.beta;
}

TimeSeries load_series(const RunConfig& cfg) {
  if (!cfg.input_path) throw DataError("no input file given (--input)");
  std::optional<fs::path> truth;
  if (cfg.truth_path) truth = *cfg.truth_path;
  auto series = ingest_csv(*cfg.input_path, cfg.columns, truth);
  return cfg.difference ? first_difference(series) : series;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  const fs::path dir = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::string tap_summary(const MatchedFilter& f) {
  std::size_t peak = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.taps.size(); ++i) {
    sum += f.taps[i];
    if (f.taps[i] > f.taps[peak]) peak = i;
  }
  return fmt::format("beta={}\nensemble_size={}\ngamma={}\nclamped_taps={}\npeak_offset={}\npeak_tap={}\ntap_sum={}\n",
                     f.beta, f.ensemble_size, f.gamma, f.clamped_taps,
                     static_cast<long>(peak) - static_cast<long>(f.beta), f.taps[peak], sum);
}

std::vector<ChangePair> load_pairs(const std::string& path) {
  const auto doc = nlohmann::json::parse(read_text_file(path));
  // Same layout as the change_pairs array of a filter file.
  nlohmann::json wrapper = {{"format", kFilterFormat}, {"version", kFilterFormatVersion},
                            {"beta", 1}, {"gamma", 1.0}, {"ensemble_size", 1}, {"seed", 0},
                            {"change_pairs", doc}, {"taps", {0.0, 1.0, 0.0}}};
  return parse_filter(wrapper.dump()).change_pairs;
}

// --- subcommands -----------------------------------------------------------

int run_simulate(const CommonOptions& common, const std::string& spec_path, const std::string& out,
                 const std::string& truth_out) {
  auto spec = parse_series_spec(read_text_file(spec_path));
  if (common.seed_opt->count()) spec.seed = common.seed;
  const auto series = generate(spec);
  write_text_file(out, format_series_csv(series));
  const std::string truth = truth_out.empty() ? out + ".truth" : truth_out;
  write_text_file(truth, format_indices(series.change_points()));
  fmt::print("samples={}\ndimension={}\nchange_points={}\n", series.length(), series.dimension(),
             series.change_points().size());
  return kOk;
}

int run_calibrate(const CommonOptions& common, std::size_t beta, std::size_t ensemble,
                  const std::string& pairs_path, const std::string& out) {
  const RunConfig cfg = base_config(common);
  const auto pairs = pairs_path.empty() ? default_change_pairs() : load_pairs(pairs_path);
  const auto filter = estimate_matched_filter(beta, ensemble, pairs, cfg.seed);
  save_filter(filter, out);
  fmt::print("{}", tap_summary(filter));
  return kOk;
}

MatchedFilter cached_filter(const RunConfig& cfg, std::size_t ensemble, const fs::path& dir) {
  const std::uint64_t seed = derive_seed(cfg.seed, {kFilterStream});
  const fs::path cache = dir / fmt::format("matched_filter_b{}_e{}_s{}.json", cfg.beta, ensemble, cfg.seed);
  if (fs::exists(cache)) {
    try {
      auto f = load_filter(cache);
      if (f.beta == cfg.beta && f.ensemble_size == ensemble && f.seed == seed &&
          f.change_pairs == default_change_pairs()) {
        return f;
      }
    } catch (const DataError&) {
      // stale or corrupt cache entry: re-estimate below
    }
  }
  auto f = estimate_matched_filter(cfg.beta, ensemble, default_change_pairs(), seed);
  save_filter(f, cache);
  return f;
}

int run_detect(RunConfig cfg, bool no_filter, std::size_t ensemble) {
  cfg.validate();
  const auto series = load_series(cfg);
  const auto dir = prepare_out_dir(cfg);

  DetectorConfig det;
  det.beta = cfg.beta;
  det.lambda = cfg.lambda;
  if (!no_filter) {
    if (cfg.filter_path) {
      if (!fs::exists(*cfg.filter_path)) throw DataError("filter file not found: " + *cfg.filter_path);
      det.filter = load_filter(*cfg.filter_path);
    } else {
      det.filter = cached_filter(cfg, ensemble, dir);
    }
  }
  const auto result = detect(series, det);
  write_text_file(dir / "change_points.txt", format_indices(result.change_points));
  write_text_file(dir / "trace.csv",
                  format_trace_csv(result.raw, result.filtered ? &*result.filtered : nullptr));
  fmt::print("change_points={}\n", result.change_points.size());
  return kOk;
}

int run_cluster(RunConfig cfg, const std::string& cps_path) {
  cfg.validate();
  const auto series = load_series(cfg);
  std::vector<std::size_t> cps;
  if (!cps_path.empty()) {
    cps = read_indices(cps_path);
  } else if (cfg.truth_path) {
    cps = series.change_points();
  } else {
    throw DataError("no change points given (--change-points or --truth)");
  }
  const auto dir = prepare_out_dir(cfg);
  const auto labeling = cluster_segments(series, cps, cfg.k, cfg.beta, derive_seed(cfg.seed, {kClusterStream}));
  write_text_file(dir / "segments.csv", format_segment_labels(labeling, series.length()));
  write_text_file(dir / "labels.csv", format_sample_labels(labeling, series.length()));
  fmt::print("segments={}\nK={}\n", labeling.labels.size(), labeling.k);
  return kOk;
}

struct EvaluateInputs {
  std::string predicted;
  std::string truth;
  std::string trace;
  std::string segments;
  std::string out;
};

int run_evaluate(RunConfig cfg, const EvaluateInputs& in) {
  cfg.validate();
  if (in.truth.empty()) throw DataError("no truth file given (--truth)");
  const auto truth = read_indices(in.truth);
  const auto predicted = read_indices(in.predicted);

  EvalReport report;
  report.k = cfg.k;
  report.beta = cfg.beta;
  report.lambda = cfg.lambda;
  report.delta = cfg.delta;
  report.predicted_count = predicted.size();
  report.truth_count = truth.size();
  report.f1 = cp_f1(predicted, truth, cfg.delta);

  if (!in.trace.empty()) {
    const auto text = read_text_file(in.trace);
    StatTrace trace;
    try {
      trace = parse_trace_csv(text, true);
    } catch (const DataError&) {
      trace = parse_trace_csv(text, false);  // unfiltered run
    }
    report.cp_auc = cp_auc(trace, truth, cfg.delta);
    report.has_auc = true;
  }
  if (!in.segments.empty()) {
    if (cfg.columns.label_column.empty()) throw DataError("label accuracy needs --label-column");
    const auto series = load_series(cfg);
    const auto labeling = parse_segment_labels(read_text_file(in.segments), cfg.k);
    report.label_accuracy = label_accuracy(labeling, series.labels(), cfg.k);
    report.has_label_accuracy = true;
  }
  const auto text = report.to_text();
  if (!in.out.empty()) write_text_file(in.out, text);
  fmt::print("{}", text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein two-sample change point detection and segment clustering"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  common.seed_opt = app.add_option("--seed", common.seed, "Seed for all randomness");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic series from a JSON spec");
  std::string spec_path, sim_out, sim_truth;
  sim->add_option("--spec", spec_path, "Series spec (JSON)")->required();
  sim->add_option("--out", sim_out, "Output CSV path")->required();
  sim->add_option("--truth-out", sim_truth, "Truth sidecar path (default: <out>.truth)");

  // calibrate-filter
  auto* cal = app.add_subcommand("calibrate-filter", "Estimate the matched filter by simulation");
  std::size_t cal_beta = 50, cal_ensemble = 200;
  std::string cal_pairs, cal_out;
  cal->add_option("--beta", cal_beta, "Window size")->capture_default_str();
  cal->add_option("--ensemble", cal_ensemble, "Sequences per change pair")->capture_default_str();
  cal->add_option("--pairs", cal_pairs, "JSON list of {before, after} distribution pairs");
  cal->add_option("--out", cal_out, "Filter file to write")->required();

  // detect
  auto* det = app.add_subcommand("detect", "Detect change points");
  SeriesOptions det_series;
  add_series_options(det, det_series);
  double det_lambda = 0.0;
  std::string det_filter;
  bool det_no_filter = false;
  std::size_t det_ensemble = 200;
  auto* det_lambda_opt = det->add_option("--lambda", det_lambda, "Peak threshold (default 0.462)");
  auto* det_filter_opt = det->add_option("--filter", det_filter, "Matched filter file");
  det->add_flag("--no-filter", det_no_filter, "Threshold the raw statistic");
  det->add_option("--ensemble", det_ensemble, "Ensemble size when the filter is estimated inline")
      ->capture_default_str();

  // cluster
  auto* clu = app.add_subcommand("cluster", "Cluster segments between change points");
  SeriesOptions clu_series;
  add_series_options(clu, clu_series);
  std::string clu_cps;
  std::size_t clu_k = 0;
  clu->add_option("--change-points", clu_cps, "Change point file (default: the truth sidecar)");
  auto* clu_k_opt = clu->add_option("--k", clu_k, "Number of clusters");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score detections against ground truth");
  SeriesOptions ev_series;
  add_series_options(ev, ev_series);
  EvaluateInputs ev_in;
  std::size_t ev_k = 0, ev_delta = 0;
  double ev_lambda = 0.0;
  ev->add_option("--predicted", ev_in.predicted, "Detected change points")->required();
  ev->add_option("--trace", ev_in.trace, "Trace file from detect (enables CP-AUC)");
  ev->add_option("--segments", ev_in.segments, "Segment label file from cluster (enables label accuracy)");
  ev->add_option("--report", ev_in.out, "Also write the report here");
  auto* ev_k_opt = ev->add_option("--k", ev_k, "Number of clusters (echoed)");
  auto* ev_delta_opt = ev->add_option("--delta", ev_delta, "Match margin in samples");
  auto* ev_lambda_opt = ev->add_option("--lambda", ev_lambda, "Threshold used (echoed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return run_simulate(common, spec_path, sim_out, sim_truth);
    if (*cal) return run_calibrate(common, cal_beta, cal_ensemble, cal_pairs, cal_out);

    RunConfig cfg = base_config(common);
    if (*det) {
      apply_series_options(cfg, det_series);
      if (det_lambda_opt->count()) cfg.lambda = det_lambda;
      if (det_filter_opt->count()) cfg.filter_path = det_filter;
      return run_detect(cfg, det_no_filter, det_ensemble);
    }
    if (*clu) {
      apply_series_options(cfg, clu_series);
      if (clu_k_opt->count()) cfg.k = clu_k;
      return run_cluster(cfg, clu_cps);
    }
    if (*ev) {
      apply_series_options(cfg, ev_series);
      if (ev_series.truth_opt->count()) ev_in.truth = ev_series.truth;
      else if (cfg.truth_path) ev_in.truth = *cfg.truth_path;
      // the truth file here holds change points, not a sidecar for --input
      cfg.truth_path.reset();
      if (ev_k_opt->count()) cfg.k = ev_k;
      if (ev_delta_opt->count()) cfg.delta = ev_delta;
      if (ev_lambda_opt->count()) cfg.lambda = ev_lambda;
      return run_evaluate(cfg, ev_in);
    }
  } catch (const NumericalError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kData;
  }
  return kUsage;
}
