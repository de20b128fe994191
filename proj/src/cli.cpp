// Copyright 2026 The dismet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dismet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "dismet/baselines.hpp"
#include "dismet/io.hpp"
#include "dismet/med.hpp"
#include "dismet/parallel.hpp"
#include "dismet/scenarios.hpp"
#include "dismet/synthgen.hpp"

namespace dismet::cli {

namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr double kSapTolerance = 0.01;

struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string factors_path;
  std::string reps_path;
  std::string output;
  int bins = kDefaultBins;
  std::string base = "natural";
  std::size_t threads = 0;
};

EntropyBase parse_base(const std::string& text) {
  if (text == "natural" || text == "e") return EntropyBase::natural;
  if (text == "k" || text == "K" || text == "factor") return EntropyBase::factor_count;
  throw Error(ErrorKind::ParseError, "unknown entropy base '" + text + "' (natural, k)");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (cell.empty()) continue;
    std::istringstream value(cell);
    T v{};
    if (!(value >> v) || !value.eof()) {
      throw Error(ErrorKind::ParseError, std::string("bad ") + what + " '" + cell + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(text, path);
  }
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_inputs) {
  if (needs_inputs) {
    cmd->add_option("--factors", opts.factors_path, "factor table CSV")->required();
    cmd->add_option("--reps", opts.reps_path, "representation DREP file")->required();
  }
  cmd->add_option("--output,-o", opts.output, "output file (default: stdout)");
  cmd->add_option("--bins", opts.bins, "histogram bins per dimension")
      ->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--base", opts.base, "entropy base: natural or k");
  cmd->add_option("--threads", opts.threads, "worker threads (default: DISMET_THREADS or all)");
}

Dataset load(const CommonOptions& opts) {
  return validate_pair(read_factors(opts.factors_path), read_reps(opts.reps_path));
}

void apply_threads(const CommonOptions& opts) {
  if (opts.threads > 0) set_thread_count(opts.threads);
}

std::string params_string(double v) { return format_double(v); }

// ---------------------------------------------------------------- eval

struct EvalOptions {
  CommonOptions common;
  std::string metrics = "med";
  std::string seeds = "0";
  std::size_t k = 2;
  double lambda = 0.01;
  ProtocolParams protocol;
};

std::map<std::string, std::string> metric_parameters(const std::string& metric,
                                                     const EvalOptions& opts) {
  std::map<std::string, std::string> p;
  if (metric == "med" || metric == "topk_med" || metric == "mig") {
    p["bins"] = std::to_string(opts.common.bins);
  }
  if (metric == "med" || metric == "topk_med" || metric == "dci") p["base"] = opts.common.base;
  if (metric == "topk_med") p["k"] = std::to_string(opts.k);
  if (metric == "dci") {
    p["estimator"] = "lasso";
    p["lambda"] = params_string(opts.lambda);
  }
  if (metric == "betavae" || metric == "factorvae" || metric == "sap") {
    p["num_train"] = std::to_string(opts.protocol.num_train);
    p["num_eval"] = std::to_string(opts.protocol.num_eval);
  }
  if (metric == "betavae" || metric == "factorvae") {
    p["batch_size"] = std::to_string(opts.protocol.batch_size);
  }
  if (metric == "factorvae") p["prune_dims.threshold"] = params_string(opts.protocol.prune_threshold);
  return p;
}

double compute_metric(const std::string& metric, const Dataset& data, std::uint64_t seed,
                      const EvalOptions& opts) {
  const EntropyBase base = parse_base(opts.common.base);
  ProtocolParams protocol = opts.protocol;
  protocol.seed = seed;
  if (metric == "med") return med_score(data.reps, data.factors, opts.common.bins, base);
  if (metric == "topk_med") return topk_med(data.reps, data.factors, opts.k, opts.common.bins, base);
  if (metric == "mig") return mig(data.reps, data.factors, opts.common.bins);
  if (metric == "sap") return sap(data.reps, data.factors, protocol);
  if (metric == "dci") {
    return dci_disentanglement(data.reps, data.factors, LassoEstimator{opts.lambda, 1000}, base);
  }
  if (metric == "betavae") return betavae_score(data.reps, data.factors, protocol);
  if (metric == "factorvae") return factorvae_score(data.reps, data.factors, protocol);
  return downstream_logistic(data.reps, data.factors, protocol);
}

int cmd_eval(const EvalOptions& opts, std::ostream& out) {
  apply_threads(opts.common);
  const auto metrics = split_names(opts.metrics);
  if (metrics.empty()) throw Error(ErrorKind::ParseError, "no metrics given");
  for (const auto& m : metrics) {
    if (std::find(metric_names().begin(), metric_names().end(), m) == metric_names().end()) {
      std::string valid;
      for (const auto& name : metric_names()) valid += (valid.empty() ? "" : ", ") + name;
      throw Error(ErrorKind::ParseError, "unknown metric '" + m + "'; valid metrics: " + valid);
    }
  }
  const auto seeds = parse_list<std::uint64_t>(opts.seeds, "seed");
  if (seeds.empty()) throw Error(ErrorKind::ParseError, "seed list is empty");
  parse_base(opts.common.base);
  if (opts.k == 0) throw Error(ErrorKind::ParseError, "k must be at least 1");

  const Dataset data = load(opts.common);
  const std::size_t s = seeds.size();
  std::vector<double> scores(metrics.size() * s);
  parallel_for(scores.size(), [&](std::size_t p) {
    scores[p] = compute_metric(metrics[p / s], data, seeds[p % s], opts);
  });

  std::vector<MetricReport> reports;
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    std::vector<double> per_seed(scores.begin() + static_cast<std::ptrdiff_t>(m * s),
                                 scores.begin() + static_cast<std::ptrdiff_t>((m + 1) * s));
    auto params = metric_parameters(metrics[m], opts);
    std::string seed_list;
    for (auto seed : seeds) seed_list += (seed_list.empty() ? "" : ",") + std::to_string(seed);
    params["seeds"] = seed_list;
    reports.push_back(make_report(metrics[m], std::move(per_seed), std::move(params)));
  }
  emit(reports_to_json(reports), opts.common.output, out);
  return kOk;
}

// ---------------------------------------------------------------- scenario / sweep

struct ScenarioOptions {
  CommonOptions common;
  std::string kind = "copy-average";
  std::string dims;  // empty: a per-kind default
  std::size_t replication = 1;
  std::string metrics;
};

struct CheckedRow {
  std::size_t dims;
  std::string metric;
  double value;
  std::optional<double> oracle;
  double tolerance = kOracleTolerance;
};

std::string checked_csv(ScenarioKind kind, const std::vector<CheckedRow>& rows,
                        std::size_t& failures) {
  std::string text = "kind,D,metric,value,oracle,status\n";
  for (const auto& r : rows) {
    std::string status = "-";
    std::string oracle;
    if (r.oracle) {
      oracle = format_double(*r.oracle);
      const bool ok = std::abs(r.value - *r.oracle) <= r.tolerance;
      status = ok ? "pass" : "fail";
      failures += !ok;
    }
    text += to_string(kind) + "," + std::to_string(r.dims) + "," + r.metric + "," +
            format_double(r.value) + "," + oracle + "," + status + "\n";
  }
  return text;
}

int finish_oracles(std::size_t checks, std::size_t failures, std::ostream& err) {
  if (failures > 0) {
    err << "oracle: FAIL (" << failures << " of " << checks << " checks)\n";
    return kOracleFailure;
  }
  err << "oracle: pass (" << checks << " checks)\n";
  return kOk;
}

std::string default_dims(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::duplicated: return "4,1000";
    case ScenarioKind::copy_average: return "3,1000";
    case ScenarioKind::weighted_mix: return "2,10,1000";
  }
  return "3,1000";
}

int cmd_scenario(const ScenarioOptions& opts, std::ostream& out, std::ostream& err) {
  apply_threads(opts.common);
  const ScenarioKind kind = parse_scenario_kind(opts.kind);
  const EntropyBase base = parse_base(opts.common.base);
  const auto dims =
      parse_list<std::size_t>(opts.dims.empty() ? default_dims(kind) : opts.dims, "dimension");
  if (dims.empty()) throw Error(ErrorKind::ParseError, "dimension list is empty");

  std::vector<CheckedRow> rows;
  for (std::size_t d : dims) {
    const ScenarioSpec spec{kind, d, opts.replication};
    const Dataset data = generate(spec);
    const ProtocolParams protocol;
    rows.push_back({d, "med", med_score(data.reps, data.factors, opts.common.bins, base),
                    analytic_med(spec, EntropyBase::natural)});
    rows.push_back({d, "topk_med_k1", topk_med(data.reps, data.factors, 1, opts.common.bins, base),
                    std::nullopt});
    const double mig_value = mig(data.reps, data.factors, opts.common.bins);
    const double sap_value = sap(data.reps, data.factors, protocol);
    // With odd D one factor keeps a single copy, so only even D pins the gaps to zero.
    if (kind == ScenarioKind::duplicated && d % 2 == 0) {
      rows.push_back({d, "mig", mig_value, 0.0});
      rows.push_back({d, "sap", sap_value, 0.0, kSapTolerance});
    } else {
      rows.push_back({d, "mig", mig_value, std::nullopt});
      rows.push_back({d, "sap", sap_value, std::nullopt});
    }
    if (kind == ScenarioKind::copy_average) {
      const auto summary = simplified_dci(d, Enumerate{}, base);
      // Sum of rho_i S_i over the two draw situations, weighted by their
      // probabilities 1/(D-2) and 1 - 1/(D-2).
      const double formula = 1.0 - std::numbers::ln2 / (3.0 * static_cast<double>(d - 2));
      rows.push_back({d, "dci_enumerated", summary.mean, formula});
      rows.push_back({d, "dci_stated", stated_dci_expectation(d), std::nullopt});
      if (d >= 4) {
        rows.push_back({d, "dci_distinct_case", simplified_dci_case(d, 2, 3, base), 1.0});
      }
    }
  }
  std::size_t failures = 0;
  std::size_t checks = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.oracle.has_value(); }));
  emit(checked_csv(kind, rows, failures), opts.common.output, out);
  return finish_oracles(checks, failures, err);
}

int cmd_sweep(const ScenarioOptions& opts, std::ostream& out, std::ostream& err) {
  apply_threads(opts.common);
  const ScenarioKind kind = parse_scenario_kind(opts.kind);
  const EntropyBase base = parse_base(opts.common.base);
  const auto dims = parse_list<std::size_t>(opts.dims, "dimension");
  if (dims.empty()) throw Error(ErrorKind::ParseError, "dimension list is empty");
  std::vector<std::string> metrics = split_names(opts.metrics);
  if (metrics.empty()) {
    metrics = {"med", "med_analytic"};
    if (kind == ScenarioKind::copy_average) {
      metrics.insert(metrics.end(), {"dci_enumerated", "dci_stated"});
    }
  }
  const auto rows = sweep(kind, dims, metrics, opts.common.bins, base);
  emit(sweep_csv(rows), opts.common.output, out);

  std::size_t checks = 0;
  std::size_t failures = 0;
  for (const auto& r : rows) {
    if (r.metric != "med") continue;
    for (const auto& a : rows) {
      if (a.metric == "med_analytic" && a.dims == r.dims) {
        ++checks;
        failures += std::abs(a.value - r.value) > kOracleTolerance;
      }
    }
  }
  return finish_oracles(checks, failures, err);
}

// ---------------------------------------------------------------- topk / cooccur / heatmap

struct TopKOptions {
  CommonOptions common;
  std::size_t k = 2;
  std::string k_list;
  bool all_dims = false;
};

std::string join_indices(const std::vector<std::size_t>& idx) {
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : " ") + std::to_string(i);
  return s;
}

int cmd_topk(const TopKOptions& opts, std::ostream& out) {
  apply_threads(opts.common);
  const EntropyBase base = parse_base(opts.common.base);
  std::vector<std::size_t> ks = opts.k_list.empty() ? std::vector<std::size_t>{opts.k}
                                                    : parse_list<std::size_t>(opts.k_list, "k");
  if (ks.empty() || std::find(ks.begin(), ks.end(), 0u) != ks.end()) {
    throw Error(ErrorKind::ParseError, "k values must be >= 1");
  }
  const Dataset data = load(opts.common);
  std::string text = "k,top_k_med,selected\n";
  for (std::size_t k : ks) {
    const auto result = topk_evaluate(data.reps, data.factors, k, opts.common.bins, base);
    text += std::to_string(k) + "," + format_double(result.score) + "," +
            join_indices(result.selection.picked) + "\n";
  }
  emit(text, opts.common.output, out);
  return kOk;
}

int cmd_cooccur(const TopKOptions& opts, std::ostream& out) {
  apply_threads(opts.common);
  const EntropyBase base = parse_base(opts.common.base);
  if (opts.k == 0) throw Error(ErrorKind::ParseError, "k must be at least 1");
  const Dataset data = load(opts.common);
  const MIMatrix mi = mi_matrix(data.reps, data.factors, opts.common.bins, base);
  std::vector<std::size_t> rows;
  if (opts.all_dims) {
    rows.resize(mi.dims());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  } else {
    const ImportanceMatrix imp = importance_matrix(mi);
    rows = topk_select(imp.relevance, imp.scores, opts.k).picked;
  }
  Eigen::MatrixXd restricted(static_cast<Eigen::Index>(rows.size()), mi.values.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    restricted.row(static_cast<Eigen::Index>(r)) = mi.values.row(static_cast<Eigen::Index>(rows[r]));
  }
  const auto& names = data.factors.names();
  emit(labeled_matrix_csv(cooccurrence(restricted), names, names), opts.common.output, out);
  return kOk;
}

int cmd_heatmap(const CommonOptions& opts, std::ostream& out) {
  apply_threads(opts);
  const EntropyBase base = parse_base(opts.base);
  const Dataset data = load(opts);
  const ImportanceMatrix imp = importance_matrix(mi_matrix(data.reps, data.factors, opts.bins, base));
  std::vector<std::string> columns(imp.dims());
  for (std::size_t i = 0; i < columns.size(); ++i) columns[i] = std::to_string(i);
  emit(labeled_matrix_csv(heatmap(imp), data.factors.names(), columns), opts.output, out);
  return kOk;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::string dataset;
  std::string cardinalities;
  std::string scenario;
  std::string mode = "full";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> encoders;
  std::string out_factors;
  std::string out_reps;
  std::size_t threads = 0;
};

int cmd_gen(const GenOptions& opts, std::ostream& err) {
  if (opts.threads > 0) set_thread_count(opts.threads);
  const int sources = !opts.dataset.empty() + !opts.cardinalities.empty() + !opts.scenario.empty();
  if (sources != 1) {
    throw Error(ErrorKind::ParseError,
                "give exactly one of --dataset, --cardinalities or --scenario");
  }
  Dataset data;
  if (!opts.scenario.empty()) {
    // kind:D[:replication]
    const auto parts = [&] {
      std::vector<std::string> p;
      std::stringstream in(opts.scenario);
      std::string cell;
      while (std::getline(in, cell, ':')) p.push_back(cell);
      return p;
    }();
    if (parts.size() < 2 || parts.size() > 3) {
      throw Error(ErrorKind::ParseError, "--scenario expects kind:D[:replication]");
    }
    ScenarioSpec spec{parse_scenario_kind(parts[0]), parse_list<std::size_t>(parts[1], "D").at(0),
                      parts.size() == 3 ? parse_list<std::size_t>(parts[2], "replication").at(0)
                                        : 1};
    data = generate(spec);
  } else {
    DatasetSpec spec;
    if (!opts.dataset.empty()) {
      spec = builtin_dataset(opts.dataset);
    } else {
      spec.name = "custom";
      spec.cardinalities = parse_list<std::int32_t>(opts.cardinalities, "cardinality");
      for (std::size_t j = 0; j < spec.cardinalities.size(); ++j) {
        spec.factor_names.push_back("f" + std::to_string(j));
      }
    }
    GridMode mode = FullGrid{};
    if (opts.mode == "sample") {
      mode = SampledGrid{opts.n, opts.seed};
    } else if (opts.mode != "full") {
      throw Error(ErrorKind::ParseError, "mode must be full or sample");
    }
    FactorTable factors = factor_grid(spec, mode);
    std::vector<EncoderSpec> stages;
    for (const auto& e : opts.encoders) stages.push_back(parse_encoder(e));
    if (stages.empty()) stages.push_back(encoder::Identity{});
    RepresentationMatrix reps = encode(factors, stages);
    data = validate_pair(std::move(factors), std::move(reps));
  }
  write_factors(data.factors, opts.out_factors);
  write_reps(data.reps, opts.out_reps);
  err << "wrote " << data.reps.rows() << " x " << data.reps.dims() << " codes, "
      << data.factors.num_factors() << " factors\n";
  return kOk;
}

// ---------------------------------------------------------------- probe

struct ProbeOptions {
  CommonOptions common;
  std::string kind = "variance";
  std::string factor = "0";
  std::string mode = "average";
  std::size_t assignment = 0;
  std::string reduce = "none";
  std::size_t k = 2;
  std::uint64_t seed = 0;
};

std::size_t resolve_factor(const FactorTable& factors, const std::string& text) {
  const auto& names = factors.names();
  if (auto it = std::find(names.begin(), names.end(), text); it != names.end()) {
    return static_cast<std::size_t>(it - names.begin());
  }
  const auto idx = parse_list<std::size_t>(text, "factor");
  if (idx.size() != 1 || idx[0] >= factors.num_factors()) {
    throw Error(ErrorKind::IndexOutOfRange, "unknown factor '" + text + "'");
  }
  return idx[0];
}

int cmd_probe(const ProbeOptions& opts, std::ostream& out, std::ostream& err) {
  apply_threads(opts.common);
  const EntropyBase base = parse_base(opts.common.base);
  const Dataset data = load(opts.common);

  if (opts.kind == "downstream") {
    ProtocolParams protocol;
    protocol.seed = opts.seed;
    const auto sel = topk_evaluate(data.reps, data.factors, opts.k, opts.common.bins, base);
    const RepresentationMatrix sub = data.reps.select_columns(sel.selection.picked);
    std::string text = "space,dims,accuracy\n";
    text += "full," + std::to_string(data.reps.dims()) + "," +
            format_double(downstream_logistic(data.reps, data.factors, protocol)) + "\n";
    text += "top" + std::to_string(opts.k) + "," + std::to_string(sub.dims()) + "," +
            format_double(downstream_logistic(sub, data.factors, protocol)) + "\n";
    emit(text, opts.common.output, out);
    return kOk;
  }
  if (opts.kind != "variance") {
    throw Error(ErrorKind::ParseError, "probe kind must be variance or downstream");
  }

  RepresentationMatrix reps = data.reps;
  std::vector<std::size_t> labels(reps.dims());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
  if (opts.reduce.starts_with("pca:")) {
    const auto target = parse_list<std::size_t>(opts.reduce.substr(4), "PCA dimension").at(0);
    PcaResult pca = pca_reduce(reps, target);
    if (pca.rank_deficient) err << "warning: PCA rank " << pca.rank << " < " << target << "\n";
    reps = std::move(pca.projected);
    labels.resize(reps.dims());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
  } else if (opts.reduce.starts_with("topk:")) {
    const auto k = parse_list<std::size_t>(opts.reduce.substr(5), "k").at(0);
    if (k == 0) throw Error(ErrorKind::ParseError, "k must be at least 1");
    const ImportanceMatrix imp = importance_matrix(mi_matrix(reps, data.factors, opts.common.bins, base));
    labels = topk_select(imp.relevance, imp.scores, k).picked;
    reps = reps.select_columns(labels);
  } else if (opts.reduce != "none") {
    throw Error(ErrorKind::ParseError, "--reduce must be none, pca:N or topk:K");
  }

  ManipulationOptions mopts;
  if (opts.mode == "single") {
    mopts.mode = ManipulationMode::single;
    mopts.assignment = opts.assignment;
  } else if (opts.mode != "average") {
    throw Error(ErrorKind::ParseError, "mode must be average or single");
  }
  const std::size_t factor = resolve_factor(data.factors, opts.factor);
  const auto profile = manipulation_variance(reps, data.factors, factor, mopts);
  std::string text = "dim,variance\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    text += std::to_string(labels[i]) + "," + format_double(profile[i]) + "\n";
  }
  emit(text, opts.common.output, out);
  return kOk;
}

}  // namespace

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"med", "topk_med", "mig",       "sap",
                                                 "dci", "betavae",  "factorvae", "downstream"};
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disentanglement metrics for (representation, factor) datasets", "dismet"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "compute metrics over seeds into a JSON report");
  add_common(eval_cmd, eval.common, true);
  eval_cmd->add_option("--metrics", eval.metrics, "comma-separated metric names");
  eval_cmd->add_option("--seeds", eval.seeds, "comma-separated seeds");
  eval_cmd->add_option("--k", eval.k, "k for topk_med");
  eval_cmd->add_option("--lambda", eval.lambda, "lasso penalty for dci");
  eval_cmd->add_option("--batch-size", eval.protocol.batch_size);
  eval_cmd->add_option("--num-train", eval.protocol.num_train);
  eval_cmd->add_option("--num-eval", eval.protocol.num_eval);
  eval_cmd->add_option("--prune-threshold", eval.protocol.prune_threshold,
                       "prune_dims.threshold for factorvae");

  ScenarioOptions scenario;
  auto* scenario_cmd = app.add_subcommand("scenario", "run a linear scenario against its oracles");
  add_common(scenario_cmd, scenario.common, false);
  scenario_cmd->add_option("--kind", scenario.kind, "duplicated, copy-average or weighted-mix");
  scenario_cmd->add_option("--dims", scenario.dims, "comma-separated latent dimensions");
  scenario_cmd->add_option("--replication", scenario.replication, "copies of each combination")
      ->check(CLI::PositiveNumber);

  ScenarioOptions sweep_opts;
  sweep_opts.dims = "3,10,100,1000";
  auto* sweep_cmd = app.add_subcommand("sweep", "metric curves over latent dimension");
  add_common(sweep_cmd, sweep_opts.common, false);
  sweep_cmd->add_option("--kind", sweep_opts.kind);
  sweep_cmd->add_option("--dims", sweep_opts.dims);
  sweep_cmd->add_option("--metrics", sweep_opts.metrics,
                        "med, med_analytic, topk_med, mig, dci_enumerated, dci_stated");

  TopKOptions topk;
  auto* topk_cmd = app.add_subcommand("topk", "Top-k selection and score");
  add_common(topk_cmd, topk.common, true);
  topk_cmd->add_option("--k", topk.k);
  topk_cmd->add_option("--k-list", topk.k_list, "comma-separated k values for an ablation");

  TopKOptions cooccur;
  auto* cooccur_cmd = app.add_subcommand("cooccur", "factor co-occurrence of MI over Top-k dims");
  add_common(cooccur_cmd, cooccur.common, true);
  cooccur_cmd->add_option("--k", cooccur.k);
  cooccur_cmd->add_flag("--all", cooccur.all_dims, "use every dimension instead of Top-k");

  CommonOptions heat;
  auto* heat_cmd = app.add_subcommand("heatmap", "K x D importance heatmap CSV");
  add_common(heat_cmd, heat, true);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic factor table and codes");
  gen_cmd->add_option("--dataset", gen.dataset, "built-in dataset layout");
  gen_cmd->add_option("--cardinalities", gen.cardinalities, "custom cardinalities, e.g. 3,4");
  gen_cmd->add_option("--scenario", gen.scenario, "kind:D[:replication]");
  gen_cmd->add_option("--mode", gen.mode, "full or sample");
  gen_cmd->add_option("--n", gen.n, "rows in sample mode");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--encoder", gen.encoders, "encoder stage (repeatable)");
  gen_cmd->add_option("--out-factors", gen.out_factors)->required();
  gen_cmd->add_option("--out-reps", gen.out_reps)->required();
  gen_cmd->add_option("--threads", gen.threads);

  ProbeOptions probe;
  auto* probe_cmd = app.add_subcommand("probe", "manipulation variance or downstream accuracy");
  add_common(probe_cmd, probe.common, true);
  probe_cmd->add_option("--kind", probe.kind, "variance or downstream");
  probe_cmd->add_option("--factor", probe.factor, "swept factor (index or name)");
  probe_cmd->add_option("--mode", probe.mode, "average or single");
  probe_cmd->add_option("--assignment", probe.assignment);
  probe_cmd->add_option("--reduce", probe.reduce, "none, pca:N or topk:K");
  probe_cmd->add_option("--k", probe.k, "k for the downstream Top-k subspace");
  probe_cmd->add_option("--seed", probe.seed);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, out);
    if (scenario_cmd->parsed()) return cmd_scenario(scenario, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, out, err);
    if (topk_cmd->parsed()) return cmd_topk(topk, out);
    if (cooccur_cmd->parsed()) return cmd_cooccur(cooccur, out);
    if (heat_cmd->parsed()) return cmd_heatmap(heat, out);
    if (gen_cmd->parsed()) return cmd_gen(gen, err);
    if (probe_cmd->parsed()) return cmd_probe(probe, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kMetricError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMetricError;
  }
  return kInputError;
}

}  // namespace dismet::cli
