/*
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "maya/cli.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "maya/allocation.hpp"
#include "maya/clustering.hpp"
#include "maya/error.hpp"
#include "maya/eval.hpp"
#include "maya/io.hpp"
#include "maya/parallel.hpp"
#include "maya/sweep.hpp"
#include "maya/synth.hpp"

namespace maya {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string item = trim(text.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

/// Accepts either "a,b,c" or a JSON array, as config files may use both.
std::string list_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (!value.is_array()) return value.dump();
  std::string out;
  for (const auto& item : value) {
    if (!out.empty()) out += ',';
    out += item.is_string() ? item.get<std::string>() : item.dump();
  }
  return out;
}

std::vector<std::size_t> parse_count_list(const json& value) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(list_text(value))) out.push_back(parse_count(item));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
  return out;
}

// Holds the flag storage of one subcommand and merges defaults, the JSON
// config file and explicitly passed flags, in increasing priority.
class Resolver {
 public:
  Resolver(CLI::App* app, json defaults) : app_(app), defaults_(std::move(defaults)) {}

  template <typename T>
  void option(const std::string& flags, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>(defaults_.at(key).get<T>());
    CLI::Option* opt = app_->add_option(flags, *value, help)->capture_default_str();
    bindings_.push_back({opt, key, [value] { return json(*value); }});
  }

  void flag(const std::string& flags, const std::string& key, const std::string& help) {
    auto value = std::make_shared<bool>(false);
    CLI::Option* opt = app_->add_flag(flags, *value, help);
    bindings_.push_back({opt, key, [value] { return json(*value); }});
  }

  json resolve(const std::string& config_path) const {
    json cfg = defaults_;
    if (!config_path.empty()) {
      json file;
      try {
        file = json::parse(io::read_file(config_path));
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, config_path + ": " + e.what());
      }
      if (!file.is_object()) {
        throw Error(ErrorCode::InvalidArgument, config_path + ": expected a JSON object");
      }
      for (const auto& [raw_key, value] : file.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '-', '_');
        if (!cfg.contains(key)) {
          throw Error(ErrorCode::InvalidArgument, config_path + ": unknown key '" + raw_key + "'");
        }
        cfg[key] = value;
      }
    }
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) cfg[b.key] = b.get();
    }
    return cfg;
  }

 private:
  struct Binding {
    CLI::Option* option;
    std::string key;
    std::function<json()> get;
  };
  CLI::App* app_;
  json defaults_;
  std::vector<Binding> bindings_;
};

struct Command {
  CLI::App* app = nullptr;
  std::unique_ptr<Resolver> resolver;
  std::string config_path;
  std::string out_dir = "maya_out";
  std::string input;
  std::function<int(const Command&)> run;
};

json maya_defaults() {
  return {{"metric", "wass"},  {"tau", 7},        {"reps", 1000},
          {"seed", 0},         {"epsilon", 0.1},  {"lambda", 1.0},
          {"on_cumulative", false},
          {"candidates", "EpsilonGreedy,UCB1,LinUCB,Uniform"},
          {"workers", 0}};
}

void add_maya_options(Resolver& r, bool single_metric) {
  r.option<std::string>("--metric", "metric",
                        single_metric ? "Similarity metric: kl, wass or dtw"
                                      : "Comma-separated similarity metrics (kl, wass, dtw)");
  r.option<std::size_t>("--tau", "tau", "Window size");
  r.option<std::size_t>("--reps", "reps", "Repetitions per expert");
  r.option<std::uint64_t>("--seed", "seed", "Master seed");
  r.option<double>("--epsilon", "epsilon", "Exploration rate of epsilon-greedy");
  r.option<double>("--lambda", "lambda", "Ridge regulariser of LinUCB");
  r.flag("--on-cumulative", "on_cumulative", "Compare running sums inside the window");
  r.option<std::string>("--candidates", "candidates", "Comma-separated candidate pool");
  r.option<std::size_t>("--workers", "workers", "Worker threads (0 = all cores)");
}

std::size_t workers_of(const json& cfg) {
  const auto w = cfg.at("workers").get<std::size_t>();
  return w == 0 ? default_workers() : w;
}

std::vector<PolicyKind> parse_candidates(const json& value) {
  std::vector<PolicyKind> out;
  for (const auto& name : split_list(list_text(value))) {
    const PolicyKind kind = parse_policy_kind(name);
    if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "candidate pool is empty");
  return out;
}

std::vector<SimilarityKind> parse_metrics(const json& value) {
  std::vector<SimilarityKind> out;
  for (const auto& name : split_list(list_text(value))) {
    const SimilarityKind kind = parse_similarity_kind(name);
    if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "no metric given");
  return out;
}

/// Rewrites names into canonical spellings so the manifest echoes exactly
/// what was run.
void canonicalise(json& cfg) {
  if (cfg.contains("candidates")) {
    json names = json::array();
    for (PolicyKind k : parse_candidates(cfg["candidates"])) names.push_back(to_string(k));
    cfg["candidates"] = names;
  }
  if (cfg.contains("metric")) {
    json names = json::array();
    for (SimilarityKind k : parse_metrics(cfg["metric"])) names.push_back(short_name(k));
    cfg["metric"] = names.size() == 1 ? names[0] : names;
  }
}

MayaConfig maya_config(const json& cfg) {
  MayaConfig c;
  const auto metrics = parse_metrics(cfg.at("metric"));
  c.metric = metrics.front();
  c.tau = cfg.at("tau").get<std::size_t>();
  c.repetitions = cfg.at("reps").get<std::size_t>();
  c.seed = cfg.at("seed").get<std::uint64_t>();
  c.policy.epsilon = cfg.at("epsilon").get<double>();
  c.policy.lambda = cfg.at("lambda").get<double>();
  c.distance.on_cumulative = cfg.at("on_cumulative").get<bool>();
  c.candidates = parse_candidates(cfg.at("candidates"));
  validate_config(c);
  return c;
}

std::size_t min_horizon(std::span<const Trajectory> dataset) {
  std::size_t h = dataset.front().horizon();
  for (const auto& t : dataset) h = std::min(h, t.horizon());
  return h;
}

io::Dataset load_valid_dataset(const std::string& path) {
  io::Dataset ds = io::load_dataset(path);
  std::size_t count = 0;
  for (const auto& traj : ds.trajectories) {
    for (const auto& v : validate_trajectory(traj)) {
      std::cerr << "violation: " << v.describe() << '\n';
      ++count;
    }
  }
  if (count > 0) {
    throw Error(ErrorCode::InvalidArgument,
                path + ": " + std::to_string(count) + " trajectory violation(s)");
  }
  return ds;
}

void check_windows(std::span<const Trajectory> dataset, std::span<const std::size_t> taus) {
  const std::size_t h = min_horizon(dataset);
  for (std::size_t tau : taus) {
    if (tau > h) {
      throw Error(ErrorCode::WindowTooLarge, "tau " + std::to_string(tau) +
                                                 " exceeds the shortest trajectory (T = " +
                                                 std::to_string(h) + ")");
    }
  }
}

std::string file_stem_for(const std::string& id, std::set<std::string>& used) {
  std::string stem;
  for (char c : id) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    stem.push_back(keep ? c : '_');
  }
  if (stem.empty() || stem.front() == '.') stem.insert(stem.begin(), '_');
  std::string unique = stem;
  for (std::size_t n = 2; used.count(unique); ++n) unique = stem + "_" + std::to_string(n);
  used.insert(unique);
  return unique;
}

json input_digests(const std::vector<fs::path>& files) {
  json out = json::array();
  for (const auto& f : files) {
    out.push_back({{"path", f.generic_string()}, {"sha256", io::sha256_file(f)}});
  }
  return out;
}

void write_manifest(const fs::path& out, const std::string& subcommand, json cfg,
                    const json& inputs, json extra = json::object()) {
  cfg.erase("workers");
  json m = {{"tool", "maya"},
            {"version", MAYA_VERSION},
            {"subcommand", subcommand},
            {"seed", cfg.value("seed", std::uint64_t{0})},
            {"config", cfg},
            {"inputs", inputs}};
  for (const auto& [k, v] : extra.items()) m[k] = v;
  io::write_file(out / "manifest.json", m.dump(2) + "\n");
}

template <typename Writer>
void write_text(const fs::path& path, Writer&& writer) {
  std::ostringstream ss;
  writer(ss);
  io::write_file(path, ss.str());
}

std::vector<io::NamedSeries> expert_cumulative(std::span<const Trajectory> dataset) {
  std::vector<io::NamedSeries> out;
  for (const auto& t : dataset) {
    out.push_back({t.expert_id, RegretSeries::from_instantaneous(t.expert_regrets()).cumulative});
  }
  return out;
}

void print_moments(std::ostream& os, const std::string& label, const CostMoments& m) {
  os << label << "  MSE " << io::fixed(m.mse) << " +/- " << io::fixed(m.mse_std) << "  MAE "
     << io::fixed(m.mae) << " +/- " << io::fixed(m.mae_std) << '\n';
}

int cmd_fit(const Command& cmd) {
  json cfg = cmd.resolver->resolve(cmd.config_path);
  canonicalise(cfg);
  const MayaConfig mc = maya_config(cfg);
  const io::Dataset ds = load_valid_dataset(cmd.input);
  check_windows(ds.trajectories, std::span(&mc.tau, 1));

  const DatasetFit fit = fit_dataset(ds.trajectories, mc, workers_of(cfg));
  const fs::path out = cmd.out_dir;
  fs::create_directories(out / "runs");

  const SweepRow row{mc.tau, mc.metric, fit.moments, mc.tau == min_horizon(ds.trajectories)};
  write_text(out / "metrics.csv", [&](std::ostream& os) { io::write_metrics_csv(os, std::span(&row, 1)); });

  std::set<std::string> used;
  std::vector<io::NamedSeries> simulated;
  std::ostringstream per_expert;
  per_expert << "expert_id,horizon,mean_total_cost,std_total_cost\n";
  for (std::size_t j = 0; j < fit.experts.size(); ++j) {
    const ExpertSummary& s = fit.experts[j];
    const std::string stem = file_stem_for(s.expert_id, used);
    io::write_file(out / "runs" / (stem + ".json"), io::summary_to_json(s).dump(2) + "\n");
    write_text(out / "runs" / (stem + "_regret.csv"),
               [&](std::ostream& os) { io::write_regret_csv(os, s.representative.regrets); });
    simulated.push_back({s.expert_id, s.representative.regrets.cumulative});
    per_expert << s.expert_id << ',' << ds.trajectories[j].horizon() << ','
               << io::fixed(s.mean_total) << ',' << io::fixed(s.std_total) << '\n';
  }
  io::write_file(out / "per_expert.csv", per_expert.str());
  write_text(out / "simulated_regret.csv", [&](std::ostream& os) { io::write_series_csv(os, simulated); });
  const auto real = expert_cumulative(ds.trajectories);
  write_text(out / "real_regret.csv", [&](std::ostream& os) { io::write_series_csv(os, real); });
  write_manifest(out, "fit", cfg, input_digests(ds.files), {{"dataset", cmd.input}});

  print_moments(std::cout,
                std::string(short_name(mc.metric)) + " tau=" + std::to_string(mc.tau), fit.moments);
  return kExitOk;
}

int cmd_sweep(const Command& cmd, const std::string& taus_text) {
  json cfg = cmd.resolver->resolve(cmd.config_path);
  if (!taus_text.empty()) cfg["taus"] = taus_text;
  canonicalise(cfg);
  const io::Dataset ds = load_valid_dataset(cmd.input);
  const std::size_t h = min_horizon(ds.trajectories);

  std::vector<std::size_t> duplicates;
  const std::vector<std::size_t> taus = parse_tau_list(list_text(cfg.at("taus")), h, &duplicates);
  for (std::size_t d : duplicates) {
    std::cerr << "warning: tau " << d << " listed more than once; kept once\n";
  }
  check_windows(ds.trajectories, taus);
  const std::vector<SimilarityKind> metrics = parse_metrics(cfg.at("metric"));
  json single = cfg;
  single["metric"] = short_name(metrics.front());
  const MayaConfig base = maya_config(single);

  const auto rows = sweep_tau(ds.trajectories, base, taus, metrics, workers_of(cfg));
  const fs::path out = cmd.out_dir;
  write_text(out / "sweep.csv", [&](std::ostream& os) { io::write_metrics_csv(os, rows); });
  write_manifest(out, "sweep", cfg, input_digests(ds.files),
                 {{"dataset", cmd.input}, {"taus_resolved", taus}});
  for (const auto& r : rows) {
    print_moments(std::cout, std::string(short_name(r.metric)) + " tau=" + std::to_string(r.tau),
                  r.moments);
  }
  return kExitOk;
}

int cmd_explain(const Command& cmd) {
  json cfg = cmd.resolver->resolve(cmd.config_path);
  canonicalise(cfg);
  const MayaConfig mc = maya_config(cfg);
  const io::Dataset ds = load_valid_dataset(cmd.input);
  check_windows(ds.trajectories, std::span(&mc.tau, 1));

  const DatasetFit fit = fit_dataset(ds.trajectories, mc, workers_of(cfg));
  const fs::path out = cmd.out_dir;
  write_text(out / "alignment.csv", [&](std::ostream& os) { io::write_alignment_csv(os, fit.alignment); });

  json attribution = io::alignment_to_json(fit.alignment);
  json experts = json::array();
  for (const auto& s : fit.experts) {
    const MayaRun& run = s.representative;
    json trials = json::array();
    for (std::size_t k = 0; k < run.xi.size(); ++k) {
      trials.push_back({{"t", k + 2},
                        {"policy", to_string(run.xi[k])},
                        {"action", std::string(1, to_char(run.actions[k]))},
                        {"distance", run.min_distance[k]},
                        {"cost", run.cost.costs[k]}});
    }
    experts.push_back({{"expert_id", s.expert_id}, {"repetition", run.repetition}, {"trials", trials}});
  }
  attribution["experts"] = experts;
  io::write_file(out / "attribution.json", attribution.dump(2) + "\n");
  write_manifest(out, "explain", cfg, input_digests(ds.files), {{"dataset", cmd.input}});

  for (const auto& [kind, p] : fit.alignment.proportions) {
    std::cout << to_string(kind) << ' ' << io::fixed(100.0 * p, 1) << "% +/- "
              << io::fixed(100.0 * fit.alignment.std_over_repetitions.at(kind), 1) << "%\n";
  }
  return kExitOk;
}

struct LoadedSeries {
  std::vector<io::NamedSeries> series;
  std::vector<fs::path> files;
};

LoadedSeries load_series(const std::string& path) {
  if (io::looks_like_series_csv(path)) {
    std::istringstream in(io::read_file(path));
    LoadedSeries out{io::read_series_csv(in), {path}};
    if (out.series.empty()) throw Error(ErrorCode::Io, path + ": no series");
    return out;
  }
  io::Dataset ds = load_valid_dataset(path);
  return {expert_cumulative(ds.trajectories), ds.files};
}

/// Reorders `simulated` to follow `real` by id, or keeps file order when the
/// ids do not line up but the counts do.
std::vector<std::vector<double>> pair_series(const std::vector<io::NamedSeries>& real,
                                             const std::vector<io::NamedSeries>& simulated) {
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < simulated.size(); ++i) by_id.emplace(simulated[i].id, i);
  std::vector<std::vector<double>> out;
  bool by_name = true;
  for (const auto& r : real) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      by_name = false;
      break;
    }
    out.push_back(simulated[it->second].values);
  }
  if (by_name) return out;
  if (real.size() != simulated.size()) {
    throw Error(ErrorCode::LengthMismatch, "real and simulated inputs hold " +
                                               std::to_string(real.size()) + " and " +
                                               std::to_string(simulated.size()) + " series");
  }
  std::cerr << "warning: series ids differ; pairing real and simulated series by position\n";
  out.clear();
  for (const auto& s : simulated) out.push_back(s.values);
  return out;
}

int cmd_cluster(const Command& cmd, const std::string& real_path, const std::string& sim_path) {
  json cfg = cmd.resolver->resolve(cmd.config_path);
  const ClusterMethod method = parse_cluster_method(cfg.at("method").get<std::string>());
  cfg["method"] = method == ClusterMethod::DBAKMeans ? "dba" : "euclidean";
  const auto k = cfg.at("k").get<std::size_t>();
  const auto seed = cfg.at("seed").get<std::uint64_t>();

  const LoadedSeries real = load_series(real_path);
  const LoadedSeries sim = load_series(sim_path);
  std::vector<std::vector<double>> real_values;
  std::vector<std::string> ids;
  for (const auto& s : real.series) {
    real_values.push_back(s.values);
    ids.push_back(s.id);
  }
  std::vector<std::vector<double>> sim_values = pair_series(real.series, sim.series);

  ClusterModel model = fit_clusters(real_values, method, k, seed);
  model.ids = ids;
  if (method == ClusterMethod::EuclideanKMeans) {
    for (auto& s : sim_values) {
      if (s.size() > model.max_len) s = truncate(s, model.max_len);
    }
  }
  std::vector<std::size_t> sim_labels;
  for (const auto& s : sim_values) sim_labels.push_back(nearest_centroid(model, s));
  const double acc = cluster_acc(model, sim_values);
  const auto diff = difference_surface(model, real_values, sim_values);

  const fs::path out = cmd.out_dir;
  write_text(out / "assignments.csv",
             [&](std::ostream& os) { io::write_assignments_csv(os, model, ids, sim_labels); });
  write_text(out / "difference.csv", [&](std::ostream& os) { io::write_difference_csv(os, diff); });
  std::vector<io::NamedSeries> centroids;
  for (std::size_t c = 0; c < model.centroids.size(); ++c) {
    centroids.push_back({"cluster" + std::to_string(c), model.centroids[c]});
  }
  write_text(out / "centroids.csv", [&](std::ostream& os) { io::write_series_csv(os, centroids); });
  const json summary = {{"method", to_string(method)},
                        {"k", k},
                        {"cluster_acc", acc},
                        {"series", real_values.size()},
                        {"max_len", model.max_len},
                        {"iterations", model.iterations},
                        {"degenerate", model.degenerate},
                        {"objective_history", model.objective_history}};
  io::write_file(out / "cluster_acc.json", summary.dump(2) + "\n");
  std::vector<fs::path> files = real.files;
  files.insert(files.end(), sim.files.begin(), sim.files.end());
  write_manifest(out, "cluster", cfg, input_digests(files),
                 {{"real", real_path}, {"simulated", sim_path}});

  if (model.degenerate) std::cerr << "warning: degenerate clustering (empty or duplicate cluster)\n";
  std::cout << "ClusterAcc " << io::fixed(acc) << '\n';
  return kExitOk;
}

int cmd_bounds(const Command& cmd) {
  json cfg = cmd.resolver->resolve(cmd.config_path);
  canonicalise(cfg);
  const auto horizons = parse_count_list(cfg.at("T"));
  const auto periods = parse_count_list(cfg.at("S"));
  const auto reps = cfg.at("reps").get<std::size_t>();
  const auto seed = cfg.at("seed").get<std::uint64_t>();
  const SimilarityKind metric = parse_metrics(cfg.at("metric")).front();
  cfg["T"] = horizons;
  cfg["S"] = periods;

  const auto grid = bound_grid(horizons, periods);
  const BoundReport report = verify_bounds(grid, reps, metric, seed, workers_of(cfg));
  const fs::path out = cmd.out_dir;
  write_text(out / "bounds.csv", [&](std::ostream& os) { io::write_bounds_csv(os, report); });
  write_manifest(out, "bounds", cfg, json::array());

  std::cout << report.checks.size() << " scenarios, " << report.violations << " violation(s)\n";
  for (const auto& c : report.checks) {
    if (c.violated) {
      std::cerr << "violated: " << to_string(c.scenario.regime) << " T=" << c.scenario.horizon
                << " S=" << c.scenario.period << " tau=" << c.scenario.tau << " gap "
                << io::fixed(c.max_gap) << " > bound " << io::fixed(c.scenario.bound) << '\n';
    }
  }
  return report.violations == 0 ? kExitOk : kExitInvalid;
}

int cmd_validate(const Command& cmd, const std::string& manifest_path) {
  if (cmd.input.empty() && manifest_path.empty()) {
    throw Error(ErrorCode::InvalidArgument, "validate needs a dataset path or --manifest");
  }
  int status = kExitOk;
  if (!cmd.input.empty()) {
    const io::Dataset ds = io::load_dataset(cmd.input);
    std::size_t trials = 0;
    std::size_t violations = 0;
    for (const auto& t : ds.trajectories) {
      trials += t.horizon();
      for (const auto& v : validate_trajectory(t)) {
        std::cerr << "violation: " << v.describe() << '\n';
        ++violations;
      }
    }
    std::cout << ds.trajectories.size() << " trajectories, " << trials << " trials, "
              << violations << " violation(s)\n";
    if (violations > 0) status = kExitInvalid;
  }
  if (!manifest_path.empty()) {
    json manifest;
    try {
      manifest = json::parse(io::read_file(manifest_path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::Parse, manifest_path + ": " + e.what());
    }
    std::size_t drift = 0;
    for (const auto& entry : manifest.at("inputs")) {
      const std::string path = entry.at("path").get<std::string>();
      const std::string expected = entry.at("sha256").get<std::string>();
      std::error_code ec;
      if (!fs::is_regular_file(path, ec)) {
        std::cerr << "drift: " << path << " is missing\n";
        ++drift;
      } else if (io::sha256_file(path) != expected) {
        std::cerr << "drift: " << path << " changed\n";
        ++drift;
      }
    }
    std::cout << manifest.at("inputs").size() << " input(s) checked, " << drift << " drifted\n";
    if (drift > 0) status = kExitInvalid;
  }
  return status;
}

int cmd_generate(const Command& cmd, std::size_t experts, std::size_t horizon,
                 std::uint64_t seed) {
  if (experts == 0 || horizon < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least one expert and a horizon of 2");
  }
  const auto population = mixed_population(experts, horizon, seed);
  DatasetMeta meta;
  meta.name = "synthetic-mixed";
  meta.location = "synthetic";
  meta.horizon = horizon;
  const fs::path out = cmd.out_dir;
  io::save_dataset(out, meta, population);
  const json cfg = {{"experts", experts}, {"horizon", horizon}, {"seed", seed}};
  write_manifest(out, "generate", cfg, json::array());
  std::cout << "wrote " << experts << " trajectories to " << out.generic_string() << '\n';
  return kExitOk;
}

int exit_code_for(const Error& e) { return e.code() == ErrorCode::Io ? kExitIo : kExitInvalid; }

}  // namespace

std::vector<std::size_t> parse_tau_list(std::string_view text, std::size_t horizon,
                                        std::vector<std::size_t>* duplicates) {
  std::vector<std::size_t> expanded;
  for (const auto& item : split_list(text)) {
    if (item == "T" || item == "t") {
      if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "'T' needs a known horizon");
      expanded.push_back(horizon);
      continue;
    }
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      expanded.push_back(parse_count(item));
      continue;
    }
    const std::size_t lo = parse_count(trim(std::string_view(item).substr(0, dots)));
    const std::size_t hi = parse_count(trim(std::string_view(item).substr(dots + 2)));
    if (lo > hi) throw Error(ErrorCode::InvalidArgument, "empty range '" + item + "'");
    for (std::size_t v = lo; v <= hi; ++v) expanded.push_back(v);
  }
  if (expanded.empty()) throw Error(ErrorCode::InvalidArgument, "empty tau list");

  std::vector<std::size_t> out;
  for (std::size_t v : expanded) {
    if (std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(v);
    } else if (duplicates) {
      duplicates->push_back(v);
    }
  }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Windowed regret-matching imitation of two-choice decision makers"};
  app.name("maya");
  app.set_version_flag("--version", MAYA_VERSION);
  app.require_subcommand(1);

  std::deque<Command> commands;
  auto add_command = [&](const std::string& name, const std::string& help, json defaults) -> Command& {
    Command& c = commands.emplace_back();
    c.app = app.add_subcommand(name, help);
    c.resolver = std::make_unique<Resolver>(c.app, std::move(defaults));
    c.app->add_option("--config", c.config_path, "JSON config file (flags take precedence)");
    c.app->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    return c;
  };

  Command& fit = add_command("fit", "Imitate every expert of a dataset", maya_defaults());
  fit.app->add_option("dataset", fit.input, "Dataset directory or CSV file")->required();
  add_maya_options(*fit.resolver, true);
  fit.run = cmd_fit;

  json sweep_defaults = maya_defaults();
  sweep_defaults["metric"] = "kl,wass,dtw";
  sweep_defaults["taus"] = "3..10,20,T";
  Command& sweep = add_command("sweep", "Error table over window sizes and metrics", sweep_defaults);
  sweep.app->add_option("dataset", sweep.input, "Dataset directory or CSV file")->required();
  add_maya_options(*sweep.resolver, false);
  sweep.resolver->option<std::string>("--taus", "taus", "Windows, e.g. 3..10,20,T");
  sweep.run = [](const Command& c) { return cmd_sweep(c, {}); };

  Command& explain = add_command("explain", "Which candidate policy drives each decision",
                                 maya_defaults());
  explain.app->add_option("dataset", explain.input, "Dataset directory or CSV file")->required();
  add_maya_options(*explain.resolver, true);
  explain.run = cmd_explain;

  std::string real_path;
  std::string sim_path;
  Command& cluster = add_command("cluster", "Cluster real regret curves and score the simulated ones",
                                 {{"method", "dba"}, {"k", 2}, {"seed", 0}});
  cluster.app->add_option("--real", real_path, "Real series CSV or dataset")->required();
  cluster.app->add_option("--simulated", sim_path, "Simulated series CSV or dataset")->required();
  cluster.resolver->option<std::string>("--method", "method", "euclidean or dba");
  cluster.resolver->option<std::size_t>("--k", "k", "Number of clusters");
  cluster.resolver->option<std::uint64_t>("--seed", "seed", "Master seed");
  cluster.run = [&](const Command& c) { return cmd_cluster(c, real_path, sim_path); };

  Command& bounds = add_command("bounds", "Check regret-gap ceilings on synthetic experts",
                                {{"T", "20,40,100,200"},
                                 {"S", "5,10,20"},
                                 {"reps", 100},
                                 {"metric", "wass"},
                                 {"seed", 0},
                                 {"workers", 0}});
  bounds.app->alias("bounds-check");
  bounds.resolver->option<std::string>("--T,--horizons", "T", "Comma-separated horizons");
  bounds.resolver->option<std::string>("--S,--periods", "S", "Comma-separated cyclic periods");
  bounds.resolver->option<std::size_t>("--reps", "reps", "Repetitions per scenario");
  bounds.resolver->option<std::string>("--metric", "metric", "Similarity metric");
  bounds.resolver->option<std::uint64_t>("--seed", "seed", "Master seed");
  bounds.resolver->option<std::size_t>("--workers", "workers", "Worker threads (0 = all cores)");
  bounds.run = cmd_bounds;

  std::string manifest_path;
  Command& validate = add_command("validate", "Check a dataset and/or a manifest's inputs",
                                  json::object());
  validate.app->add_option("dataset", validate.input, "Dataset directory or CSV file");
  validate.app->add_option("--manifest", manifest_path, "Manifest whose input digests to verify");
  validate.run = [&](const Command& c) { return cmd_validate(c, manifest_path); };

  std::size_t gen_experts = 16;
  std::size_t gen_horizon = 40;
  std::uint64_t gen_seed = 0;
  Command& generate = add_command("generate", "Write a synthetic mixed fast/slow learner dataset",
                                  json::object());
  generate.app->add_option("--experts", gen_experts, "Number of experts")->capture_default_str();
  generate.app->add_option("--horizon", gen_horizon, "Trials per expert")->capture_default_str();
  generate.app->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  generate.run = [&](const Command& c) { return cmd_generate(c, gen_experts, gen_horizon, gen_seed); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    for (const Command& c : commands) {
      if (c.app->parsed()) return c.run(c);
    }
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const json::exception& e) {
    std::cerr << "error: bad configuration value: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace maya
