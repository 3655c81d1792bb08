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
#include "maya/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

namespace maya::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_error(line, "bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_error(line, "bad integer '" + s + "'");
  return v;
}

bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) return true;
  }
  return false;
}

std::vector<std::string> read_header(std::istream& in, std::size_t& lineno) {
  std::string line;
  if (!next_data_line(in, line, lineno)) throw Error(ErrorCode::Parse, "missing header row");
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
  return split_row(line);
}

}  // namespace

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<Trajectory> read_trajectories_csv(std::istream& in, const DatasetMeta& meta) {
  std::size_t lineno = 0;
  const std::vector<std::string> header = read_header(in, lineno);
  const std::array<std::string, 6> required = {"expert_id", "trial",  "stim_left",
                                               "stim_right", "choice", "reward"};
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const auto& name : required) {
    if (!col.count(name)) parse_error(lineno, "missing column '" + name + "'");
  }
  // Extra covariates are named x2, x3, ... and appended to the context in order.
  std::vector<std::size_t> extra;
  for (std::size_t k = 2;; ++k) {
    const auto it = col.find("x" + std::to_string(k));
    if (it == col.end()) break;
    extra.push_back(it->second);
  }

  std::vector<Trajectory> out;
  std::map<std::string, std::size_t> by_id;
  std::string line;
  while (next_data_line(in, line, lineno)) {
    const std::vector<std::string> f = split_row(line);
    if (f.size() != header.size()) parse_error(lineno, "expected " + std::to_string(header.size()) + " fields");
    std::vector<double> features{parse_double(f[col["stim_left"]], lineno),
                                 parse_double(f[col["stim_right"]], lineno)};
    for (std::size_t c : extra) features.push_back(parse_double(f[c], lineno));
    const long long trial = parse_int(f[col["trial"]], lineno);
    if (trial < 1) parse_error(lineno, "trial numbers start at 1");

    Trial t;
    t.index = static_cast<std::size_t>(trial);
    t.context = Context(std::move(features));
    try {
      t.expert_action = parse_side(f[col["choice"]]);
    } catch (const Error&) {
      parse_error(lineno, "choice must be L or R");
    }
    t.reward = static_cast<int>(parse_int(f[col["reward"]], lineno));

    const std::string& id = f[col["expert_id"]];
    if (id.empty()) parse_error(lineno, "empty expert_id");
    auto [it, inserted] = by_id.try_emplace(id, out.size());
    if (inserted) out.push_back(Trajectory{id, {}, meta});
    out[it->second].trials.push_back(std::move(t));
  }
  return out;
}

void write_trajectories_csv(std::ostream& out, std::span<const Trajectory> trajectories) {
  std::size_t dim = 2;
  for (const auto& tr : trajectories) {
    for (const auto& t : tr.trials) dim = std::max(dim, t.context.dim());
  }
  out << "expert_id,trial,stim_left,stim_right,choice,reward";
  for (std::size_t k = 2; k < dim; ++k) out << ",x" << k;
  out << '\n';
  for (const auto& tr : trajectories) {
    for (const auto& t : tr.trials) {
      const auto& f = t.context.features();
      out << tr.expert_id << ',' << t.index << ',' << shortest(f[0]) << ',' << shortest(f[1]) << ','
          << to_char(t.expert_action) << ',' << t.reward;
      for (std::size_t k = 2; k < dim; ++k) out << ',' << (k < f.size() ? shortest(f[k]) : "0");
      out << '\n';
    }
  }
}

nlohmann::json meta_to_json(const DatasetMeta& meta) {
  return {{"name", meta.name},
          {"location", meta.location},
          {"weather", std::string(to_string(meta.weather))},
          {"horizon", meta.horizon}};
}

DatasetMeta meta_from_json(const nlohmann::json& j) {
  DatasetMeta m;
  try {
    m.name = j.value("name", std::string());
    m.location = j.value("location", std::string());
    m.weather = parse_weather(j.value("weather", std::string("Unknown")));
    m.horizon = j.value("horizon", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("meta.json: ") + e.what());
  }
  return m;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Dataset load_dataset(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw Error(ErrorCode::Io, "no such path: " + path.string());

  Dataset ds;
  std::vector<fs::path> csvs;
  fs::path meta_path;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") csvs.push_back(entry.path());
    }
    std::sort(csvs.begin(), csvs.end());
    meta_path = path / "meta.json";
  } else {
    csvs.push_back(path);
    meta_path = path.parent_path() / "meta.json";
  }
  if (csvs.empty()) throw Error(ErrorCode::Io, "no trajectory CSV files in " + path.string());

  if (fs::exists(meta_path)) {
    try {
      ds.meta = meta_from_json(nlohmann::json::parse(read_file(meta_path)));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::Parse, "meta.json: " + std::string(e.what()));
    }
    ds.files.push_back(meta_path);
  } else {
    ds.meta.name = (fs::is_directory(path) ? path : path.parent_path()).filename().string();
  }

  for (const auto& csv : csvs) {
    std::istringstream in(read_file(csv));
    try {
      auto trajs = read_trajectories_csv(in, ds.meta);
      for (auto& t : trajs) ds.trajectories.push_back(std::move(t));
    } catch (const Error& e) {
      throw Error(e.code() == ErrorCode::Parse ? ErrorCode::Parse : e.code(),
                  csv.filename().string() + ": " + e.what());
    }
    ds.files.push_back(csv);
  }
  if (ds.trajectories.empty()) throw Error(ErrorCode::Io, "dataset contains no trials");
  return ds;
}

void save_dataset(const fs::path& dir, const DatasetMeta& meta,
                  std::span<const Trajectory> trajectories) {
  fs::create_directories(dir);
  std::ostringstream csv;
  write_trajectories_csv(csv, trajectories);
  write_file(dir / "trajectories.csv", csv.str());
  write_file(dir / "meta.json", meta_to_json(meta).dump(2) + "\n");
}

void write_regret_csv(std::ostream& out, const RegretSeries& series) {
  out << "t,delta,cumulative\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << i + 1 << ',' << shortest(series.instantaneous[i]) << ','
        << shortest(series.cumulative[i]) << '\n';
  }
}

nlohmann::json run_to_json(const MayaRun& run) {
  nlohmann::json xi = nlohmann::json::array();
  for (PolicyKind k : run.xi) xi.push_back(std::string(to_string(k)));
  nlohmann::json actions = nlohmann::json::array();
  for (ActionSide a : run.actions) actions.push_back(std::string(1, to_char(a)));
  nlohmann::json dists = nlohmann::json::array();
  for (const auto& d : run.distributions) dists.push_back({d[0], d[1]});
  nlohmann::json candidates = nlohmann::json::object();
  for (const auto& [kind, series] : run.per_candidate_regrets) {
    candidates[std::string(to_string(kind))] = series.instantaneous;
  }
  return {{"expert_id", run.expert_id},
          {"repetition", run.repetition},
          {"first_decision_trial", 2},
          {"xi", xi},
          {"actions", actions},
          {"distributions", dists},
          {"min_distance", run.min_distance},
          {"cost", run.cost.costs},
          {"total_cost", run.cost.total},
          {"regrets",
           {{"instantaneous", run.regrets.instantaneous}, {"cumulative", run.regrets.cumulative}}},
          {"candidate_regrets", candidates}};
}

nlohmann::json summary_to_json(const ExpertSummary& s) {
  return {{"expert_id", s.expert_id},
          {"repetitions", s.totals.size()},
          {"mean_total_cost", s.mean_total},
          {"std_total_cost", s.std_total},
          {"total_costs", s.totals},
          {"representative_run", run_to_json(s.representative)}};
}

void write_metrics_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "side_window,metric,mean_mse,std_mse,mean_mae,std_mae\n";
  for (const auto& r : rows) {
    out << r.tau << ',' << short_name(r.metric) << ',' << fixed(r.moments.mse) << ','
        << fixed(r.moments.mse_std) << ',' << fixed(r.moments.mae) << ','
        << fixed(r.moments.mae_std) << '\n';
  }
}

void write_alignment_csv(std::ostream& out, const AlignmentReport& report) {
  out << "policy,proportion,std\n";
  for (const auto& [kind, p] : report.proportions) {
    out << to_string(kind) << ',' << fixed(p, 6) << ','
        << fixed(report.std_over_repetitions.at(kind), 6) << '\n';
  }
}

nlohmann::json alignment_to_json(const AlignmentReport& report) {
  nlohmann::json props = nlohmann::json::object();
  nlohmann::json stds = nlohmann::json::object();
  for (const auto& [kind, p] : report.proportions) {
    props[std::string(to_string(kind))] = p;
    stds[std::string(to_string(kind))] = report.std_over_repetitions.at(kind);
  }
  nlohmann::json per_trial = nlohmann::json::array();
  for (std::size_t k = 0; k < report.per_trial.size(); ++k) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [kind, p] : report.proportions) {
      counts[std::string(to_string(kind))] = report.per_trial[k][static_cast<std::size_t>(kind)];
    }
    per_trial.push_back({{"t", k + 2}, {"counts", counts}});
  }
  return {{"decisions", report.decisions},
          {"proportions", props},
          {"std_over_repetitions", stds},
          {"per_trial", per_trial}};
}

void write_bounds_csv(std::ostream& out, const BoundReport& report) {
  out << "regime,T,S,tau,bound,max_gap,margin,violated\n";
  for (const auto& c : report.checks) {
    out << to_string(c.scenario.regime) << ',' << c.scenario.horizon << ',' << c.scenario.period
        << ',' << c.scenario.tau << ',' << fixed(c.scenario.bound) << ',' << fixed(c.max_gap)
        << ',' << fixed(c.margin) << ',' << (c.violated ? 1 : 0) << '\n';
  }
}

std::vector<NamedSeries> read_series_csv(std::istream& in) {
  std::size_t lineno = 0;
  const std::vector<std::string> header = read_header(in, lineno);
  if (header != std::vector<std::string>{"series_id", "t", "value"}) {
    parse_error(lineno, "series CSV header must be series_id,t,value");
  }
  std::vector<NamedSeries> out;
  std::map<std::string, std::size_t> by_id;
  std::string line;
  while (next_data_line(in, line, lineno)) {
    const auto f = split_row(line);
    if (f.size() != 3) parse_error(lineno, "expected 3 fields");
    auto [it, inserted] = by_id.try_emplace(f[0], out.size());
    if (inserted) out.push_back(NamedSeries{f[0], {}});
    NamedSeries& s = out[it->second];
    if (parse_int(f[1], lineno) != static_cast<long long>(s.values.size() + 1)) {
      parse_error(lineno, "t must run 1, 2, ... within each series");
    }
    s.values.push_back(parse_double(f[2], lineno));
  }
  return out;
}

void write_series_csv(std::ostream& out, std::span<const NamedSeries> series) {
  out << "series_id,t,value\n";
  for (const auto& s : series) {
    for (std::size_t t = 0; t < s.values.size(); ++t) {
      out << s.id << ',' << t + 1 << ',' << shortest(s.values[t]) << '\n';
    }
  }
}

bool looks_like_series_csv(const fs::path& path) {
  if (!fs::is_regular_file(path)) return false;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return trim(line).rfind("series_id", 0) == 0;
}

void write_assignments_csv(std::ostream& out, const ClusterModel& model,
                           std::span<const std::string> ids,
                           std::span<const std::size_t> simulated_labels) {
  out << "series_id,real_label,simulated_label\n";
  for (std::size_t i = 0; i < model.labels.size(); ++i) {
    out << (i < ids.size() ? ids[i] : std::to_string(i)) << ',' << model.labels[i] << ','
        << (i < simulated_labels.size() ? std::to_string(simulated_labels[i]) : "") << '\n';
  }
}

void write_difference_csv(std::ostream& out, std::span<const DiffRow> rows) {
  out << "cluster,t,mean_diff,std_diff\n";
  for (const auto& r : rows) {
    out << r.cluster << ',' << r.t << ',' << fixed(r.mean_diff) << ',' << fixed(r.std_diff) << '\n';
  }
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::Io, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

}  // namespace maya::io
