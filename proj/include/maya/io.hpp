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
#ifndef MAYA_IO_HPP
#define MAYA_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "maya/allocation.hpp"
#include "maya/clustering.hpp"
#include "maya/domain.hpp"
#include "maya/eval.hpp"
#include "maya/sweep.hpp"
#include "maya/synth.hpp"

namespace maya::io {

namespace fs = std::filesystem;

/// Fixed-point with `digits` decimals; "-0.0000" is printed as "0.0000".
std::string fixed(double value, int digits = 4);
/// Shortest representation that parses back to the same double.
std::string shortest(double value);

// Trajectory CSV: expert_id,trial,stim_left,stim_right,choice,reward[,x2,x3,...]
std::vector<Trajectory> read_trajectories_csv(std::istream& in, const DatasetMeta& meta = {});
void write_trajectories_csv(std::ostream& out, std::span<const Trajectory> trajectories);

nlohmann::json meta_to_json(const DatasetMeta& meta);
DatasetMeta meta_from_json(const nlohmann::json& j);

struct Dataset {
  DatasetMeta meta;
  std::vector<Trajectory> trajectories;
  std::vector<fs::path> files;  // every file read, for manifest digests
};

/// `path` is either a directory (every *.csv, by name, plus an optional
/// meta.json) or a single CSV file (plus an optional sibling meta.json).
/// Throws Io when nothing readable is found, Parse on malformed content.
Dataset load_dataset(const fs::path& path);
void save_dataset(const fs::path& dir, const DatasetMeta& meta,
                  std::span<const Trajectory> trajectories);

/// Emits t,delta,cumulative.
void write_regret_csv(std::ostream& out, const RegretSeries& series);

nlohmann::json run_to_json(const MayaRun& run);
nlohmann::json summary_to_json(const ExpertSummary& summary);

void write_metrics_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_alignment_csv(std::ostream& out, const AlignmentReport& report);
nlohmann::json alignment_to_json(const AlignmentReport& report);
void write_bounds_csv(std::ostream& out, const BoundReport& report);

// Generic series CSV: series_id,t,value (t is 1-based).
struct NamedSeries {
  std::string id;
  std::vector<double> values;
};
std::vector<NamedSeries> read_series_csv(std::istream& in);
void write_series_csv(std::ostream& out, std::span<const NamedSeries> series);
bool looks_like_series_csv(const fs::path& path);

void write_assignments_csv(std::ostream& out, const ClusterModel& model,
                           std::span<const std::string> ids,
                           std::span<const std::size_t> simulated_labels);
void write_difference_csv(std::ostream& out, std::span<const DiffRow> rows);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& contents);
/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const fs::path& path);
std::string sha256_hex(const std::string& bytes);

}  // namespace maya::io

#endif  // MAYA_IO_HPP
