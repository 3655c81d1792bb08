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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "maya/cli.hpp"
#include "maya/error.hpp"
#include "maya/io.hpp"
#include "maya/synth.hpp"

using namespace maya;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("maya_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// Runs the built executable and returns its exit status.
int maya_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + MAYA_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path make_dataset(const fs::path& root, std::size_t experts, std::size_t horizon) {
  const fs::path dir = root / "data";
  const DatasetMeta meta{"syn", "lab", Weather::Unknown, horizon};
  io::save_dataset(dir, meta, mixed_population(experts, horizon, 1));
  return dir;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("tau lists") {
    CHECK(parse_tau_list("3..5,20,T", 40) == std::vector<std::size_t>{3, 4, 5, 20, 40});
    std::vector<std::size_t> dups;
    CHECK(parse_tau_list("7, 7, 3..4, 4", 22, &dups) == std::vector<std::size_t>{7, 3, 4});
    CHECK(dups == std::vector<std::size_t>{7, 4});
    CHECK(parse_tau_list("T,22", 22, &dups) == std::vector<std::size_t>{22});
    CHECK_THROWS_AS(parse_tau_list("5..3", 22), Error);
    CHECK_THROWS_AS(parse_tau_list("x", 22), Error);
    CHECK_THROWS_AS(parse_tau_list("", 22), Error);
  }

  TEST_CASE("fit writes runs, metrics and a manifest") {
    const fs::path root = scratch("fit");
    const fs::path data = make_dataset(root, 4, 20);
    const fs::path out = root / "out";
    REQUIRE(maya_cli("fit " + q(data) + " --reps 5 --tau 5 --metric dtw --out " + q(out), root / "log") == 0);
    for (const char* f : {"metrics.csv", "per_expert.csv", "manifest.json", "simulated_regret.csv",
                          "real_regret.csv", "runs/fast_0.json", "runs/slow_1_regret.csv"}) {
      CHECK_MESSAGE(fs::exists(out / f), f);
    }
    const std::string metrics = io::read_file(out / "metrics.csv");
    CHECK(metrics.rfind("side_window,metric,mean_mse,std_mse,mean_mae,std_mae\n5,dtw,", 0) == 0);
    const auto manifest = nlohmann::json::parse(io::read_file(out / "manifest.json"));
    CHECK(manifest["subcommand"] == "fit");
    CHECK(manifest["config"]["tau"] == 5);
    CHECK(manifest["config"]["metric"] == "dtw");
    CHECK(manifest["inputs"].size() == 2);
    CHECK_FALSE(manifest["config"].contains("workers"));
  }

  TEST_CASE("exit codes") {
    const fs::path root = scratch("codes");
    const fs::path data = make_dataset(root, 2, 12);
    fs::create_directories(root / "empty");
    CHECK(maya_cli("fit " + q(root / "empty") + " --out " + q(root / "o1"), root / "log") == 1);
    CHECK(maya_cli("fit " + q(data) + " --tau 50 --reps 2 --out " + q(root / "o2"), root / "log") == 2);
    CHECK(io::read_file(root / "log").find("WindowTooLarge") != std::string::npos);
    CHECK(maya_cli("fit " + q(data) + " --metric cosine --out " + q(root / "o3"), root / "log") == 2);
    CHECK(maya_cli("fit " + q(data) + " --no-such-flag", root / "log") == 2);
    CHECK(maya_cli("", root / "log") == 2);
    CHECK(maya_cli("--help", root / "log") == 0);

    // a data error is a validation failure
    std::string csv = io::read_file(data / "trajectories.csv");
    const auto pos = csv.find(",L,0\n");
    REQUIRE(pos != std::string::npos);
    csv.replace(pos, 5, ",L,1\n");
    io::write_file(root / "bad" / "t.csv", csv);
    CHECK(maya_cli("fit " + q(root / "bad") + " --reps 2 --out " + q(root / "o4"), root / "log") == 2);
    CHECK(io::read_file(root / "log").find("RewardInconsistent") != std::string::npos);
  }

  TEST_CASE("flags override the config file which overrides defaults") {
    const fs::path root = scratch("config");
    const fs::path data = make_dataset(root, 2, 12);
    io::write_file(root / "cfg.json", R"({"tau": 4, "reps": 3, "metric": "kl", "epsilon": 0.2})");
    REQUIRE(maya_cli("fit " + q(data) + " --config " + q(root / "cfg.json") + " --tau 6 --out " +
                         q(root / "out"),
                     root / "log") == 0);
    const auto cfg = nlohmann::json::parse(io::read_file(root / "out" / "manifest.json"))["config"];
    CHECK(cfg["tau"] == 6);
    CHECK(cfg["reps"] == 3);
    CHECK(cfg["metric"] == "kl");
    CHECK(cfg["epsilon"] == 0.2);
    CHECK(cfg["lambda"] == 1.0);

    io::write_file(root / "bad.json", R"({"taux": 4})");
    CHECK(maya_cli("fit " + q(data) + " --config " + q(root / "bad.json"), root / "log") == 2);
  }

  TEST_CASE("sweep deduplicates windows with a warning") {
    const fs::path root = scratch("sweep");
    const fs::path data = make_dataset(root, 2, 12);
    REQUIRE(maya_cli("sweep " + q(data) + " --reps 2 --taus 3,3,T,12 --metric wass --out " +
                         q(root / "out"),
                     root / "log") == 0);
    CHECK(io::read_file(root / "log").find("warning") != std::string::npos);
    std::istringstream rows(io::read_file(root / "out" / "sweep.csv"));
    std::string line;
    std::size_t n = 0;
    while (std::getline(rows, line)) ++n;
    CHECK(n == 3);  // header plus taus 3 and 12
  }

  TEST_CASE("cluster on identical inputs agrees fully") {
    const fs::path root = scratch("cluster");
    const fs::path data = make_dataset(root, 8, 20);
    const std::string real = q(data);
    REQUIRE(maya_cli("cluster --real " + real + " --simulated " + real + " --out " + q(root / "out"),
                     root / "log") == 0);
    CHECK(io::read_file(root / "log").find("ClusterAcc 1.0000") != std::string::npos);
    const auto summary = nlohmann::json::parse(io::read_file(root / "out" / "cluster_acc.json"));
    CHECK(summary["cluster_acc"] == 1.0);
    CHECK(fs::exists(root / "out" / "difference.csv"));
    CHECK(maya_cli("cluster --real " + real + " --simulated " + real + " --k 9 --out " +
                       q(root / "out2"),
                   root / "log") == 2);
    CHECK(io::read_file(root / "log").find("TooFewSeries") != std::string::npos);
  }

  TEST_CASE("explain writes alignment and attribution") {
    const fs::path root = scratch("explain");
    const fs::path data = make_dataset(root, 2, 12);
    REQUIRE(maya_cli("explain " + q(data) + " --reps 4 --candidates ucb1 --out " + q(root / "out"),
                     root / "log") == 0);
    CHECK(io::read_file(root / "out" / "alignment.csv") == "policy,proportion,std\nUCB1,1.000000,0.000000\n");
    const auto attribution = nlohmann::json::parse(io::read_file(root / "out" / "attribution.json"));
    CHECK(attribution["experts"].size() == 2);
    CHECK(attribution["experts"][0]["trials"].size() == 11);
  }

  TEST_CASE("bounds subcommand") {
    const fs::path root = scratch("bounds");
    REQUIRE(maya_cli("bounds --T 20 --S 5 --reps 3 --out " + q(root / "out"), root / "log") == 0);
    const std::string csv = io::read_file(root / "out" / "bounds.csv");
    CHECK(csv.rfind("regime,T,S,tau,bound,max_gap,margin,violated\n", 0) == 0);
    CHECK(maya_cli("bounds-check --T 20 --S 4 --reps 1 --out " + q(root / "out2"), root / "log") == 0);
  }

  TEST_CASE("validate detects input drift") {
    const fs::path root = scratch("validate");
    const fs::path data = make_dataset(root, 2, 12);
    REQUIRE(maya_cli("fit " + q(data) + " --reps 2 --out " + q(root / "out"), root / "log") == 0);
    CHECK(maya_cli("validate " + q(data) + " --manifest " + q(root / "out" / "manifest.json"),
                   root / "log") == 0);
    std::ofstream(data / "trajectories.csv", std::ios::app) << "\n";
    CHECK(maya_cli("validate --manifest " + q(root / "out" / "manifest.json"), root / "log") == 2);
    CHECK(io::read_file(root / "log").find("drift") != std::string::npos);
  }

  TEST_CASE("outputs do not depend on the worker count") {
    const fs::path root = scratch("workers");
    const fs::path data = make_dataset(root, 6, 20);
    REQUIRE(maya_cli("fit " + q(data) + " --reps 10 --workers 1 --out " + q(root / "a"), root / "log") == 0);
    REQUIRE(maya_cli("fit " + q(data) + " --reps 10 --workers 3 --out " + q(root / "b"), root / "log") == 0);
    for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
      if (!entry.is_regular_file()) continue;
      const fs::path rel = fs::relative(entry.path(), root / "a");
      CHECK_MESSAGE(io::read_file(entry.path()) == io::read_file(root / "b" / rel), rel.string());
    }
  }
}
