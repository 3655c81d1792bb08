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
// Python bindings. Enumerations cross the boundary as their string names and
// structured results as plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "maya/allocation.hpp"
#include "maya/clustering.hpp"
#include "maya/error.hpp"
#include "maya/eval.hpp"
#include "maya/io.hpp"
#include "maya/parallel.hpp"
#include "maya/similarity.hpp"
#include "maya/sweep.hpp"
#include "maya/synth.hpp"

namespace py = pybind11;
using namespace maya;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ExpertRegime parse_regime(const std::string& name) {
  for (ExpertRegime r : {ExpertRegime::ZeroRegret, ExpertRegime::MaxRegret, ExpertRegime::Cyclic,
                         ExpertRegime::StochasticCentered}) {
    if (name == to_string(r)) return r;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown regime '" + name + "'");
}

MayaConfig make_config(std::size_t tau, const std::string& metric,
                       const std::vector<std::string>& candidates, std::uint64_t seed,
                       std::size_t repetitions, double epsilon, double lambda) {
  MayaConfig cfg;
  cfg.tau = tau;
  cfg.metric = parse_similarity_kind(metric);
  if (!candidates.empty()) {
    cfg.candidates.clear();
    for (const auto& c : candidates) cfg.candidates.push_back(parse_policy_kind(c));
  }
  cfg.seed = seed;
  cfg.repetitions = repetitions;
  cfg.policy.epsilon = epsilon;
  cfg.policy.lambda = lambda;
  validate_config(cfg);
  return cfg;
}

py::dict cost_dict(const CostMoments& m) {
  py::dict d;
  d["mse"] = m.mse;
  d["mse_std"] = m.mse_std;
  d["mae"] = m.mae;
  d["mae_std"] = m.mae_std;
  return d;
}

py::dict model_dict(const ClusterModel& m) {
  py::dict d;
  d["method"] = std::string(to_string(m.method));
  d["k"] = m.k;
  d["labels"] = m.labels;
  d["centroids"] = m.centroids;
  d["objective_history"] = m.objective_history;
  d["iterations"] = m.iterations;
  d["degenerate"] = m.degenerate;
  d["max_len"] = m.max_len;
  return d;
}

}  // namespace

PYBIND11_MODULE(_maya, m) {
  m.doc() = "Windowed regret matching for imitating choice sequences";

  py::register_exception<Error>(m, "MayaError", PyExc_ValueError);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("expert_id", &Trajectory::expert_id)
      .def_property_readonly("horizon", &Trajectory::horizon)
      .def_property_readonly("choices",
                             [](const Trajectory& t) {
                               std::string s;
                               for (ActionSide a : t.expert_actions()) s += to_char(a);
                               return s;
                             })
      .def_property_readonly("regrets", &Trajectory::expert_regrets)
      .def("__repr__", [](const Trajectory& t) {
        return "<Trajectory " + t.expert_id + " T=" + std::to_string(t.horizon()) + ">";
      });

  m.def(
      "make_trajectory",
      [](std::string expert_id, const std::vector<std::pair<double, double>>& stimuli,
         const std::string& choices) {
        if (stimuli.size() != choices.size()) {
          throw Error(ErrorCode::LengthMismatch, "one choice per stimulus pair is required");
        }
        std::vector<Context> ctx;
        std::vector<ActionSide> acts;
        for (std::size_t i = 0; i < stimuli.size(); ++i) {
          ctx.emplace_back(stimuli[i].first, stimuli[i].second);
          acts.push_back(parse_side(std::string_view(&choices[i], 1)));
        }
        return make_trajectory(std::move(expert_id), ctx, acts);
      },
      py::arg("expert_id"), py::arg("stimuli"), py::arg("choices"),
      "Trajectory from (left, right) stimulus counts and a string of L/R choices.");

  m.def(
      "load_dataset", [](const std::string& path) { return io::load_dataset(path).trajectories; },
      py::arg("path"));
  m.def("mixed_population", &mixed_population, py::arg("experts"), py::arg("horizon"),
        py::arg("seed") = 0);

  m.def(
      "derive_optimal",
      [](double left, double right) { return std::string(1, to_char(derive_optimal(Context(left, right)))); },
      py::arg("left"), py::arg("right"));

  m.def(
      "dtw", [](const std::vector<double>& x, const std::vector<double>& y) { return dtw(x, y); },
      py::arg("x"), py::arg("y"));
  m.def(
      "wasserstein1",
      [](const std::vector<double>& x, const std::vector<double>& y) { return wasserstein1(x, y); },
      py::arg("x"), py::arg("y"));
  m.def(
      "kl_bernoulli",
      [](const std::vector<double>& x, const std::vector<double>& y, double smoothing) {
        return kl_bernoulli(x, y, smoothing);
      },
      py::arg("x"), py::arg("y"), py::arg("smoothing") = kDefaultKlSmoothing);

  m.def(
      "run_maya",
      [](const Trajectory& traj, std::size_t tau, const std::string& metric,
         const std::vector<std::string>& candidates, std::uint64_t seed, std::size_t repetition,
         double epsilon, double lambda) {
        const MayaConfig cfg = make_config(tau, metric, candidates, seed, 1, epsilon, lambda);
        return to_python(io::run_to_json(run_maya(traj, cfg, repetition)));
      },
      py::arg("trajectory"), py::arg("tau") = 7, py::arg("metric") = "wass",
      py::arg("candidates") = std::vector<std::string>{}, py::arg("seed") = 0,
      py::arg("repetition") = 0, py::arg("epsilon") = 0.1, py::arg("lambda_") = 1.0);

  m.def(
      "fit_dataset",
      [](const std::vector<Trajectory>& dataset, std::size_t tau, const std::string& metric,
         const std::vector<std::string>& candidates, std::uint64_t seed, std::size_t reps,
         std::size_t workers) {
        const MayaConfig cfg = make_config(tau, metric, candidates, seed, reps, 0.1, 1.0);
        DatasetFit fit;
        {
          py::gil_scoped_release release;
          fit = fit_dataset(dataset, cfg, workers == 0 ? default_workers() : workers);
        }
        py::dict d;
        d["cost"] = cost_dict(fit.moments);
        py::list experts;
        for (const auto& e : fit.experts) experts.append(to_python(io::summary_to_json(e)));
        d["experts"] = experts;
        d["alignment"] = to_python(io::alignment_to_json(fit.alignment));
        return d;
      },
      py::arg("dataset"), py::arg("tau") = 7, py::arg("metric") = "wass",
      py::arg("candidates") = std::vector<std::string>{}, py::arg("seed") = 0,
      py::arg("reps") = 100, py::arg("workers") = 0);

  m.def(
      "aggregate_cost",
      [](const std::vector<double>& totals) { return cost_dict(aggregate_cost(totals)); },
      py::arg("per_expert_totals"));

  m.def(
      "theoretical_bound",
      [](const std::string& regime, std::size_t horizon, std::size_t period, std::size_t tau) {
        const BoundScenario s = make_scenario(parse_regime(regime), horizon, period, tau);
        py::dict d;
        d["tau_class"] = std::string(to_string(s.tau_class));
        d["bound"] = s.bound;
        return d;
      },
      py::arg("regime"), py::arg("T"), py::arg("S"), py::arg("tau"));

  m.def(
      "fit_clusters",
      [](const std::vector<std::vector<double>>& series, const std::string& method, std::size_t k,
         std::uint64_t seed) {
        return model_dict(fit_clusters(series, parse_cluster_method(method), k, seed));
      },
      py::arg("series"), py::arg("method") = "dba", py::arg("k") = 2, py::arg("seed") = 0);

  m.def(
      "cluster_acc",
      [](const std::vector<std::vector<double>>& real,
         const std::vector<std::vector<double>>& simulated, const std::string& method,
         std::size_t k, std::uint64_t seed) {
        return cluster_acc(fit_clusters(real, parse_cluster_method(method), k, seed), simulated);
      },
      py::arg("real"), py::arg("simulated"), py::arg("method") = "dba", py::arg("k") = 2,
      py::arg("seed") = 0);
}
