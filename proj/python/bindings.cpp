#include "plantlab/adversary.hpp"
#include "plantlab/detectors.hpp"
#include "plantlab/errors.hpp"
#include "plantlab/family.hpp"
#include "plantlab/harness.hpp"
#include "plantlab/models.hpp"
#include "plantlab/solvers.hpp"
#include "plantlab/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace plantlab;

namespace {

// JSON crosses the boundary as text; the Python wrapper does the dict conversion.
using Json = nlohmann::json;

Graph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& edges) { return Graph::from_edges(n, edges); }

std::vector<std::pair<int, int>> pairs_of(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

SolveConfig solve_config(const std::string& text) { return text.empty() ? SolveConfig{} : Json::parse(text).get<SolveConfig>(); }

std::string result_json(const SolveResult& r) { return Json(r).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planted subgraph detection under monotone adversaries";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ExecutionError>(m, "ExecutionError", base.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges") = std::vector<std::pair<int, int>>{})
      .def_property_readonly("order", &Graph::order)
      .def_property_readonly("size", &Graph::size)
      .def("edges", &pairs_of)
      .def("adjacency", &Graph::adjacency)
      .def("max_degree", &Graph::max_degree)
      .def("has_edge", &Graph::has_edge)
      .def("is_subgraph_of", &Graph::is_subgraph_of)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.order()) + ", m=" + std::to_string(g.size()) + ")";
      });

  m.def("make_family", [](const std::string& spec) { return make_family(FamilySpec::parse(spec)); }, py::arg("spec"));
  m.def("closed_form_nuclear_norm",
        [](const std::string& spec) { return closed_form_nuclear_norm(FamilySpec::parse(spec)).value; }, py::arg("spec"));
  m.def("nuclear_norm", &nuclear_norm, py::arg("matrix"));
  m.def("count_copies",
        [](const Graph& h, const Graph& g) { return count_copies(h, g).convert_to<std::uint64_t>(); }, py::arg("h"),
        py::arg("g"));

  m.def("sample_er",
        [](int n, double q, std::uint64_t seed) {
          Rng rng(seed);
          return sample_er(n, q, rng);
        },
        py::arg("n"), py::arg("q"), py::arg("seed"));
  m.def("_sample_planted",
        [](int n, double p, double q, const std::string& family, std::uint64_t seed) {
          Rng rng(seed);
          const PlantedInstance inst = sample_planted(ModelParams::from_family(n, p, q, FamilySpec::parse(family)), rng);
          return std::make_tuple(inst.graph, inst.planted_copy, inst.planted_vertices);
        },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("family"), py::arg("seed"));
  m.def("center_matrix", [](const Graph& g, double q) { return center_matrix(g, q).W; }, py::arg("graph"), py::arg("q"));

  m.def("_apply_adversary",
        [](const std::string& spec, const std::string& side, const Graph& g, const Graph& planted_copy,
           const std::vector<int>& planted_vertices, int n, double p,
           double q, const std::string& family, std::uint64_t seed) {
          const AdversarySpec adv = Json::parse(spec).get<AdversarySpec>();
          Rng rng(seed);
          PlantedInstance inst;
          inst.params = ModelParams::from_family(n, p, q, FamilySpec::parse(family));
          inst.graph = g;
          if (side == "null") return apply_null_adversary(adv, g, rng, &inst.params.gamma);
          inst.planted_copy = planted_copy;
          inst.planted_vertices = planted_vertices;
          return apply_alt_adversary(adv, inst, rng);
        });

  m.def("_solve_nuclear_program",
        [](const Eigen::MatrixXd& w, double q, double t, const std::string& cfg) {
          const SolveResult r = solve_nuclear_program(CenteredMatrix{w, q}, t, solve_config(cfg));
          return std::make_pair(r.Z, result_json(r));
        });
  m.def("_solve_clique_sdp", [](const Eigen::MatrixXd& w, double q, int k, const std::string& cfg) {
    const SolveResult r = solve_clique_sdp(CenteredMatrix{w, q}, k, solve_config(cfg));
    return std::make_pair(r.Z, result_json(r));
  });

  m.def("_decide", [](const std::string& spec, const Graph& g, int n, double p, double q, const std::string& family,
                      double tau) {
    const auto params = ModelParams::from_family(n, p, q, FamilySpec::parse(family));
    const Json j = decide(Json::parse(spec).get<DetectorSpec>(), g, params, tau);
    return j.dump();
  });
  m.def("_theoretical_threshold", [](const std::string& spec, int n, double p, double q, const std::string& family) {
    return theoretical_threshold(Json::parse(spec).get<DetectorSpec>(),
                                 ModelParams::from_family(n, p, q, FamilySpec::parse(family)));
  });
  m.def("_calibrate_threshold", [](const std::string& spec, int n, double p, double q, const std::string& family,
                                   double alpha, int trials, std::uint64_t seed) {
    py::gil_scoped_release release;
    return calibrate_threshold(Json::parse(spec).get<DetectorSpec>(),
                               ModelParams::from_family(n, p, q, FamilySpec::parse(family)), alpha, trials, seed)
        .tau;
  });
  m.def("_estimate_risk", [](const std::string& config) {
    const ExperimentPlan plan = parse_experiment(Json::parse(config));
    py::gil_scoped_release release;
    const Json j = estimate_risk(plan.base);
    return j.dump();
  });
  m.def("_run_experiment", [](const std::string& config) {
    const ExperimentPlan plan = parse_experiment(Json::parse(config));
    py::gil_scoped_release release;
    const ExperimentResult r = run_experiment(plan);
    return std::make_pair(r.csv, r.summary.dump());
  });
  m.def("_regime_report", [](const std::string& family, int n, double p, double q, double epsilon) {
    const Json j = regime_report(make_family(FamilySpec::parse(family)), n, p, q, epsilon);
    return j.dump();
  });
  m.def("estimate_containment_probability",
        [](const std::string& family, int n, double q, std::uint64_t trials, std::uint64_t seed) {
          py::gil_scoped_release release;
          const auto e = estimate_containment_probability(make_family(FamilySpec::parse(family)), n, q, trials, seed);
          return std::make_tuple(e.p_hat, e.ci.lower, e.ci.upper);
        },
        py::arg("family"), py::arg("n"), py::arg("q"), py::arg("trials"), py::arg("seed"));
  m.def("exact_containment_probability",
        [](const std::string& family, int n, double q) {
          return exact_containment_probability(make_family(FamilySpec::parse(family)), n, q);
        },
        py::arg("family"), py::arg("n"), py::arg("q"));
  m.def("_uniformity_audit", [](const std::string& family, int n, double q, std::uint64_t trials, std::uint64_t seed) {
    py::gil_scoped_release release;
    const Json j = uniformity_audit(make_family(FamilySpec::parse(family)), n, q, trials, seed);
    return j.dump();
  });
  m.def("thread_count", &thread_count);
}
