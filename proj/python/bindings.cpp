#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "growwalk/chain_analysis.hpp"
#include "growwalk/cli.hpp"
#include "growwalk/errors.hpp"
#include "growwalk/exact_engine.hpp"
#include "growwalk/monte_carlo.hpp"
#include "growwalk/theorem_suite.hpp"

namespace py = pybind11;
using namespace growwalk;

namespace {

ModelSpec make_model(const std::string& family, const std::string& walk, const std::string& schedule,
                     std::size_t n0, std::size_t degree, std::uint64_t graph_seed, double p, double q) {
  FamilySpec fs;
  fs.tag = parse_family(family);
  fs.expander_degree = degree;
  fs.graph_seed = graph_seed;
  WalkSpec ws = default_walk(fs.tag);
  if (!walk.empty()) ws.tag = parse_walk(walk);
  ws.p = p;
  ws.q = q;
  Schedule s = parse_schedule_spec(schedule, fs.tag);
  if (n0 > 0) s = s.with_initial_vertices(n0);
  return ModelSpec{std::move(s), fs, ws};
}

py::dict estimate_dict(const EstimateRecord& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["sd"] = e.sd;
  d["trials"] = e.trials;
  d["half_width"] = e.half_width;
  d["standard_error"] = e.standard_error();
  d["seed"] = e.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random walks on growing graphs: exact and simulated unvisited-vertex counts";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<ModelSpec>(m, "Model")
      .def(py::init(&make_model), py::arg("family") = "complete", py::arg("walk") = "",
           py::arg("schedule") = "linear:C=1", py::arg("n0") = 0, py::arg("degree") = 5,
           py::arg("graph_seed") = 1, py::arg("p") = 0.5, py::arg("q") = 0.25)
      .def("duration", [](const ModelSpec& s, Step i) { return s.schedule.duration(i); })
      .def("describe", &ModelSpec::describe)
      .def("__repr__", [](const ModelSpec& s) { return "Model(" + s.describe() + ")"; });

  m.def("complete_closed_form",
        [](const std::string& schedule, Step n, std::size_t n0) {
          Schedule s = parse_schedule_spec(schedule, Family::complete);
          return complete_closed_form_ladder(n0 > 0 ? s.with_initial_vertices(n0) : s, n);
        },
        py::arg("schedule"), py::arg("n"), py::arg("n0") = 0,
        "E[U(m)] for m = 1..n on the growing complete graph with uniform steps.");

  m.def("exact",
        [](const ModelSpec& model, Step n, std::size_t dense_cap) {
          ExactOptions o;
          o.dense_cap = dense_cap;
          return exact_expected_unvisited(model, n, o).ladder;
        },
        py::arg("model"), py::arg("n"), py::arg("dense_cap") = 400,
        "E[U(m)] for m = 1..n.");

  m.def("trajectory",
        [](const ModelSpec& model, Step n) {
          std::vector<std::tuple<Step, Step, double>> rows;
          for (const auto& r : exact_trajectory(model, n)) rows.emplace_back(r.t, r.round, r.expected_unvisited);
          return rows;
        },
        py::arg("model"), py::arg("n"), "(t, round, E[U_t]) rows.");

  m.def("simulate",
        [](const ModelSpec& model, Step n, std::size_t trials, std::uint64_t seed) {
          const auto est = estimate_unvisited(SimulationPlan{model, n, trials, seed, false});
          py::dict d = estimate_dict(est.final);
          d["per_trial"] = est.per_trial;
          return d;
        },
        py::arg("model"), py::arg("n"), py::arg("trials") = 1000, py::arg("seed") = 1);

  m.def("analyze",
        [](const ModelSpec& model, Step i) {
          const RoundSequence seq(model, i);
          const auto r = analyze(seq.kernel(i), false);
          py::dict d;
          d["order"] = r.order;
          d["t_hit"] = r.t_hit;
          d["t_mix"] = r.t_mix.steps;
          d["t_mix_capped"] = r.t_mix.capped;
          d["lambda2"] = r.lambda2;
          d["pi_min"] = r.pi_min;
          return d;
        },
        py::arg("model"), py::arg("round"), "Hitting, mixing and spectral quantities of one round.");

  m.def("theorem_ids", &theorem_ids);

  m.def("run_case",
        [](const std::string& id, std::vector<Step> ladder, double C, double gamma, double delta) {
          TheoremCase c;
          c.id = id;
          c.ladder = std::move(ladder);
          c.C = C;
          c.gamma = gamma;
          c.delta = delta;
          const Certificate cert = run_case(c);
          py::list rows;
          for (const auto& r : cert.rows) {
            py::dict d;
            d["n"] = r.n;
            d["label"] = r.label;
            d["measured"] = r.measured;
            d["lower"] = r.lower;
            d["upper"] = r.upper;
            d["relation"] = r.relation;
            d["pass"] = r.pass;
            d["diagnostic"] = r.diagnostic;
            rows.append(d);
          }
          py::dict out;
          out["id"] = cert.id;
          out["verdict"] = std::string(to_string(cert.verdict));
          out["setting"] = cert.setting;
          out["audit"] = cert.audit;
          out["violated"] = cert.violated;
          out["rows"] = rows;
          return out;
        },
        py::arg("id"), py::arg("ladder") = std::vector<Step>{}, py::arg("C") = 0.0,
        py::arg("gamma") = -1.0, py::arg("delta") = 1.0);

  m.def("fit_scaling",
        [](const std::vector<Step>& ns, const std::vector<double>& values) {
          if (ns.size() != values.size()) throw ConfigError("ns and values differ in length");
          std::vector<ScalingPoint> pts;
          for (std::size_t j = 0; j < ns.size(); ++j) pts.push_back({ns[j], values[j], 0.0});
          const auto t = fit_scaling(pts);
          return py::make_tuple(t.slope, t.intercept, t.residual);
        },
        py::arg("ns"), py::arg("values"), "(slope, intercept, rms residual) of the log-log fit.");
}
