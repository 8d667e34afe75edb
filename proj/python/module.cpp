#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "asbec/bench.hpp"

namespace py = pybind11;
using namespace asbec;

namespace {

BenchmarkSpec spec_for(const std::string& function_id) {
    const auto id = benchmark_from_name(function_id);
    if (!id) throw std::invalid_argument("unknown function id '" + function_id + "'");
    return suite_spec(*id);
}

Axis axis_for(const std::string& name) {
    if (name == "evals") return Axis::Evals;
    if (name == "time") return Axis::Time;
    throw std::invalid_argument("axis must be 'evals' or 'time'");
}

Ensemble make_ensemble(const std::vector<TimedTrace>& runs) {
    Ensemble ens;
    ens.function_id = "adhoc";
    ens.config_id = "adhoc";
    ens.runs = runs;
    return ens;
}

}  // namespace

PYBIND11_MODULE(_asbec, m) {
    m.doc() = "Artificial bee colony optimizer with the AsBeC technology set";

    py::enum_<BoundsMode>(m, "BoundsMode")
        .value("CLAMP", BoundsMode::Clamp)
        .value("FREE", BoundsMode::Free);

    py::enum_<ExecMode>(m, "ExecMode")
        .value("SERIAL", ExecMode::Serial)
        .value("MULTI_START", ExecMode::MultiStart)
        .value("MULTI_SWARM", ExecMode::MultiSwarm)
        .value("BEE_BY_BEE", ExecMode::BeeByBee);

    py::class_<TechnologySet>(m, "TechnologySet")
        .def(py::init<>())
        .def_readwrite("check", &TechnologySet::check)
        .def_readwrite("biased", &TechnologySet::biased)
        .def_readwrite("multi_param", &TechnologySet::multi_param)
        .def_readwrite("smart_scout", &TechnologySet::smart_scout)
        .def_readwrite("opposition", &TechnologySet::opposition)
        .def_readwrite("interpolation", &TechnologySet::interpolation)
        .def_readwrite("prophet", &TechnologySet::prophet)
        .def_readwrite("prophet_catalyst", &TechnologySet::prophet_catalyst)
        .def_readwrite("prophet_memory", &TechnologySet::prophet_memory)
        .def_static("abc", &TechnologySet::abc)
        .def_static("asbec", &TechnologySet::asbec);

    py::class_<ColonyConfig>(m, "ColonyConfig")
        .def(py::init<>())
        .def_readwrite("sn", &ColonyConfig::sn)
        .def_readwrite("on", &ColonyConfig::on)
        .def_readwrite("limit", &ColonyConfig::limit)
        .def_readwrite("budget", &ColonyConfig::budget)
        .def_readwrite("seed", &ColonyConfig::seed)
        .def_readwrite("bounds_mode", &ColonyConfig::bounds_mode)
        .def_readwrite("tech", &ColonyConfig::tech);

    py::class_<ParallelPlan>(m, "ParallelPlan")
        .def(py::init<>())
        .def_readwrite("mode", &ParallelPlan::mode)
        .def_readwrite("workers", &ParallelPlan::workers)
        .def_readwrite("exchange_every", &ParallelPlan::exchange_every)
        .def_readwrite("per_colony_budget", &ParallelPlan::per_colony_budget);

    py::class_<TracePoint>(m, "TracePoint")
        .def_readonly("evals", &TracePoint::evals)
        .def_readonly("time", &TracePoint::time)
        .def_readonly("best", &TracePoint::best)
        .def("__repr__", [](const TracePoint& p) {
            std::ostringstream out;
            out << "TracePoint(evals=" << p.evals << ", time=" << p.time
                << ", best=" << p.best << ")";
            return out.str();
        });

    py::class_<TimedTrace>(m, "TimedTrace")
        .def_readonly("points", &TimedTrace::points)
        .def("__len__", [](const TimedTrace& t) { return t.points.size(); })
        .def("bests",
             [](const TimedTrace& t) {
                 std::vector<double> out;
                 out.reserve(t.points.size());
                 for (const auto& p : t.points) out.push_back(p.best);
                 return out;
             })
        .def("final_best", [](const TimedTrace& t) {
            if (t.points.empty()) throw std::invalid_argument("empty trace");
            return t.points.back().best;
        });

    m.def("list_functions", &benchmark_names,
          "Benchmark suite function ids, in suite order");

    m.def(
        "function_info",
        [](const std::string& function_id) {
            const BenchmarkSpec spec = spec_for(function_id);
            py::dict d;
            d["id"] = function_id;
            d["dim"] = spec.m;
            d["lower"] = spec.bounds.lower;
            d["upper"] = spec.bounds.upper;
            d["noise_fraction"] = spec.noise_fraction;
            return d;
        },
        py::arg("function"));

    m.def(
        "evaluate",
        [](const std::string& function_id, const std::vector<double>& x) {
            return evaluate_exact(spec_for(function_id), x);
        },
        py::arg("function"), py::arg("x"),
        "Noise-free objective value (minimum is 0)");

    m.def("fitness", &fitness, py::arg("f"),
          "ABC fitness transform: 1/(1+f) for f >= 0, 1-f otherwise");

    m.def(
        "run",
        [](const std::string& function_id, const ColonyConfig& cfg,
           const ParallelPlan& plan) {
            ParallelPlan resolved = plan;
            if (resolved.per_colony_budget <= 0) resolved.per_colony_budget = cfg.budget;
            return run_plan(cfg, spec_for(function_id), resolved);
        },
        py::arg("function"), py::arg("config"),
        py::arg("plan") =
            [] {
                ParallelPlan p;
                p.per_colony_budget = 0;  // inherit config.budget
                return p;
            }(),
        "Run one optimization (combined trace for multi-colony modes)");

    m.def(
        "run_serial",
        [](const std::string& function_id, const ColonyConfig& cfg) {
            Colony colony(cfg, spec_for(function_id));
            colony.run();
            return colony.timed_trace();
        },
        py::arg("function"), py::arg("config"));

    m.def(
        "median_best",
        [](const std::vector<TimedTrace>& runs, const std::string& axis, double at) {
            return median_best(make_ensemble(runs), axis_for(axis), at);
        },
        py::arg("runs"), py::arg("axis"), py::arg("at"));

    m.def(
        "gain",
        [](const std::vector<TimedTrace>& conf, const std::vector<TimedTrace>& ref,
           const std::string& axis, double at) {
            return gain(make_ensemble(conf), make_ensemble(ref), axis_for(axis), at);
        },
        py::arg("conf_runs"), py::arg("ref_runs"), py::arg("axis"), py::arg("at"),
        "G = median_best(ref) / median_best(conf), medians clamped at 1e-16");

    m.def("mean_log10", &mean_log10, py::arg("gains"),
          "Mean order-of-magnitude gain over per-function gains");
}
