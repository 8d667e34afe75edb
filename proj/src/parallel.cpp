#include "asbec/parallel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace asbec {

void ParallelPlan::validate(const ColonyConfig& cfg) const {
    if (workers < 1)
        throw std::invalid_argument("worker count must be >= 1, got " +
                                    std::to_string(workers));
    if (per_colony_budget < cfg.sn)
        throw std::invalid_argument("per-colony budget " +
                                    std::to_string(per_colony_budget) +
                                    " cannot cover initialization");
    if (mode == ExecMode::MultiSwarm) {
        if (workers != cfg.sn)
            throw std::invalid_argument(
                "multi-swarm requires one colony per food source: workers " +
                std::to_string(workers) + " != SN " + std::to_string(cfg.sn));
        if (exchange_every < 1)
            throw std::invalid_argument("exchange period must be >= 1 cycles");
    }
    if (mode == ExecMode::BeeByBee && workers > cfg.sn)
        throw std::invalid_argument("bee-by-bee cannot use more workers than SN");
}

namespace {

std::vector<Colony> make_colonies(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                                  const ParallelPlan& plan) {
    std::vector<Colony> colonies;
    colonies.reserve(static_cast<std::size_t>(plan.workers));
    for (int c = 0; c < plan.workers; ++c) {
        ColonyConfig cc = cfg;
        cc.seed = cfg.seed + static_cast<std::uint64_t>(c);
        cc.budget = plan.per_colony_budget;
        colonies.emplace_back(cc, spec);
    }
    return colonies;
}

ParallelResult collect(const std::vector<Colony>& colonies) {
    ParallelResult res;
    res.per_colony.reserve(colonies.size());
    for (const auto& col : colonies) res.per_colony.push_back(col.timed_trace());
    res.combined = pointwise_min_merge(res.per_colony);
    return res;
}

}  // namespace

ParallelResult run_multi_start(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                               const ParallelPlan& plan) {
    plan.validate(cfg);
    std::vector<Colony> colonies = make_colonies(cfg, spec, plan);
    for (auto& col : colonies) col.run();
    return collect(colonies);
}

ParallelResult run_multi_swarm(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                               const ParallelPlan& plan) {
    if (plan.mode != ExecMode::MultiSwarm || plan.workers != cfg.sn) {
        ParallelPlan check = plan;
        check.mode = ExecMode::MultiSwarm;
        check.validate(cfg);
    }
    std::vector<Colony> colonies = make_colonies(cfg, spec, plan);
    long cycles_done = 0;
    auto all_done = [&] {
        return std::all_of(colonies.begin(), colonies.end(),
                           [](const Colony& c) { return c.budget_exhausted(); });
    };
    while (!all_done()) {
        for (auto& col : colonies)
            if (!col.budget_exhausted()) col.run_cycle();
        ++cycles_done;
        if (cycles_done % plan.exchange_every != 0 || all_done()) continue;
        std::vector<PathEntry> payload;
        payload.reserve(colonies.size());
        for (const auto& col : colonies) {
            const FoodSource& best = col.sources()[col.best_source_index()];
            payload.push_back({best.position, best.f_value});
        }
        for (auto& col : colonies) col.install_sources(payload);
    }
    return collect(colonies);
}

TimedTrace run_bee_by_bee(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                          const ParallelPlan& plan) {
    plan.validate(cfg);
    ColonyConfig cc = cfg;
    cc.budget = plan.per_colony_budget;
    Colony col(cc, spec, Colony::Batched{plan.workers});
    col.run();
    return col.timed_trace();
}

TimedTrace run_plan(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                    const ParallelPlan& plan) {
    switch (plan.mode) {
        case ExecMode::Serial: {
            ColonyConfig cc = cfg;
            cc.budget = plan.per_colony_budget;
            Colony col(cc, spec);
            col.run();
            return col.timed_trace();
        }
        case ExecMode::MultiStart:
            return run_multi_start(cfg, spec, plan).combined;
        case ExecMode::MultiSwarm:
            return run_multi_swarm(cfg, spec, plan).combined;
        case ExecMode::BeeByBee:
            return run_bee_by_bee(cfg, spec, plan);
    }
    throw std::logic_error("unhandled execution mode");
}

TimedTrace pointwise_min_merge(const std::vector<TimedTrace>& traces) {
    if (traces.empty())
        throw std::invalid_argument("cannot merge an empty trace list");
    if (traces.size() == 1) return traces.front();
    std::vector<double> grid;
    for (const auto& t : traces)
        for (const auto& p : t.points) grid.push_back(p.time);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    TimedTrace out;
    out.points.reserve(grid.size());
    std::vector<std::size_t> cursor(traces.size(), 0);
    for (const double u : grid) {
        long evals = 0;
        double best = std::numeric_limits<double>::infinity();
        bool any = false;
        for (std::size_t i = 0; i < traces.size(); ++i) {
            const auto& pts = traces[i].points;
            while (cursor[i] < pts.size() && pts[cursor[i]].time <= u) ++cursor[i];
            if (cursor[i] == 0) continue;
            const TracePoint& last = pts[cursor[i] - 1];
            evals += last.evals;
            best = std::min(best, last.best);
            any = true;
        }
        if (!any) continue;
        out.points.push_back({evals, u, best});
    }
    return out;
}

double best_at_evals(const TimedTrace& trace, long evals) {
    const auto it = std::upper_bound(
        trace.points.begin(), trace.points.end(), evals,
        [](long v, const TracePoint& p) { return v < p.evals; });
    if (it == trace.points.begin()) return std::numeric_limits<double>::infinity();
    return std::prev(it)->best;
}

double best_at_time(const TimedTrace& trace, double time) {
    const auto it = std::upper_bound(
        trace.points.begin(), trace.points.end(), time,
        [](double v, const TracePoint& p) { return v < p.time; });
    if (it == trace.points.begin()) return std::numeric_limits<double>::infinity();
    return std::prev(it)->best;
}

std::string_view to_string(ExecMode mode) {
    switch (mode) {
        case ExecMode::Serial: return "serial";
        case ExecMode::MultiStart: return "multi-start";
        case ExecMode::MultiSwarm: return "multi-swarm";
        case ExecMode::BeeByBee: return "bbb";
    }
    return "serial";
}

std::optional<ExecMode> mode_from_name(std::string_view name) {
    if (name == "serial") return ExecMode::Serial;
    if (name == "multi-start") return ExecMode::MultiStart;
    if (name == "multi-swarm") return ExecMode::MultiSwarm;
    if (name == "bbb") return ExecMode::BeeByBee;
    return std::nullopt;
}

}  // namespace asbec
