#pragma once

#include <string_view>
#include <vector>

#include "asbec/colony.hpp"

namespace asbec {

enum class ExecMode { Serial, MultiStart, MultiSwarm, BeeByBee };

// How a single logical run uses its p virtual workers. per_colony_budget is
// the evaluation budget of each colony (total work is p times that for the
// multi-colony modes).
struct ParallelPlan {
    ExecMode mode = ExecMode::Serial;
    int workers = 8;
    int exchange_every = 20;  // Multi-Swarm sync period, in cycles
    long per_colony_budget = 1600;

    // Throws std::invalid_argument when the plan cannot drive cfg.
    void validate(const ColonyConfig& cfg) const;
};

struct ParallelResult {
    std::vector<TimedTrace> per_colony;
    TimedTrace combined;
};

// Independent colonies with seeds seed+0..seed+p-1, no communication.
// Combined trace: per lockstep time unit, minimum best across colonies,
// evals = total work done by that time.
ParallelResult run_multi_start(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                               const ParallelPlan& plan);

// Multi-Start plus a synchronization exchange every exchange_every cycles:
// colony i's source set becomes {best source of colony 0, ..., colony p-1},
// which requires p == SN. Exchanges consume no evaluations.
ParallelResult run_multi_swarm(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                               const ParallelPlan& plan);

// Single colony with batched candidate waves (see Colony::Batched).
TimedTrace run_bee_by_bee(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                          const ParallelPlan& plan);

// Runs plan.mode and returns the (combined) trace. cfg.budget is ignored in
// favor of plan.per_colony_budget.
TimedTrace run_plan(const ColonyConfig& cfg, const BenchmarkSpec& spec,
                    const ParallelPlan& plan);

// Pointwise minimum of best-so-far over the union time grid, aligning
// off-grid traces by last-value-carried-forward. The evals column sums the
// work of all input traces, so inputs must be distinct runs.
TimedTrace pointwise_min_merge(const std::vector<TimedTrace>& traces);

// Best-so-far no later than the query point; +infinity before the first one.
double best_at_evals(const TimedTrace& trace, long evals);
double best_at_time(const TimedTrace& trace, double time);

std::string_view to_string(ExecMode mode);
std::optional<ExecMode> mode_from_name(std::string_view name);

}  // namespace asbec
