#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "asbec/parallel.hpp"
#include "doctest.h"

using namespace asbec;

namespace {

ColonyConfig base_cfg(std::uint64_t seed, long budget,
                      TechnologySet tech = TechnologySet::abc()) {
    ColonyConfig cfg;
    cfg.sn = 8;
    cfg.on = 8;
    cfg.limit = 10;
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.tech = tech;
    return cfg;
}

TimedTrace trace_of(const std::vector<double>& times,
                    const std::vector<double>& bests) {
    TimedTrace t;
    for (std::size_t i = 0; i < times.size(); ++i)
        t.points.push_back({static_cast<long>(i) + 1, times[i], bests[i]});
    return t;
}

bool same_points(const TimedTrace& a, const TimedTrace& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const TracePoint &p = a.points[i], &q = b.points[i];
        if (p.evals != q.evals || p.time != q.time || p.best != q.best)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("parallel plan validation") {
    const ColonyConfig cfg = base_cfg(1, 1600);
    ParallelPlan plan;
    plan.mode = ExecMode::MultiStart;
    plan.workers = 4;
    plan.per_colony_budget = 1600;
    CHECK_NOTHROW(plan.validate(cfg));

    ParallelPlan bad = plan;
    bad.workers = 0;
    CHECK_THROWS_AS(bad.validate(cfg), std::invalid_argument);
    bad = plan;
    bad.per_colony_budget = cfg.sn - 1;
    CHECK_THROWS_AS(bad.validate(cfg), std::invalid_argument);

    bad = plan;
    bad.mode = ExecMode::MultiSwarm;
    CHECK_THROWS_AS(bad.validate(cfg), std::invalid_argument);  // workers != SN
    bad.workers = cfg.sn;
    CHECK_NOTHROW(bad.validate(cfg));
    bad.exchange_every = 0;
    CHECK_THROWS_AS(bad.validate(cfg), std::invalid_argument);

    bad = plan;
    bad.mode = ExecMode::BeeByBee;
    bad.workers = cfg.sn + 1;
    CHECK_THROWS_AS(bad.validate(cfg), std::invalid_argument);
    bad.workers = cfg.sn;
    CHECK_NOTHROW(bad.validate(cfg));
}

TEST_CASE("execution mode names round-trip") {
    for (const ExecMode mode : {ExecMode::Serial, ExecMode::MultiStart,
                                ExecMode::MultiSwarm, ExecMode::BeeByBee}) {
        const auto back = mode_from_name(to_string(mode));
        REQUIRE(back.has_value());
        CHECK(*back == mode);
    }
    CHECK_FALSE(mode_from_name("openmp").has_value());
}

TEST_CASE("pointwise minimum merge") {
    SUBCASE("shared grid takes the pointwise minimum") {
        const TimedTrace a = trace_of({1.0, 2.0, 3.0}, {3.0, 2.0, 2.0});
        const TimedTrace b = trace_of({1.0, 2.0, 3.0}, {4.0, 1.0, 1.0});
        const TimedTrace merged = pointwise_min_merge({a, b});
        REQUIRE(merged.points.size() == 3);
        CHECK(merged.points[0].best == 3.0);
        CHECK(merged.points[1].best == 1.0);
        CHECK(merged.points[2].best == 1.0);
        // The evals column sums the work of both runs.
        CHECK(merged.points[0].evals == 2);
        CHECK(merged.points[1].evals == 4);
        CHECK(merged.points[2].evals == 6);
    }
    SUBCASE("single input passes through") {
        const TimedTrace a = trace_of({1.0, 2.0}, {5.0, 4.0});
        CHECK(same_points(pointwise_min_merge({a}), a));
    }
    SUBCASE("merging a run with itself keeps its bests") {
        const TimedTrace a = trace_of({1.0, 2.0}, {5.0, 4.0});
        const TimedTrace merged = pointwise_min_merge({a, a});
        REQUIRE(merged.points.size() == 2);
        CHECK(merged.points[0].best == 5.0);
        CHECK(merged.points[1].best == 4.0);
        CHECK(merged.points[0].evals == 2);
        CHECK(merged.points[1].evals == 4);
    }
    SUBCASE("off-grid traces align by last value carried forward") {
        const TimedTrace a = trace_of({1.0, 2.0, 3.0}, {9.0, 6.0, 5.0});
        const TimedTrace b = trace_of({0.5, 2.5}, {8.0, 4.0});
        const TimedTrace merged = pointwise_min_merge({a, b});
        REQUIRE(merged.points.size() == 5);
        // Grid 0.5, 1, 2, 2.5, 3; before a trace starts it contributes nothing.
        CHECK(merged.points[0].time == 0.5);
        CHECK(merged.points[0].best == 8.0);
        CHECK(merged.points[0].evals == 1);
        CHECK(merged.points[1].best == 8.0);
        CHECK(merged.points[1].evals == 2);
        CHECK(merged.points[2].best == 6.0);
        CHECK(merged.points[2].evals == 3);
        CHECK(merged.points[3].best == 4.0);
        CHECK(merged.points[3].evals == 4);
        CHECK(merged.points[4].best == 4.0);
        CHECK(merged.points[4].evals == 5);
    }
    SUBCASE("empty input is rejected") {
        CHECK_THROWS_AS(pointwise_min_merge({}), std::invalid_argument);
    }
}

TEST_CASE("best-at query helpers") {
    const TimedTrace t = trace_of({1.0, 2.0, 3.0}, {5.0, 4.0, 3.0});
    CHECK(best_at_evals(t, 0) == std::numeric_limits<double>::infinity());
    CHECK(best_at_evals(t, 1) == 5.0);
    CHECK(best_at_evals(t, 2) == 4.0);
    CHECK(best_at_evals(t, 100) == 3.0);
    CHECK(best_at_time(t, 0.5) == std::numeric_limits<double>::infinity());
    CHECK(best_at_time(t, 1.0) == 5.0);
    CHECK(best_at_time(t, 2.7) == 4.0);
    CHECK(best_at_time(t, 3.0) == 3.0);
}

TEST_CASE("multi-start with one worker degenerates to the serial run") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Rastrigin);
    const ColonyConfig cfg = base_cfg(9, 400);
    ParallelPlan plan;
    plan.mode = ExecMode::MultiStart;
    plan.workers = 1;
    plan.per_colony_budget = 400;

    const ParallelResult res = run_multi_start(cfg, spec, plan);
    Colony serial(cfg, spec);
    serial.run();
    REQUIRE(res.per_colony.size() == 1);
    CHECK(same_points(res.combined, serial.timed_trace()));
}

TEST_CASE("multi-start runs independent colonies and sums their work") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Rastrigin);
    const ColonyConfig cfg = base_cfg(40, 400);
    ParallelPlan plan;
    plan.mode = ExecMode::MultiStart;
    plan.workers = 4;
    plan.per_colony_budget = 400;

    const ParallelResult res = run_multi_start(cfg, spec, plan);
    REQUIRE(res.per_colony.size() == 4);
    for (const auto& t : res.per_colony) CHECK(t.points.size() == 400);
    // Different seeds explore differently.
    CHECK_FALSE(same_points(res.per_colony[0], res.per_colony[1]));

    // Total work: p colonies times the per-colony budget.
    CHECK(res.combined.points.back().evals == 4 * 400);
    // The ensemble is never worse than any member at any shared instant.
    for (const auto& t : res.per_colony)
        for (const double u : {10.0, 100.0, 250.0, 400.0})
            CHECK(best_at_time(res.combined, u) <= best_at_time(t, u));
    double final_min = std::numeric_limits<double>::infinity();
    for (const auto& t : res.per_colony)
        final_min = std::min(final_min, t.points.back().best);
    CHECK(res.combined.points.back().best == final_min);

    const ParallelResult again = run_multi_start(cfg, spec, plan);
    CHECK(same_points(res.combined, again.combined));
}

TEST_CASE("multi-swarm equals multi-start until the first exchange") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Rastrigin);
    // 10 cycles of 16 evaluations: the budget ends before the first exchange
    // at cycle 20, so the synchronization never kicks in.
    const ColonyConfig cfg = base_cfg(3, 168);
    ParallelPlan plan;
    plan.mode = ExecMode::MultiSwarm;
    plan.workers = 8;
    plan.exchange_every = 20;
    plan.per_colony_budget = 168;

    const ParallelResult swarm = run_multi_swarm(cfg, spec, plan);
    ParallelPlan start = plan;
    start.mode = ExecMode::MultiStart;
    const ParallelResult indep = run_multi_start(cfg, spec, start);
    REQUIRE(swarm.per_colony.size() == indep.per_colony.size());
    for (std::size_t i = 0; i < swarm.per_colony.size(); ++i)
        CHECK(same_points(swarm.per_colony[i], indep.per_colony[i]));
    CHECK(same_points(swarm.combined, indep.combined));
}

TEST_CASE("multi-swarm exchanges are free and change the search") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Rastrigin);
    // 45 cycles: exchanges fire after cycles 20 and 40.
    const ColonyConfig cfg = base_cfg(3, 728);
    ParallelPlan plan;
    plan.mode = ExecMode::MultiSwarm;
    plan.workers = 8;
    plan.exchange_every = 20;
    plan.per_colony_budget = 728;

    const ParallelResult swarm = run_multi_swarm(cfg, spec, plan);
    ParallelPlan start = plan;
    start.mode = ExecMode::MultiStart;
    const ParallelResult indep = run_multi_start(cfg, spec, start);

    // Same total evaluations even though sources were exchanged twice.
    CHECK(swarm.combined.points.back().evals == 8 * 728);
    CHECK(swarm.combined.points.back().evals ==
          indep.combined.points.back().evals);
    CHECK_FALSE(same_points(swarm.combined, indep.combined));
}

TEST_CASE("multi-swarm driver matches a hand-driven replica") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Sphere);
    ColonyConfig cfg;
    cfg.sn = 2;
    cfg.on = 2;
    cfg.limit = 10;
    cfg.seed = 77;
    cfg.budget = 22;  // 5 cycles of 4 evaluations
    ParallelPlan plan;
    plan.mode = ExecMode::MultiSwarm;
    plan.workers = 2;
    plan.exchange_every = 2;
    plan.per_colony_budget = 22;

    const ParallelResult swarm = run_multi_swarm(cfg, spec, plan);

    // Replica: lockstep cycles, and after every second cycle each colony's
    // sources become the colonies' current best sources.
    std::vector<Colony> replica;
    for (int c = 0; c < 2; ++c) {
        ColonyConfig cc = cfg;
        cc.seed = cfg.seed + static_cast<std::uint64_t>(c);
        replica.emplace_back(cc, spec);
    }
    for (int cycle = 1; cycle <= 5; ++cycle) {
        for (auto& col : replica) col.run_cycle();
        if (cycle % 2 != 0 || replica[0].budget_exhausted()) continue;
        std::vector<PathEntry> payload;
        for (const auto& col : replica) {
            const FoodSource& best = col.sources()[col.best_source_index()];
            payload.push_back({best.position, best.f_value});
        }
        for (auto& col : replica) col.install_sources(payload);
    }
    for (std::size_t i = 0; i < replica.size(); ++i) {
        CHECK(same_points(swarm.per_colony[i], replica[i].timed_trace()));
        // Post-exchange population: every colony saw the same payload, so
        // colony sources coincide right after a synchronization point.
    }
    CHECK(same_points(
        swarm.combined,
        pointwise_min_merge({replica[0].timed_trace(), replica[1].timed_trace()})));
}

TEST_CASE("bee-by-bee waves advance one time unit each") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Sphere);
    const ColonyConfig cfg = base_cfg(13, 88);  // init + 5 plain cycles

    SUBCASE("full-width waves") {
        ParallelPlan plan;
        plan.mode = ExecMode::BeeByBee;
        plan.workers = 8;
        plan.per_colony_budget = 88;
        const TimedTrace t = run_bee_by_bee(cfg, spec, plan);
        REQUIRE(t.points.size() == 88);
        // 1 init wave + 2 waves per plain cycle.
        CHECK(t.points.back().time == 11.0);
        CHECK(t.points.back().evals == 88);
    }
    SUBCASE("half-width waves double the clock") {
        ParallelPlan plan;
        plan.mode = ExecMode::BeeByBee;
        plan.workers = 4;
        plan.per_colony_budget = 88;
        const TimedTrace t = run_bee_by_bee(cfg, spec, plan);
        CHECK(t.points.back().time == 22.0);
    }
    SUBCASE("one worker pays one unit per evaluation") {
        ParallelPlan plan;
        plan.mode = ExecMode::BeeByBee;
        plan.workers = 1;
        plan.per_colony_budget = 88;
        const TimedTrace t = run_bee_by_bee(cfg, spec, plan);
        for (std::size_t i = 0; i < t.points.size(); ++i)
            CHECK(t.points[i].time == static_cast<double>(i) + 1.0);
    }
}

TEST_CASE("bee-by-bee accounting with enhanced technologies") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Rastrigin);
    ColonyConfig cfg = base_cfg(19, 100000, TechnologySet::asbec());
    Colony colony(cfg, spec, Colony::Batched{8});
    for (int c = 0; c < 30; ++c) colony.run_cycle();
    // Every evaluation is recorded exactly once, including deferred scout
    // and prophet visits executed in a later employee block.
    CHECK(colony.evals_used() == 8 + 30 * 48 + colony.prophet_evals() +
                                     colony.scout_evals());
    CHECK(colony.trace_best().size() ==
          static_cast<std::size_t>(colony.evals_used()));
    const TimedTrace t = colony.timed_trace();
    for (std::size_t i = 1; i < t.points.size(); ++i) {
        CHECK(t.points[i].time >= t.points[i - 1].time);
        CHECK(t.points[i].best <= t.points[i - 1].best);
    }
}

TEST_CASE("bee-by-bee traces do not depend on the evaluation thread count") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Rastrigin);
    const ColonyConfig cfg = base_cfg(23, 640, TechnologySet::asbec());
    ParallelPlan plan;
    plan.mode = ExecMode::BeeByBee;
    plan.workers = 8;
    plan.per_colony_budget = 640;

    setenv("ASBEC_THREADS", "1", 1);
    const TimedTrace solo = run_bee_by_bee(cfg, spec, plan);
    setenv("ASBEC_THREADS", "4", 1);
    const TimedTrace pooled = run_bee_by_bee(cfg, spec, plan);
    unsetenv("ASBEC_THREADS");
    CHECK(same_points(solo, pooled));
}

TEST_CASE("run_plan dispatches and applies the per-colony budget") {
    const BenchmarkSpec spec = suite_spec(BenchmarkId::Sphere);
    ColonyConfig cfg = base_cfg(31, 16);  // overridden by the plan
    ParallelPlan plan;
    plan.mode = ExecMode::Serial;
    plan.workers = 1;
    plan.per_colony_budget = 80;

    const TimedTrace serial = run_plan(cfg, spec, plan);
    CHECK(serial.points.size() == 80);

    plan.mode = ExecMode::MultiStart;
    plan.workers = 2;
    const TimedTrace start = run_plan(cfg, spec, plan);
    CHECK(start.points.back().evals == 160);

    plan.mode = ExecMode::MultiSwarm;
    plan.workers = 8;
    const TimedTrace swarm = run_plan(cfg, spec, plan);
    CHECK(swarm.points.back().evals == 8 * 80);

    plan.mode = ExecMode::BeeByBee;
    const TimedTrace bbb = run_plan(cfg, spec, plan);
    CHECK(bbb.points.size() == 80);
    CHECK(bbb.points.back().time < 80.0);
}
