#include "asbec/colony.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "asbec/threading.hpp"

namespace asbec {

void ColonyConfig::validate() const {
    if (sn < 2)
        throw std::invalid_argument("colony needs at least 2 food sources, got " +
                                    std::to_string(sn));
    if (on < 1)
        throw std::invalid_argument("colony needs at least 1 onlooker, got " +
                                    std::to_string(on));
    if (limit < 1)
        throw std::invalid_argument("scout limit must be >= 1, got " +
                                    std::to_string(limit));
    if (budget < sn)
        throw std::invalid_argument(
            "budget " + std::to_string(budget) + " cannot cover initialization of " +
            std::to_string(sn) + " sources");
    if (!tech.valid())
        throw std::invalid_argument(
            "invalid technology set: check >= 1, interpolation requires "
            "opposition, prophet memory >= 2");
}

std::vector<std::size_t> roulette_assignment(const std::vector<double>& fits,
                                             int onlookers, RandomStream& rng) {
    double total = 0.0;
    for (double f : fits) total += f;
    std::vector<std::size_t> picks;
    picks.reserve(static_cast<std::size_t>(onlookers));
    for (int b = 0; b < onlookers; ++b) {
        const double u = rng.uniform01() * total;
        double cum = 0.0;
        std::size_t pick = fits.size() - 1;
        for (std::size_t j = 0; j < fits.size(); ++j) {
            cum += fits[j];
            if (u < cum) {
                pick = j;
                break;
            }
        }
        picks.push_back(pick);
    }
    return picks;
}

std::optional<std::size_t> scout_target(const std::vector<FoodSource>& sources,
                                        int limit) {
    std::optional<std::size_t> target;
    for (std::size_t j = 0; j < sources.size(); ++j) {
        if (sources[j].trials <= limit) continue;
        if (!target || sources[j].trials > sources[*target].trials) target = j;
    }
    return target;
}

Colony::Colony(const ColonyConfig& cfg, const BenchmarkSpec& spec)
    : Colony(cfg, spec, false, 1) {}

Colony::Colony(const ColonyConfig& cfg, const BenchmarkSpec& spec, Batched batched)
    : Colony(cfg, spec, true, batched.workers) {}

Colony::Colony(const ColonyConfig& cfg, const BenchmarkSpec& spec, bool batched,
               int workers)
    : cfg_(cfg), spec_(spec), rng_(cfg.seed), batched_(batched) {
    cfg_.validate();
    if (spec_.m == 0 || spec_.bounds.size() != spec_.m)
        throw std::invalid_argument("benchmark spec bounds do not match its dimension");
    if (batched_) {
        if (workers < 1 || workers > cfg_.sn)
            throw std::invalid_argument(
                "bee-by-bee workers must lie in [1, SN], got " + std::to_string(workers));
        wave_workers_ = workers;
        eval_threads_ = configured_threads().value_or(1);
    }
    best_f_ = std::numeric_limits<double>::infinity();
    last_memorized_f_ = std::numeric_limits<double>::infinity();
    improved_this_cycle_.assign(static_cast<std::size_t>(cfg_.sn), 0);
    trace_best_.reserve(static_cast<std::size_t>(cfg_.budget));
    init_sources();
}

// Mirrors evaluate(): noise factors are drawn from the colony stream in bee
// order before any value is computed, so wave evaluation is independent of
// the actual thread schedule.
std::vector<double> Colony::evaluate_batch(const std::vector<const Position*>& xs) {
    const long n = static_cast<long>(xs.size());
    std::vector<double> values(xs.size());
    std::vector<double> noise;
    if (spec_.noise_fraction > 0.0) {
        noise.resize(xs.size());
        for (auto& u : noise) u = rng_.uniform_pm1();
    }
    parallel_for(n, eval_threads_, [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            double v = evaluate_exact(spec_, *xs[static_cast<std::size_t>(i)]);
            if (!noise.empty())
                v *= 1.0 + spec_.noise_fraction * noise[static_cast<std::size_t>(i)];
            values[static_cast<std::size_t>(i)] = v;
        }
    });
    return values;
}

void Colony::init_sources() {
    const std::size_t sn = static_cast<std::size_t>(cfg_.sn);
    std::vector<Position> positions(sn);
    for (auto& pos : positions) {
        pos.resize(spec_.m);
        for (std::size_t i = 0; i < spec_.m; ++i)
            pos[i] = rng_.uniform(spec_.bounds.lower[i], spec_.bounds.upper[i]);
        if (!batched_) {
            const double f = eval_and_record(pos);
            sources_.push_back({pos, f, fitness(f), 0, {}});
        }
    }
    if (!batched_) {
        maybe_memorize();
        return;
    }
    std::vector<const Position*> xs;
    xs.reserve(sn);
    for (const auto& pos : positions) xs.push_back(&pos);
    const std::vector<double> values = evaluate_batch(xs);
    for (std::size_t j = 0; j < sn; ++j) {
        const double stamp =
            time_units_ + static_cast<double>(j / static_cast<std::size_t>(wave_workers_)) + 1.0;
        record_eval(positions[j], values[j], stamp);
        sources_.push_back({positions[j], values[j], fitness(values[j]), 0, {}});
    }
    time_units_ += static_cast<double>((cfg_.sn + wave_workers_ - 1) / wave_workers_);
    maybe_memorize();
}

double Colony::eval_and_record(const Position& x) {
    const double f = evaluate(spec_, x, rng_);
    record_eval(x, f, 0.0);
    return f;
}

void Colony::record_eval(const Position& x, double f, double time_stamp) {
    ++evals_used_;
    if (f < best_f_) {
        best_f_ = f;
        best_pos_ = x;
    }
    trace_best_.push_back(best_f_);
    if (batched_) trace_time_.push_back(time_stamp);
}

// Memorization step: one optimal-path entry per point at which the global
// best is found improved, not one per improving evaluation.
bool Colony::maybe_memorize() {
    if (!(best_f_ < last_memorized_f_)) return false;
    path_.push_back({best_pos_, best_f_});
    if (path_.size() > static_cast<std::size_t>(cfg_.tech.prophet_memory))
        path_.erase(path_.begin());
    last_memorized_f_ = best_f_;
    return true;
}

void Colony::clamp_into_bounds(Position& x) const {
    if (cfg_.bounds_mode != BoundsMode::Clamp) return;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = spec_.bounds.clamp(i, x[i]);
}

void Colony::reset_super_bee_states() {
    for (auto& src : sources_) src.super_bee = SuperBeeState{};
}

// Draw order of one greedy visit: partner index, changed dims, one u per
// changed dim (ascending). Opposite and interpolation visits draw nothing.
Colony::VisitPlan Colony::plan_visit(std::size_t j) {
    const FoodSource& src = sources_[j];
    const SuperBeeState& sb = src.super_bee;
    VisitPlan plan;
    plan.source = j;
    plan.stage = sb.stage;
    switch (sb.stage) {
        case SuperBeeStage::Fresh: {
            const std::size_t partner = rng_.index_excluding(sources_.size(), j);
            plan.dims = select_dims(spec_.m, cfg_.tech.multi_param, rng_);
            plan.candidate = src.position;
            for (const std::size_t i : plan.dims) {
                const double u = rng_.uniform_pm1();
                plan.candidate[i] =
                    blend_step(src.position[i], sources_[partner].position[i], u);
            }
            plan.base = src.position;
            plan.f_base = src.f_value;
            break;
        }
        case SuperBeeStage::AfterRandomFail: {
            plan.candidate = opposite_point(sb.base, sb.move_random, sb.changed_dims);
            plan.base = sb.base;
            plan.f_base = sb.f_base;
            plan.dims = sb.changed_dims;
            plan.move_random = sb.move_random;
            plan.f_random = sb.f_random;
            break;
        }
        case SuperBeeStage::AfterOppositeFail: {
            plan.candidate = sb.base;
            for (const std::size_t i : sb.changed_dims) {
                const double x0 = sb.base[i];
                const double x1 = sb.move_random[i];
                const double x2 = sb.move_opposite[i];
                if (std::abs(x1 - x0) <= kParabolaEps ||
                    std::abs(x2 - x0) <= kParabolaEps ||
                    std::abs(x2 - x1) <= kParabolaEps)
                    continue;
                const auto v =
                    parabola_vertex(x0, sb.f_base, x1, sb.f_random, x2, sb.f_opposite);
                // Vertices farther than 10x the sampled step are distrusted.
                const double step = std::max(std::abs(x1 - x0), std::abs(x2 - x0));
                if (v && std::abs(*v - x0) <= 10.0 * step) plan.candidate[i] = *v;
            }
            plan.base = sb.base;
            plan.f_base = sb.f_base;
            plan.dims = sb.changed_dims;
            break;
        }
    }
    clamp_into_bounds(plan.candidate);
    return plan;
}

Colony::VisitPlan Colony::plan_scout(std::size_t target) {
    VisitPlan plan;
    plan.source = target;
    plan.kind = VisitKind::ScoutReplace;
    if (cfg_.tech.smart_scout) {
        std::vector<Position> positions;
        positions.reserve(sources_.size());
        for (const auto& src : sources_) positions.push_back(src.position);
        plan.candidate = smart_scout_position(positions, spec_.bounds, rng_);
        clamp_into_bounds(plan.candidate);
    } else {
        plan.candidate.resize(spec_.m);
        for (std::size_t i = 0; i < spec_.m; ++i)
            plan.candidate[i] = rng_.uniform(spec_.bounds.lower[i], spec_.bounds.upper[i]);
    }
    return plan;
}

Colony::VisitPlan Colony::plan_prophet(std::size_t target, Position guess) {
    VisitPlan plan;
    plan.source = target;
    plan.kind = VisitKind::ProphetReplace;
    plan.candidate = std::move(guess);
    return plan;
}



void Colony::commit_visit(const VisitPlan& plan, double f) {
    FoodSource& src = sources_[plan.source];
    if (plan.kind == VisitKind::ScoutReplace) {
        // Scout replacement is unconditional.
        src.position = plan.candidate;
        src.f_value = f;
        src.fit = fitness(f);
        src.trials = 0;
        src.super_bee = SuperBeeState{};
        ++scout_evals_;
        return;
    }
    if (plan.kind == VisitKind::ProphetReplace) {
        // A failed guess costs the evaluation only; the source survives.
        ++prophet_evals_;
        if (!greedy_accepts(src.f_value, f)) return;
        src.position = plan.candidate;
        src.f_value = f;
        src.fit = fitness(f);
        src.trials = 0;
        src.super_bee = SuperBeeState{};
        improved_this_cycle_[plan.source] = 1;
        return;
    }
    if (greedy_accepts(src.f_value, f)) {
        src.position = plan.candidate;
        src.f_value = f;
        src.fit = fitness(f);
        src.trials = 0;
        src.super_bee = SuperBeeState{};
        improved_this_cycle_[plan.source] = 1;
        return;
    }
    SuperBeeState& sb = src.super_bee;
    switch (plan.stage) {
        case SuperBeeStage::Fresh:
            if (cfg_.tech.opposition) {
                sb.stage = SuperBeeStage::AfterRandomFail;
                sb.base = plan.base;
                sb.move_random = plan.candidate;
                sb.move_opposite.clear();
                sb.f_base = plan.f_base;
                sb.f_random = f;
                sb.f_opposite = 0.0;
                sb.changed_dims = plan.dims;
            }
            break;
        case SuperBeeStage::AfterRandomFail:
            if (cfg_.tech.interpolation) {
                sb.stage = SuperBeeStage::AfterOppositeFail;
                sb.base = plan.base;
                sb.move_random = plan.move_random;
                sb.move_opposite = plan.candidate;
                sb.f_base = plan.f_base;
                sb.f_random = plan.f_random;
                sb.f_opposite = f;
                sb.changed_dims = plan.dims;
            } else {
                src.super_bee = SuperBeeState{};
            }
            break;
        case SuperBeeStage::AfterOppositeFail:
            src.super_bee = SuperBeeState{};
            break;
    }
}

std::vector<std::size_t> Colony::onlooker_assignment() {
    std::vector<double> fits;
    fits.reserve(sources_.size());
    for (const auto& src : sources_) fits.push_back(src.fit);
    if (!cfg_.tech.biased) return roulette_assignment(fits, cfg_.on, rng_);
    const std::vector<int> counts = biased_allocation(rescale_fitness(fits), cfg_.on);
    std::vector<std::size_t> picks;
    picks.reserve(static_cast<std::size_t>(cfg_.on));
    for (std::size_t j = 0; j < counts.size(); ++j)
        for (int c = 0; c < counts[j]; ++c) picks.push_back(j);
    return picks;
}

void Colony::end_of_cycle_bookkeeping() {
    for (std::size_t j = 0; j < sources_.size(); ++j)
        if (!improved_this_cycle_[j]) ++sources_[j].trials;
}

void Colony::run_cycle() {
    if (batched_)
        run_cycle_batched();
    else
        run_cycle_serial();
}


void Colony::run() {
    while (!budget_exhausted()) run_cycle();
}

// Per-cycle colony stream order: employee visits (check passes), roulette
// draws (biased assignment draws nothing), onlooker visits (check passes),
// prophet evaluation, scout draws + evaluation. Each evaluation of a noisy
// spec consumes one extra draw.
void Colony::run_cycle_serial() {
    if (budget_exhausted()) return;
    std::fill(improved_this_cycle_.begin(), improved_this_cycle_.end(), 0);

    for (int pass = 0; pass < cfg_.tech.check; ++pass) {
        for (int j = 0; j < cfg_.sn; ++j) {
            if (budget_exhausted()) return;
            const VisitPlan plan = plan_visit(static_cast<std::size_t>(j));
            commit_visit(plan, eval_and_record(plan.candidate));
        }
    }
    reset_super_bee_states();

    const std::vector<std::size_t> assignment = onlooker_assignment();
    for (int pass = 0; pass < cfg_.tech.check; ++pass) {
        for (const std::size_t j : assignment) {
            if (budget_exhausted()) return;
            const VisitPlan plan = plan_visit(j);
            commit_visit(plan, eval_and_record(plan.candidate));
        }
    }
    reset_super_bee_states();

    const bool new_best = maybe_memorize();
    if (cfg_.tech.prophet && new_best && path_.size() >= 2) {
        if (budget_exhausted()) return;
        Position guess = *prophet_guess(path_, cfg_.tech.prophet_catalyst);
        clamp_into_bounds(guess);
        const VisitPlan plan = plan_prophet(best_source_index(), std::move(guess));
        commit_visit(plan, eval_and_record(plan.candidate));
        maybe_memorize();
    }

    end_of_cycle_bookkeeping();

    if (const auto target = scout_target(sources_, cfg_.limit)) {
        if (budget_exhausted()) return;
        const VisitPlan plan = plan_scout(*target);
        commit_visit(plan, eval_and_record(plan.candidate));
    }
    ++cycles_;
}

// Batched semantics: every block is planned against the pre-block state,
// evaluated (waves of wave_workers_, 1 time unit each), then committed in
// bee order. Scout and prophet plans created at cycle end join the next
// cycle's first employee block.
void Colony::run_cycle_batched() {
    if (budget_exhausted()) return;
    std::fill(improved_this_cycle_.begin(), improved_this_cycle_.end(), 0);

    for (int pass = 0; pass < cfg_.tech.check; ++pass) {
        std::vector<VisitPlan> block;
        if (pass == 0) block = std::move(deferred_);
        deferred_.clear();
        for (int j = 0; j < cfg_.sn; ++j)
            block.push_back(plan_visit(static_cast<std::size_t>(j)));
        execute_block(std::move(block));
        if (budget_exhausted()) return;
    }
    reset_super_bee_states();

    const std::vector<std::size_t> assignment = onlooker_assignment();
    for (int pass = 0; pass < cfg_.tech.check; ++pass) {
        std::vector<VisitPlan> block;
        block.reserve(assignment.size());
        for (const std::size_t j : assignment) block.push_back(plan_visit(j));
        execute_block(std::move(block));
        if (budget_exhausted()) return;
    }
    reset_super_bee_states();

    const bool new_best = maybe_memorize();
    if (cfg_.tech.prophet && new_best && path_.size() >= 2) {
        Position guess = *prophet_guess(path_, cfg_.tech.prophet_catalyst);
        clamp_into_bounds(guess);
        deferred_.push_back(plan_prophet(best_source_index(), std::move(guess)));
    }

    end_of_cycle_bookkeeping();

    if (const auto target = scout_target(sources_, cfg_.limit))
        deferred_.push_back(plan_scout(*target));
    ++cycles_;
}

void Colony::execute_block(std::vector<VisitPlan> block) {
    if (block.empty() || remaining() <= 0) return;
    const std::size_t take =
        std::min(block.size(), static_cast<std::size_t>(remaining()));
    std::vector<const Position*> xs;
    xs.reserve(take);
    for (std::size_t i = 0; i < take; ++i) xs.push_back(&block[i].candidate);
    const std::vector<double> values = evaluate_batch(xs);
    for (std::size_t i = 0; i < take; ++i) {
        const double stamp =
            time_units_ + static_cast<double>(i / static_cast<std::size_t>(wave_workers_)) + 1.0;
        record_eval(block[i].candidate, values[i], stamp);
    }
    time_units_ += static_cast<double>(
        (static_cast<long>(take) + wave_workers_ - 1) / wave_workers_);
    for (std::size_t i = 0; i < take; ++i) commit_visit(block[i], values[i]);
}

TimedTrace Colony::timed_trace() const {
    TimedTrace trace;
    trace.points.reserve(trace_best_.size());
    for (std::size_t i = 0; i < trace_best_.size(); ++i) {
        const double t = batched_ ? trace_time_[i] : static_cast<double>(i + 1);
        trace.points.push_back({static_cast<long>(i + 1), t, trace_best_[i]});
    }
    return trace;
}

std::size_t Colony::best_source_index() const {
    std::size_t best = 0;
    for (std::size_t j = 1; j < sources_.size(); ++j)
        if (sources_[j].f_value < sources_[best].f_value) best = j;
    return best;
}

void Colony::install_sources(const std::vector<PathEntry>& replacements) {
    if (replacements.size() != sources_.size())
        throw std::invalid_argument("source exchange payload size mismatch");
    for (std::size_t j = 0; j < sources_.size(); ++j) {
        sources_[j].position = replacements[j].x;
        sources_[j].f_value = replacements[j].f;
        sources_[j].fit = fitness(replacements[j].f);
        sources_[j].trials = 0;
        sources_[j].super_bee = SuperBeeState{};
    }
}

}  // namespace asbec
