#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asbec/objectives.hpp"
#include "asbec/random.hpp"
#include "asbec/technologies.hpp"

namespace asbec {

enum class BoundsMode { Clamp, Free };

struct ColonyConfig {
    int sn = 8;      // food sources == employees
    int on = 8;      // onlookers
    int limit = 10;  // stagnation cycles before a source is scoutable
    long budget = 1600;
    std::uint64_t seed = 0;
    BoundsMode bounds_mode = BoundsMode::Clamp;
    TechnologySet tech;

    // Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

enum class SuperBeeStage { Fresh, AfterRandomFail, AfterOppositeFail };

// Memory of the excluding random -> opposite -> interpolation sequence.
// The recorded points deliberately ignore later source updates: the opposite
// and the parabola are built from the triple as it was sampled.
struct SuperBeeState {
    SuperBeeStage stage = SuperBeeStage::Fresh;
    Position base;
    Position move_random;
    Position move_opposite;
    double f_base = 0.0;
    double f_random = 0.0;
    double f_opposite = 0.0;
    std::vector<std::size_t> changed_dims;
};

struct FoodSource {
    Position position;
    double f_value = 0.0;
    double fit = 0.0;
    int trials = 0;
    SuperBeeState super_bee;
};

// Strict-improvement greedy rule; ties keep the incumbent.
inline bool greedy_accepts(double source_f, double candidate_f) {
    return candidate_f < source_f;
}

// One coordinate of the pseudo-random move, Eq. x_j + u * (x_j - x_k).
inline double blend_step(double xj, double xk, double u) {
    return xj + u * (xj - xk);
}

// Roulette-wheel onlooker assignment: each of the `onlookers` draws picks
// source j with probability fit_j / sum fit. One uniform draw per onlooker.
std::vector<std::size_t> roulette_assignment(const std::vector<double>& fits,
                                             int onlookers, RandomStream& rng);

// Scout target: among sources with trials > limit, the one with the largest
// trials (ties -> lowest index); nullopt when none qualify.
std::optional<std::size_t> scout_target(const std::vector<FoodSource>& sources,
                                        int limit);

// One point of a run trace: cumulative evaluations, machine time in
// evaluation units, and the best objective value seen so far.
struct TracePoint {
    long evals;
    double time;
    double best;
};

struct TimedTrace {
    std::vector<TracePoint> points;
};

// Single-colony engine. Deterministic given (config, spec, seed): every
// stochastic choice consumes the colony stream in a fixed order, documented
// in colony.cpp next to the cycle driver.
class Colony {
public:
    // Batched execution: group passes are planned against the pre-block
    // state, evaluated as waves of at most `workers` concurrent evaluations
    // (1 time unit per wave), and committed in bee order. Scout and prophet
    // evaluations are deferred into the next employee block.
    struct Batched {
        int workers = 8;
    };

    Colony(const ColonyConfig& cfg, const BenchmarkSpec& spec);
    Colony(const ColonyConfig& cfg, const BenchmarkSpec& spec, Batched batched);

    // One optimization cycle; stops mid-phase when the budget runs out.
    void run_cycle();

    // Cycles until the evaluation budget is exhausted.
    void run();

    bool budget_exhausted() const { return evals_used_ >= cfg_.budget; }

    long evals_used() const { return evals_used_; }
    long cycles_completed() const { return cycles_; }
    long scout_evals() const { return scout_evals_; }
    long prophet_evals() const { return prophet_evals_; }

    double best_value() const { return best_f_; }
    const Position& best_position() const { return best_pos_; }
    const std::vector<FoodSource>& sources() const { return sources_; }
    const std::vector<PathEntry>& optimal_path() const { return path_; }
    const ColonyConfig& config() const { return cfg_; }
    const BenchmarkSpec& spec() const { return spec_; }

    // Best-so-far value after each evaluation (length == evals_used).
    const std::vector<double>& trace_best() const { return trace_best_; }

    // Full trace with time stamps (serial: time == evaluation index).
    TimedTrace timed_trace() const;

    // Index of the best current source (min f, ties -> lowest index).
    std::size_t best_source_index() const;

    // Swarm exchange support: overwrite all sources with the given
    // position/value pairs; resets trials and super-bee memory, consumes no
    // evaluations, leaves best memory and trace untouched.
    void install_sources(const std::vector<PathEntry>& replacements);

private:
    enum class VisitKind { Greedy, ScoutReplace, ProphetReplace };

    struct VisitPlan {
        std::size_t source = 0;
        VisitKind kind = VisitKind::Greedy;
        SuperBeeStage stage = SuperBeeStage::Fresh;
        Position candidate;
        Position base;
        double f_base = 0.0;
        std::vector<std::size_t> dims;
        Position move_random;
        double f_random = 0.0;
    };

    Colony(const ColonyConfig& cfg, const BenchmarkSpec& spec, bool batched,
           int workers);

    void init_sources();
    VisitPlan plan_visit(std::size_t j);
    VisitPlan plan_scout(std::size_t target);
    VisitPlan plan_prophet(std::size_t target, Position guess);
    void commit_visit(const VisitPlan& plan, double f);
    double eval_and_record(const Position& x);
    void record_eval(const Position& x, double f, double time_stamp);
    // Extends the optimal path when the global best improved since the
    // previous memorization; returns whether it did.
    bool maybe_memorize();
    std::vector<double> evaluate_batch(const std::vector<const Position*>& xs);
    void clamp_into_bounds(Position& x) const;
    void reset_super_bee_states();
    std::vector<std::size_t> onlooker_assignment();
    void end_of_cycle_bookkeeping();

    void run_cycle_serial();
    void run_cycle_batched();
    // Evaluates (as far as the budget allows) and commits a planned block.
    void execute_block(std::vector<VisitPlan> block);

    long remaining() const { return cfg_.budget - evals_used_; }

    ColonyConfig cfg_;
    BenchmarkSpec spec_;
    RandomStream rng_;
    std::vector<FoodSource> sources_;

    Position best_pos_;
    double best_f_ = 0.0;
    double last_memorized_f_ = 0.0;
    std::vector<PathEntry> path_;

    long evals_used_ = 0;
    long cycles_ = 0;
    long scout_evals_ = 0;
    long prophet_evals_ = 0;

    std::vector<double> trace_best_;
    std::vector<double> trace_time_;  // batched mode only

    bool batched_ = false;
    int wave_workers_ = 1;
    int eval_threads_ = 1;
    double time_units_ = 0.0;
    std::vector<VisitPlan> deferred_;

    std::vector<char> improved_this_cycle_;
};

}  // namespace asbec
