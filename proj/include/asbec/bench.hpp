#pragma once

#include <atomic>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "asbec/metrics.hpp"
#include "asbec/technologies.hpp"

namespace asbec {

// One labeled way to run the optimizer.
struct RunSetup {
    std::string label;
    TechnologySet tech;
    ParallelPlan plan;
};

// Full experiment description, loadable from a JSON file. The labels "abc"
// and "asbec" are reserved for the built-in presets and always available.
struct ExperimentConfig {
    std::vector<std::string> functions;  // suite ids, in suite order
    std::vector<RunSetup> configs;
    int reps = 50;
    std::uint64_t base_seed = 1;
    long budget = 1600;
    std::string out_dir = "results";
    int sn = 8;
    int on = 8;
    int limit = 10;
    BoundsMode bounds_mode = BoundsMode::Clamp;

    // Colony template for one repetition (seed filled per rep).
    ColonyConfig colony_template() const;

    void validate() const;
};

// abc + asbec over the whole suite, R=50, budget 1600, seed 1.
ExperimentConfig default_experiment();

// Built-in serial presets; per_colony_budget 0 means "inherit the
// experiment budget" (resolved in run_repetition).
RunSetup preset_abc();
RunSetup preset_asbec();

// JSON round-trip. parse accepts partial documents (defaults fill the rest)
// and throws std::invalid_argument with a field name on bad input.
ExperimentConfig parse_experiment(const std::string& json_text);
std::string serialize_experiment(const ExperimentConfig& cfg);

// Trace CSV round-trip (header "eval,time,best_f", 17 significant digits).
void write_trace_csv(std::ostream& out, const TimedTrace& trace);
TimedTrace read_trace_csv(std::istream& in);

// One repetition of one config on one function; rep r uses seed base+r.
TimedTrace run_repetition(const ExperimentConfig& cfg, const RunSetup& setup,
                          const BenchmarkSpec& spec, int rep);

// Runs the full experiment: per-run trace files, per-(function, config)
// summary.csv, and gain/MLG CSVs against "abc" when it is present. Tasks are
// spread over min(thread_cap(), tasks) threads. `interrupted`, when it
// becomes true, stops scheduling new runs; everything already finished is
// still summarized. Returns 0, or 130 when interrupted.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log,
                   const std::atomic<bool>* interrupted = nullptr);

// Recomputes gain/MLG CSVs from result files on disk.
int compare_results(const std::string& results_dir, const std::string& reference,
                    std::ostream& log, std::ostream& err);

}  // namespace asbec
