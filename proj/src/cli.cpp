#include "asbec/cli.hpp"

#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "asbec/bench.hpp"

namespace asbec {

namespace {

std::atomic<bool> g_interrupted{false};

// Option bundle shared by `run` (extra "custom" config) and `single`
// (overrides on the chosen label).
struct SetupFlags {
    int check = 1;
    bool biased = false;
    bool multi_param = false;
    bool smart_scout = false;
    bool opposition = false;
    bool interpolation = false;
    double prophet_catalyst = 0.5;
    int prophet_memory = 4;
    std::string mode = "serial";
    int workers = 8;
    int exchange_every = 20;

    CLI::Option* check_opt = nullptr;
    CLI::Option* biased_opt = nullptr;
    CLI::Option* multi_param_opt = nullptr;
    CLI::Option* smart_scout_opt = nullptr;
    CLI::Option* opposition_opt = nullptr;
    CLI::Option* interpolation_opt = nullptr;
    CLI::Option* catalyst_opt = nullptr;
    CLI::Option* memory_opt = nullptr;
    CLI::Option* mode_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* exchange_opt = nullptr;

    void attach(CLI::App* cmd) {
        check_opt = cmd->add_option("--check", check,
                                    "Passes per bee group (postponed hive dance)");
        biased_opt = cmd->add_flag("--biased", biased, "Strictly biased onlookers");
        multi_param_opt = cmd->add_flag("--multi-param,--multi_param", multi_param,
                                        "Multiple parameter selection");
        smart_scout_opt = cmd->add_flag("--smart-scout,--smart_scout", smart_scout,
                                        "Convex-hull scout repositioning");
        opposition_opt = cmd->add_flag("--opposition", opposition, "Opposite moves");
        interpolation_opt = cmd->add_flag("--interpolation", interpolation,
                                          "Second-order interpolation moves");
        catalyst_opt = cmd->add_option("--prophet-catalyst,--prophet_catalyst",
                                       prophet_catalyst,
                                       "Prophet step scale (enables the prophet)");
        memory_opt = cmd->add_option("--prophet-memory,--prophet_memory",
                                     prophet_memory,
                                     "Prophet path length (enables the prophet)");
        mode_opt = cmd->add_option("--mode", mode,
                                   "Execution strategy: serial|multi-start|multi-swarm|bbb");
        workers_opt = cmd->add_option("--workers", workers, "Virtual worker count");
        exchange_opt = cmd->add_option("--exchange-every,--exchange_every",
                                       exchange_every,
                                       "Multi-swarm exchange period in cycles");
    }

    bool any() const {
        return check_opt->count() || biased_opt->count() || multi_param_opt->count() ||
               smart_scout_opt->count() || opposition_opt->count() ||
               interpolation_opt->count() || catalyst_opt->count() ||
               memory_opt->count() || mode_opt->count() || workers_opt->count() ||
               exchange_opt->count();
    }

    ExecMode parsed_mode() const {
        const auto m = mode_from_name(mode);
        if (!m)
            throw std::invalid_argument("unknown mode '" + mode +
                                        "' (serial|multi-start|multi-swarm|bbb)");
        return *m;
    }

    RunSetup build_custom() const {
        RunSetup s;
        s.label = "custom";
        s.tech.check = check;
        s.tech.biased = biased;
        s.tech.multi_param = multi_param;
        s.tech.smart_scout = smart_scout;
        s.tech.opposition = opposition;
        s.tech.interpolation = interpolation;
        if (catalyst_opt->count() || memory_opt->count()) {
            s.tech.prophet = true;
            s.tech.prophet_catalyst = prophet_catalyst;
            s.tech.prophet_memory = prophet_memory;
        }
        s.plan.mode = parsed_mode();
        s.plan.workers = workers;
        s.plan.exchange_every = exchange_every;
        s.plan.per_colony_budget = 0;
        return s;
    }

    void override_setup(RunSetup& s) const {
        if (check_opt->count()) s.tech.check = check;
        if (biased_opt->count()) s.tech.biased = biased;
        if (multi_param_opt->count()) s.tech.multi_param = multi_param;
        if (smart_scout_opt->count()) s.tech.smart_scout = smart_scout;
        if (opposition_opt->count()) s.tech.opposition = opposition;
        if (interpolation_opt->count()) s.tech.interpolation = interpolation;
        if (catalyst_opt->count() || memory_opt->count()) {
            s.tech.prophet = true;
            if (catalyst_opt->count()) s.tech.prophet_catalyst = prophet_catalyst;
            if (memory_opt->count()) s.tech.prophet_memory = prophet_memory;
        }
        if (mode_opt->count()) s.plan.mode = parsed_mode();
        if (workers_opt->count()) s.plan.workers = workers;
        if (exchange_opt->count()) s.plan.exchange_every = exchange_every;
    }
};

ExperimentConfig load_config(const std::string& config_file) {
    if (config_file.empty()) return default_experiment();
    std::ifstream in(config_file);
    if (!in)
        throw std::invalid_argument("cannot read config file '" + config_file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment(text.str());
}

}  // namespace

void request_interrupt() { g_interrupted.store(true); }

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    g_interrupted.store(false);
    CLI::App app{"Artificial bee colony optimizer with AsBeC technologies"};
    app.require_subcommand(1);

    std::string config_file;
    app.add_option("--config", config_file, "Experiment config JSON file")
        ->expected(1);

    // run
    auto* run_cmd = app.add_subcommand(
        "run", "Run a full experiment (functions x configs x repetitions)");
    int reps = 0;
    long budget = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    auto* reps_opt = run_cmd->add_option("--reps", reps, "Repetitions per config");
    auto* budget_opt =
        run_cmd->add_option("--budget", budget, "Evaluation budget per colony");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Base seed (rep r uses base+r)");
    auto* out_opt = run_cmd->add_option("--out", out_dir, "Output directory");
    SetupFlags run_flags;
    run_flags.attach(run_cmd);

    // single
    auto* single_cmd =
        app.add_subcommand("single", "One run, trace CSV to standard output");
    std::string single_function;
    std::string single_config = "abc";
    std::uint64_t single_seed = 0;
    long single_budget = 1600;
    single_cmd->add_option("function", single_function, "Benchmark function id")
        ->required();
    single_cmd->add_option("config", single_config,
                           "Config label (abc, asbec, custom, or from --config)");
    single_cmd->add_option("--seed", single_seed, "Colony seed");
    single_cmd->add_option("--budget", single_budget, "Evaluation budget");
    SetupFlags single_flags;
    single_flags.attach(single_cmd);

    // compare
    auto* compare_cmd = app.add_subcommand(
        "compare", "Recompute gain/MLG CSVs from a results directory");
    std::string results_dir;
    std::string reference = "abc";
    compare_cmd->add_option("results_dir", results_dir, "Directory written by run")
        ->required();
    compare_cmd->add_option("reference", reference,
                            "Reference config label (default abc)");

    auto* list_functions_cmd =
        app.add_subcommand("list-functions", "Print the benchmark suite ids");
    auto* list_configs_cmd = app.add_subcommand(
        "list-configs", "Print available config labels (presets plus --config)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (list_functions_cmd->parsed()) {
            for (const auto& name : benchmark_names()) out << name << "\n";
            return 0;
        }
        if (list_configs_cmd->parsed()) {
            const ExperimentConfig cfg = load_config(config_file);
            for (const auto& setup : cfg.configs) out << setup.label << "\n";
            return 0;
        }
        if (run_cmd->parsed()) {
            ExperimentConfig cfg = load_config(config_file);
            if (reps_opt->count()) cfg.reps = reps;
            if (budget_opt->count()) cfg.budget = budget;
            if (seed_opt->count()) cfg.base_seed = seed;
            if (out_opt->count()) cfg.out_dir = out_dir;
            if (run_flags.any()) cfg.configs.push_back(run_flags.build_custom());
            return run_experiment(cfg, err, &g_interrupted);
        }
        if (single_cmd->parsed()) {
            ExperimentConfig cfg = load_config(config_file);
            if (!benchmark_from_name(single_function))
                throw std::invalid_argument("unknown function id '" + single_function +
                                            "'");
            RunSetup setup;
            bool found = false;
            for (const auto& s : cfg.configs)
                if (s.label == single_config) {
                    setup = s;
                    found = true;
                    break;
                }
            if (!found) {
                if (single_config == "custom")
                    setup = single_flags.build_custom();
                else
                    throw std::invalid_argument("unknown config label '" +
                                                single_config + "'");
            } else {
                single_flags.override_setup(setup);
            }
            cfg.base_seed = single_seed;
            cfg.budget = single_budget;
            const BenchmarkSpec spec =
                suite_spec(*benchmark_from_name(single_function));
            const TimedTrace trace = run_repetition(cfg, setup, spec, 0);
            write_trace_csv(out, trace);
            return 0;
        }
        if (compare_cmd->parsed())
            return compare_results(results_dir, reference, err, err);
        err << "error: no command given\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace asbec
