#include "asbec/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "asbec/threading.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace asbec {

ColonyConfig ExperimentConfig::colony_template() const {
    ColonyConfig cc;
    cc.sn = sn;
    cc.on = on;
    cc.limit = limit;
    cc.budget = budget;
    cc.bounds_mode = bounds_mode;
    return cc;
}

namespace {

bool safe_label(const std::string& label) {
    if (label.empty()) return false;
    for (const char c : label)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (functions.empty()) throw std::invalid_argument("no functions selected");
    for (const auto& f : functions)
        if (!benchmark_from_name(f))
            throw std::invalid_argument("unknown function id '" + f + "'");
    if (configs.empty()) throw std::invalid_argument("no configs selected");
    std::set<std::string> seen;
    for (const auto& setup : configs) {
        if (!safe_label(setup.label))
            throw std::invalid_argument("config label '" + setup.label +
                                        "' must match [A-Za-z0-9_-]+");
        if (!seen.insert(setup.label).second)
            throw std::invalid_argument("duplicate config label '" + setup.label + "'");
        ColonyConfig cc = colony_template();
        cc.tech = setup.tech;
        ParallelPlan plan = setup.plan;
        if (plan.per_colony_budget <= 0) plan.per_colony_budget = budget;
        cc.budget = plan.per_colony_budget;
        cc.validate();
        plan.validate(cc);
    }
}

RunSetup preset_abc() {
    RunSetup s;
    s.label = "abc";
    s.tech = TechnologySet::abc();
    s.plan.mode = ExecMode::Serial;
    s.plan.per_colony_budget = 0;  // inherit the experiment budget
    return s;
}

RunSetup preset_asbec() {
    RunSetup s;
    s.label = "asbec";
    s.tech = TechnologySet::asbec();
    s.plan.mode = ExecMode::Serial;
    s.plan.per_colony_budget = 0;
    return s;
}

ExperimentConfig default_experiment() {
    ExperimentConfig cfg;
    cfg.functions = benchmark_names();
    cfg.configs = {preset_abc(), preset_asbec()};
    return cfg;
}

namespace {

constexpr const char* kReservedLabels[] = {"abc", "asbec"};

bool reserved_label(const std::string& label) {
    for (const char* r : kReservedLabels)
        if (label == r) return true;
    return false;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!known.count(key))
            throw std::invalid_argument("unknown key '" + key + "' in " + where);
}

TechnologySet tech_from_json(const json& j, const std::string& where) {
    TechnologySet t;
    if (j.contains("check")) t.check = j.at("check").get<int>();
    if (j.contains("biased")) t.biased = j.at("biased").get<bool>();
    if (j.contains("multi_param")) t.multi_param = j.at("multi_param").get<bool>();
    if (j.contains("smart_scout")) t.smart_scout = j.at("smart_scout").get<bool>();
    if (j.contains("opposition")) t.opposition = j.at("opposition").get<bool>();
    if (j.contains("interpolation")) t.interpolation = j.at("interpolation").get<bool>();
    if (j.contains("prophet")) {
        const json& p = j.at("prophet");
        if (p.is_boolean()) {
            t.prophet = p.get<bool>();
        } else if (p.is_object()) {
            reject_unknown_keys(p, {"catalyst", "memory"}, where + ".prophet");
            t.prophet = true;
            if (p.contains("catalyst")) t.prophet_catalyst = p.at("catalyst").get<double>();
            if (p.contains("memory")) t.prophet_memory = p.at("memory").get<int>();
        } else if (!p.is_null()) {
            throw std::invalid_argument(where + ".prophet must be false or an object");
        }
    }
    return t;
}

json tech_to_json(const TechnologySet& t) {
    json j = json::object();
    j["check"] = t.check;
    j["biased"] = t.biased;
    j["multi_param"] = t.multi_param;
    j["smart_scout"] = t.smart_scout;
    j["opposition"] = t.opposition;
    j["interpolation"] = t.interpolation;
    if (t.prophet)
        j["prophet"] = {{"catalyst", t.prophet_catalyst}, {"memory", t.prophet_memory}};
    return j;
}

constexpr const char* kConfigKeys[] = {
    "label",       "check",         "biased",        "multi_param",
    "smart_scout", "opposition",    "interpolation", "prophet",
    "mode",        "workers",       "exchange_every", "per_colony_budget"};

RunSetup setup_from_json(const json& j) {
    if (!j.contains("label")) throw std::invalid_argument("config entry without label");
    RunSetup s;
    s.label = j.at("label").get<std::string>();
    const std::string where = "config '" + s.label + "'";
    reject_unknown_keys(j, {std::begin(kConfigKeys), std::end(kConfigKeys)}, where);
    s.tech = tech_from_json(j, where);
    s.plan.per_colony_budget = 0;
    if (j.contains("mode")) {
        const auto mode = mode_from_name(j.at("mode").get<std::string>());
        if (!mode)
            throw std::invalid_argument(
                where + ": mode must be serial|multi-start|multi-swarm|bbb");
        s.plan.mode = *mode;
    }
    if (j.contains("workers")) s.plan.workers = j.at("workers").get<int>();
    if (j.contains("exchange_every"))
        s.plan.exchange_every = j.at("exchange_every").get<int>();
    if (j.contains("per_colony_budget"))
        s.plan.per_colony_budget = j.at("per_colony_budget").get<long>();
    return s;
}

json setup_to_json(const RunSetup& s) {
    json j = tech_to_json(s.tech);
    j["label"] = s.label;
    j["mode"] = std::string(to_string(s.plan.mode));
    j["workers"] = s.plan.workers;
    j["exchange_every"] = s.plan.exchange_every;
    if (s.plan.per_colony_budget > 0)
        j["per_colony_budget"] = s.plan.per_colony_budget;
    return j;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be an object");
    reject_unknown_keys(
        j, {"functions", "reps", "seed", "budget", "out", "colony", "configs"},
        "config root");

    ExperimentConfig cfg;
    cfg.functions = benchmark_names();
    if (j.contains("functions"))
        cfg.functions = j.at("functions").get<std::vector<std::string>>();
    if (j.contains("reps")) cfg.reps = j.at("reps").get<int>();
    if (j.contains("seed")) cfg.base_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("budget")) cfg.budget = j.at("budget").get<long>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("colony")) {
        const json& c = j.at("colony");
        reject_unknown_keys(c, {"sn", "on", "limit", "bounds"}, "colony");
        if (c.contains("sn")) cfg.sn = c.at("sn").get<int>();
        if (c.contains("on")) cfg.on = c.at("on").get<int>();
        if (c.contains("limit")) cfg.limit = c.at("limit").get<int>();
        if (c.contains("bounds")) {
            const std::string b = c.at("bounds").get<std::string>();
            if (b == "clamp")
                cfg.bounds_mode = BoundsMode::Clamp;
            else if (b == "free")
                cfg.bounds_mode = BoundsMode::Free;
            else
                throw std::invalid_argument("colony.bounds must be clamp|free");
        }
    }
    cfg.configs = {preset_abc(), preset_asbec()};
    if (j.contains("configs")) {
        for (const json& entry : j.at("configs")) {
            RunSetup s = setup_from_json(entry);
            if (reserved_label(s.label))
                throw std::invalid_argument("config label '" + s.label +
                                            "' is reserved for the built-in preset");
            cfg.configs.push_back(std::move(s));
        }
    }
    return cfg;
}

std::string serialize_experiment(const ExperimentConfig& cfg) {
    json j;
    j["functions"] = cfg.functions;
    j["reps"] = cfg.reps;
    j["seed"] = cfg.base_seed;
    j["budget"] = cfg.budget;
    j["out"] = cfg.out_dir;
    j["colony"] = {{"sn", cfg.sn},
                   {"on", cfg.on},
                   {"limit", cfg.limit},
                   {"bounds", cfg.bounds_mode == BoundsMode::Clamp ? "clamp" : "free"}};
    json configs = json::array();
    for (const auto& s : cfg.configs)
        if (!reserved_label(s.label)) configs.push_back(setup_to_json(s));
    j["configs"] = std::move(configs);
    return j.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const TimedTrace& trace) {
    out << "eval,time,best_f\n";
    for (const auto& p : trace.points)
        out << p.evals << ',' << format_sig17(p.time) << ',' << format_sig17(p.best)
            << '\n';
}

TimedTrace read_trace_csv(std::istream& in) {
    TimedTrace trace;
    std::string line;
    if (!std::getline(in, line) || line.rfind("eval,", 0) != 0)
        throw std::invalid_argument("trace CSV is missing its header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TracePoint p;
        char* cursor = line.data();
        char* end = nullptr;
        p.evals = std::strtol(cursor, &end, 10);
        if (end == cursor || *end != ',')
            throw std::invalid_argument("bad trace line: " + line);
        cursor = end + 1;
        p.time = std::strtod(cursor, &end);
        if (end == cursor || *end != ',')
            throw std::invalid_argument("bad trace line: " + line);
        cursor = end + 1;
        p.best = std::strtod(cursor, &end);
        if (end == cursor) throw std::invalid_argument("bad trace line: " + line);
        trace.points.push_back(p);
    }
    return trace;
}

TimedTrace run_repetition(const ExperimentConfig& cfg, const RunSetup& setup,
                          const BenchmarkSpec& spec, int rep) {
    ColonyConfig cc = cfg.colony_template();
    cc.tech = setup.tech;
    cc.seed = cfg.base_seed + static_cast<std::uint64_t>(rep);
    ParallelPlan plan = setup.plan;
    if (plan.per_colony_budget <= 0) plan.per_colony_budget = cfg.budget;
    cc.budget = plan.per_colony_budget;
    return run_plan(cc, spec, plan);
}

namespace {

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

long max_evals(const Ensemble& ens) {
    long m = 0;
    for (const auto& run : ens.runs)
        if (!run.points.empty()) m = std::max(m, run.points.back().evals);
    return m;
}

double max_time(const Ensemble& ens) {
    double m = 0.0;
    for (const auto& run : ens.runs)
        if (!run.points.empty()) m = std::max(m, run.points.back().time);
    return m;
}

std::vector<double> integer_grid(long hi) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(hi));
    for (long v = 1; v <= hi; ++v) grid.push_back(static_cast<double>(v));
    return grid;
}

void write_summary(const fs::path& dir, const Ensemble& ens) {
    const std::vector<double> grid = integer_grid(max_evals(ens));
    std::vector<std::vector<double>> rows;
    rows.reserve(ens.runs.size());
    for (const auto& run : ens.runs)
        rows.push_back(bests_on_grid(run, Axis::Evals, grid));
    std::ostringstream out;
    out << "evals,median,mean,stddev\n";
    std::vector<double> column(rows.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][i];
        out << static_cast<long>(grid[i]) << ',' << format_sig17(median(column)) << ','
            << format_sig17(mean(column)) << ',' << format_sig17(stddev(column))
            << '\n';
    }
    write_file_atomic(dir / "summary.csv", out.str());
}

using EnsembleMap = std::map<std::string, std::map<std::string, Ensemble>>;

// Gain and MLG CSVs for every label vs the reference, FE-indexed and
// time-indexed (time normalized by the reference's own axis). MLG rows are
// emitted only when the full suite is present for both sides.
void emit_comparisons(const fs::path& out_root, const EnsembleMap& by_function,
                      const std::string& ref_label, std::ostream& log) {
    std::set<std::string> labels;
    for (const auto& [func, per_label] : by_function)
        for (const auto& [label, ens] : per_label) labels.insert(label);

    const std::vector<std::string> suite = benchmark_names();
    for (const std::string& label : labels) {
        std::vector<GainCurveRow> gain_rows;
        std::set<std::string> covered;
        long common_fe = 0;
        long common_time = 0;
        bool first = true;
        for (const auto& [func, per_label] : by_function) {
            const auto conf_it = per_label.find(label);
            const auto ref_it = per_label.find(ref_label);
            if (conf_it == per_label.end() || ref_it == per_label.end()) continue;
            covered.insert(func);
            const Ensemble& conf = conf_it->second;
            const Ensemble& ref = ref_it->second;

            const long fe_max = max_evals(conf);
            auto fe_rows = gain_curve(conf, ref, Axis::Evals, integer_grid(fe_max));
            gain_rows.insert(gain_rows.end(), fe_rows.begin(), fe_rows.end());

            const long ref_t = static_cast<long>(std::llround(max_time(ref)));
            auto t_rows = gain_curve(conf, ref, Axis::Time, integer_grid(ref_t));
            for (auto& row : t_rows)
                row.axis_value /= static_cast<double>(ref_t);
            gain_rows.insert(gain_rows.end(), t_rows.begin(), t_rows.end());

            if (first) {
                common_fe = fe_max;
                common_time = ref_t;
                first = false;
            } else {
                common_fe = std::min(common_fe, fe_max);
                common_time = std::min(common_time, ref_t);
            }
        }
        if (covered.empty()) continue;

        const fs::path dir = out_root / "compare" / (label + "_vs_" + ref_label);
        fs::create_directories(dir);
        {
            std::ostringstream out;
            write_gain_curve_csv(out, gain_rows);
            write_file_atomic(dir / "gain.csv", out.str());
        }

        const bool full_suite =
            std::all_of(suite.begin(), suite.end(),
                        [&](const std::string& f) { return covered.count(f) > 0; });
        if (!full_suite) {
            log << "note: skipping MLG for '" << label
                << "' (full suite not present)\n";
            continue;
        }
        std::vector<MlgRow> mlg_rows;
        for (const Axis axis : {Axis::Evals, Axis::Time}) {
            const long hi = axis == Axis::Evals ? common_fe : common_time;
            for (long k = 1; k <= hi; ++k) {
                double logs = 0.0;
                for (const std::string& func : suite) {
                    const Ensemble& conf = by_function.at(func).at(label);
                    const Ensemble& ref = by_function.at(func).at(ref_label);
                    double at = static_cast<double>(k);
                    if (axis == Axis::Time) {
                        // Each function is normalized by its own reference axis.
                        const double ref_t = max_time(ref);
                        at = static_cast<double>(k) * ref_t /
                             static_cast<double>(hi);
                    }
                    logs += std::log10(gain(conf, ref, axis, at));
                }
                const double axis_value =
                    axis == Axis::Evals
                        ? static_cast<double>(k)
                        : static_cast<double>(k) / static_cast<double>(hi);
                mlg_rows.push_back(
                    {label, axis, axis_value,
                     logs / static_cast<double>(suite.size())});
            }
        }
        std::ostringstream out;
        write_mlg_csv(out, mlg_rows);
        write_file_atomic(dir / "mlg.csv", out.str());
        log << "compared '" << label << "' vs '" << ref_label << "' -> "
            << dir.string() << "\n";
    }
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log,
                   const std::atomic<bool>* interrupted) {
    cfg.validate();
    const fs::path out_root = cfg.out_dir;

    std::vector<BenchmarkSpec> specs;
    specs.reserve(cfg.functions.size());
    for (const auto& name : cfg.functions) specs.push_back(suite_spec(*benchmark_from_name(name)));

    const std::size_t nf = cfg.functions.size();
    const std::size_t nc = cfg.configs.size();
    const std::size_t nr = static_cast<std::size_t>(cfg.reps);
    const long total = static_cast<long>(nf * nc * nr);

    // One preallocated slot per repetition; tasks write disjoint slots.
    std::vector<std::vector<Ensemble>> ensembles(nf);
    for (std::size_t fi = 0; fi < nf; ++fi) {
        ensembles[fi].resize(nc);
        for (std::size_t ci = 0; ci < nc; ++ci) {
            ensembles[fi][ci].function_id = cfg.functions[fi];
            ensembles[fi][ci].config_id = cfg.configs[ci].label;
            ensembles[fi][ci].runs.resize(nr);
        }
    }
    for (std::size_t fi = 0; fi < nf; ++fi)
        for (std::size_t ci = 0; ci < nc; ++ci)
            fs::create_directories(out_root / cfg.functions[fi] / cfg.configs[ci].label);

    std::unique_ptr<std::atomic<long>[]> done_in_pair(
        new std::atomic<long>[nf * nc]);
    for (std::size_t i = 0; i < nf * nc; ++i) done_in_pair[i] = 0;

    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::mutex log_mutex;
    std::string failure;

    auto worker = [&] {
        while (true) {
            if (failed.load() || (interrupted && interrupted->load())) return;
            const long t = next.fetch_add(1);
            if (t >= total) return;
            const std::size_t fi = static_cast<std::size_t>(t) / (nc * nr);
            const std::size_t ci = (static_cast<std::size_t>(t) / nr) % nc;
            const std::size_t r = static_cast<std::size_t>(t) % nr;
            try {
                TimedTrace trace =
                    run_repetition(cfg, cfg.configs[ci], specs[fi], static_cast<int>(r));
                std::ostringstream body;
                write_trace_csv(body, trace);
                const fs::path dir =
                    out_root / cfg.functions[fi] / cfg.configs[ci].label;
                write_file_atomic(dir / ("run_" + std::to_string(r) + ".csv"),
                                  body.str());
                ensembles[fi][ci].runs[r] = std::move(trace);
                const long done = done_in_pair[fi * nc + ci].fetch_add(1) + 1;
                if (done == static_cast<long>(nr)) {
                    std::lock_guard<std::mutex> guard(log_mutex);
                    log << cfg.functions[fi] << "/" << cfg.configs[ci].label << ": "
                        << nr << " runs done\n";
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> guard(log_mutex);
                if (!failed.exchange(true)) failure = e.what();
                return;
            }
        }
    };

    const int threads =
        static_cast<int>(std::min<long>(thread_cap(), std::max<long>(total, 1)));
    log << "running " << total << " runs (" << nf << " functions x " << nc
        << " configs x " << nr << " reps) on " << threads << " threads\n";
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(failure);

    // Summaries and comparisons cover only complete ensembles, so an
    // interrupted invocation still leaves coherent partial results.
    EnsembleMap complete;
    for (std::size_t fi = 0; fi < nf; ++fi)
        for (std::size_t ci = 0; ci < nc; ++ci) {
            if (done_in_pair[fi * nc + ci].load() != static_cast<long>(nr)) continue;
            write_summary(out_root / cfg.functions[fi] / cfg.configs[ci].label,
                          ensembles[fi][ci]);
            complete[cfg.functions[fi]].emplace(cfg.configs[ci].label,
                                                std::move(ensembles[fi][ci]));
        }

    bool have_reference = false;
    for (const auto& [func, per_label] : complete)
        if (per_label.count("abc")) have_reference = true;
    if (have_reference)
        emit_comparisons(out_root, complete, "abc", log);

    if (interrupted && interrupted->load()) {
        log << "interrupted: partial results flushed to " << out_root.string()
            << "\n";
        return 130;
    }
    log << "results written to " << out_root.string() << "\n";
    return 0;
}

int compare_results(const std::string& results_dir, const std::string& reference,
                    std::ostream& log, std::ostream& err) {
    const fs::path root = results_dir;
    if (!fs::is_directory(root)) {
        err << "error: results directory '" << results_dir << "' does not exist\n";
        return 2;
    }
    EnsembleMap data;
    for (const auto& func_entry : fs::directory_iterator(root)) {
        if (!func_entry.is_directory()) continue;
        const std::string func = func_entry.path().filename().string();
        if (!benchmark_from_name(func)) continue;
        for (const auto& label_entry : fs::directory_iterator(func_entry.path())) {
            if (!label_entry.is_directory()) continue;
            const std::string label = label_entry.path().filename().string();
            Ensemble ens;
            ens.function_id = func;
            ens.config_id = label;
            std::vector<fs::path> files;
            for (const auto& run_entry : fs::directory_iterator(label_entry.path())) {
                const std::string name = run_entry.path().filename().string();
                if (name.rfind("run_", 0) == 0 && name.size() > 8 &&
                    name.substr(name.size() - 4) == ".csv")
                    files.push_back(run_entry.path());
            }
            std::sort(files.begin(), files.end());
            for (const auto& file : files) {
                std::ifstream in(file);
                if (!in) {
                    err << "error: cannot read " << file.string() << "\n";
                    return 2;
                }
                ens.runs.push_back(read_trace_csv(in));
            }
            if (!ens.runs.empty()) data[func].emplace(label, std::move(ens));
        }
    }
    if (data.empty()) {
        err << "error: no run files found under '" << results_dir << "'\n";
        return 2;
    }
    bool have_reference = false;
    for (const auto& [func, per_label] : data)
        if (per_label.count(reference)) have_reference = true;
    if (!have_reference) {
        err << "error: reference config '" << reference << "' has no results in '"
            << results_dir << "'\n";
        return 2;
    }
    emit_comparisons(root, data, reference, log);
    return 0;
}

}  // namespace asbec
