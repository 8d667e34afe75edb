#include "asbec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "asbec/objectives.hpp"

namespace asbec {

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean of an empty sample");
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double stddev(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean(values);
    double acc = 0.0;
    for (const double v : values) acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

std::vector<double> bests_at(const Ensemble& ens, Axis axis, double at) {
    if (ens.runs.empty())
        throw std::invalid_argument("ensemble " + ens.config_id + "/" +
                                    ens.function_id + " has no runs");
    std::vector<double> out;
    out.reserve(ens.runs.size());
    for (const auto& run : ens.runs)
        out.push_back(axis == Axis::Evals
                          ? best_at_evals(run, static_cast<long>(at))
                          : best_at_time(run, at));
    return out;
}

std::vector<double> bests_on_grid(const TimedTrace& run, Axis axis,
                                  const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    std::size_t cur = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const double at : grid) {
        while (cur < run.points.size() &&
               (axis == Axis::Evals ? static_cast<double>(run.points[cur].evals)
                                    : run.points[cur].time) <= at) {
            best = run.points[cur].best;
            ++cur;
        }
        out.push_back(best);
    }
    return out;
}

double median_best(const Ensemble& ens, Axis axis, double at) {
    return std::max(median(bests_at(ens, axis, at)), kToleranceFloor);
}

double mean_best(const Ensemble& ens, Axis axis, double at) {
    return mean(bests_at(ens, axis, at));
}

double gain(const Ensemble& conf, const Ensemble& reference, Axis axis, double at) {
    return median_best(reference, axis, at) / median_best(conf, axis, at);
}

double mean_log10(const std::vector<double>& gains) {
    if (gains.empty()) throw std::invalid_argument("MLG of an empty gain set");
    double sum = 0.0;
    for (const double g : gains) sum += std::log10(g);
    return sum / static_cast<double>(gains.size());
}

double mlg_over_suite(const std::map<std::string, double>& per_function_gain) {
    std::set<std::string> expected;
    for (const auto& name : benchmark_names()) expected.insert(name);
    std::set<std::string> got;
    for (const auto& [name, g] : per_function_gain) got.insert(name);
    if (got != expected) {
        for (const auto& name : expected)
            if (!got.count(name))
                throw std::invalid_argument("MLG input is missing function " + name);
        throw std::invalid_argument("MLG input contains non-suite functions");
    }
    std::vector<double> gains;
    gains.reserve(per_function_gain.size());
    for (const auto& [name, g] : per_function_gain) gains.push_back(g);
    return mean_log10(gains);
}

namespace {

// Column-wise ensemble statistics over a shared grid.
struct GridStats {
    std::vector<double> median;
    std::vector<double> mean;
};

GridStats stats_on_grid(const Ensemble& ens, Axis axis,
                        const std::vector<double>& grid) {
    std::vector<std::vector<double>> rows;
    rows.reserve(ens.runs.size());
    for (const auto& run : ens.runs) rows.push_back(bests_on_grid(run, axis, grid));
    GridStats out;
    out.median.reserve(grid.size());
    out.mean.reserve(grid.size());
    std::vector<double> column(rows.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][i];
        out.median.push_back(median(column));
        out.mean.push_back(mean(column));
    }
    return out;
}

}  // namespace

std::vector<GainCurveRow> gain_curve(const Ensemble& conf, const Ensemble& reference,
                                     Axis axis, const std::vector<double>& grid) {
    if (conf.runs.empty() || reference.runs.empty())
        throw std::invalid_argument("gain curve needs non-empty ensembles");
    const double suite_size = static_cast<double>(make_suite().size());
    const GridStats cs = stats_on_grid(conf, axis, grid);
    const GridStats rs = stats_on_grid(reference, axis, grid);
    std::vector<GainCurveRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        GainCurveRow row;
        row.function_id = conf.function_id;
        row.config_id = conf.config_id;
        row.axis = axis;
        row.axis_value = grid[i];
        row.median = std::max(cs.median[i], kToleranceFloor);
        row.mean = cs.mean[i];
        row.gain = std::max(rs.median[i], kToleranceFloor) / row.median;
        row.mlg_contribution = std::log10(row.gain) / suite_size;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_gain_curve_csv(std::ostream& out, const std::vector<GainCurveRow>& rows) {
    out << "function,config,axis_type,axis_value,median,mean,G,MLG_contribution\n";
    for (const auto& r : rows) {
        out << r.function_id << ',' << r.config_id << ',' << to_string(r.axis) << ','
            << format_sig17(r.axis_value) << ',' << format_sig17(r.median) << ','
            << format_sig17(r.mean) << ',' << format_sig17(r.gain) << ','
            << format_sig17(r.mlg_contribution) << '\n';
    }
}

void write_mlg_csv(std::ostream& out, const std::vector<MlgRow>& rows) {
    out << "config,axis_type,axis_value,MLG\n";
    for (const auto& r : rows) {
        out << r.config_id << ',' << to_string(r.axis) << ','
            << format_sig17(r.axis_value) << ',' << format_sig17(r.mlg) << '\n';
    }
}

std::string_view to_string(Axis axis) {
    return axis == Axis::Evals ? "evals" : "time";
}

}  // namespace asbec
