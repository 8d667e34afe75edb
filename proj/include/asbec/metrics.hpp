#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "asbec/parallel.hpp"

namespace asbec {

// Median clamp shared by every ratio: treats anything below as converged,
// keeping gains finite.
constexpr double kToleranceFloor = 1e-16;

// All repetitions of one (function, config) pair.
struct Ensemble {
    std::string function_id;
    std::string config_id;
    std::vector<TimedTrace> runs;
};

enum class Axis { Evals, Time };

// Plain median; even count averages the middle two. Throws on empty input.
double median(std::vector<double> values);
double mean(const std::vector<double>& values);
double stddev(const std::vector<double>& values);  // sample form, 0 for n < 2

// Best-so-far of every run at the grid point (last value carried forward).
std::vector<double> bests_at(const Ensemble& ens, Axis axis, double at);

// Best-so-far of one run sampled on an ascending grid; O(|trace| + |grid|).
// Points before the first evaluation read +infinity.
std::vector<double> bests_on_grid(const TimedTrace& run, Axis axis,
                                  const std::vector<double>& grid);

// Median of best-so-far across runs, clamped below at kToleranceFloor.
double median_best(const Ensemble& ens, Axis axis, double at);
double mean_best(const Ensemble& ens, Axis axis, double at);

// G = median_best(reference) / median_best(conf); > 0 by the clamp.
double gain(const Ensemble& conf, const Ensemble& reference, Axis axis, double at);

// Mean of log10 over per-function gains. Throws on empty input.
double mean_log10(const std::vector<double>& gains);

// MLG over the canonical suite; throws unless the map keys are exactly the
// suite's function ids.
double mlg_over_suite(const std::map<std::string, double>& per_function_gain);

struct GainCurveRow {
    std::string function_id;
    std::string config_id;
    Axis axis;
    double axis_value;
    double median;
    double mean;
    double gain;
    double mlg_contribution;  // log10(gain) / suite size
};

// One gain-curve row per grid point for conf vs reference on the given axis.
std::vector<GainCurveRow> gain_curve(const Ensemble& conf, const Ensemble& reference,
                                     Axis axis, const std::vector<double>& grid);

// CSV emission. Headers:
//   function,config,axis_type,axis_value,median,mean,G,MLG_contribution
//   config,axis_type,axis_value,MLG
void write_gain_curve_csv(std::ostream& out, const std::vector<GainCurveRow>& rows);

struct MlgRow {
    std::string config_id;
    Axis axis;
    double axis_value;
    double mlg;
};

void write_mlg_csv(std::ostream& out, const std::vector<MlgRow>& rows);

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_sig17(double v);

std::string_view to_string(Axis axis);

}  // namespace asbec
