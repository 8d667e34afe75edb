#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asbec/random.hpp"

namespace asbec {

using Position = std::vector<double>;

// Per-dimension search box; every range must be strictly positive.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
    double range(std::size_t i) const { return upper[i] - lower[i]; }
    double clamp(std::size_t i, double v) const;
    bool contains(const Position& x) const;

    static Bounds uniform(std::size_t m, double lo, double hi);
};

enum class BenchmarkId {
    Sphere,
    DixonPrice,
    Schwefel,
    StyblinskiTangNoise,
    Levy,
    Rastrigin,
    Perm,
    Rosenbrock,
    Ackley,
    Griewank,
};

// One benchmark problem: analytic function, dimensionality, box, and the
// shift that moves its global minimum value to 0. noise_fraction > 0 makes
// the evaluation stochastic (multiplicative uniform noise).
struct BenchmarkSpec {
    BenchmarkId id;
    std::size_t m;
    Bounds bounds;
    double shift_value = 0.0;
    double noise_fraction = 0.0;
};

// The canonical 10-function suite (fixed ids, dimensions and ranges).
std::vector<BenchmarkSpec> make_suite();

// Suite entry for one function id.
BenchmarkSpec suite_spec(BenchmarkId id);

// Shifted objective value. Consumes one draw from rng iff noise_fraction > 0.
// Throws std::invalid_argument when x.size() != spec.m.
double evaluate(const BenchmarkSpec& spec, const Position& x, RandomStream& rng);

// Noise-free variant for specs with noise_fraction == 0 and for analysis.
double evaluate_exact(const BenchmarkSpec& spec, const Position& x);

// Position of the (shifted) global minimum.
Position known_minimizer(const BenchmarkSpec& spec);

// fit = 1/(f+1) for f >= 0, 1-f otherwise. Strictly positive, strictly
// decreasing in f.
double fitness(double f_value);

std::string_view to_string(BenchmarkId id);
std::optional<BenchmarkId> benchmark_from_name(std::string_view name);
std::vector<std::string> benchmark_names();

}  // namespace asbec
