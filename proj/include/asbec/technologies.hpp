#pragma once

#include <optional>
#include <vector>

#include "asbec/objectives.hpp"
#include "asbec/random.hpp"

namespace asbec {

// Toggle set selecting plain ABC behaviour (all off, check = 1) or any mix of
// the enhancement/hybridization technologies. interpolation requires
// opposition.
struct TechnologySet {
    int check = 1;               // passes per bee group before the hive dance
    bool biased = false;         // strictly biased onlooker assignment
    bool multi_param = false;    // multiple parameter selection
    bool smart_scout = false;    // convex-hull scout repositioning
    bool opposition = false;     // opposite move after a failed random move
    bool interpolation = false;  // parabola vertex after a failed opposite
    bool prophet = false;        // optimal-path trend predictor
    double prophet_catalyst = 0.5;
    int prophet_memory = 4;

    bool valid() const {
        return check >= 1 && (!interpolation || opposition) &&
               prophet_memory >= 2;
    }

    // Plain ABC: every technology off.
    static TechnologySet abc() { return {}; }

    // Reference enhanced preset: check=3, opposition + interpolation,
    // strictly biased assignment, prophet with catalyst 0.5 and memory 4.
    static TechnologySet asbec() {
        TechnologySet t;
        t.check = 3;
        t.biased = true;
        t.opposition = true;
        t.interpolation = true;
        t.prophet = true;
        t.prophet_catalyst = 0.5;
        t.prophet_memory = 4;
        return t;
    }
};

// One global-best improvement on the optimal path.
struct PathEntry {
    Position x;
    double f;
};

// fit -> (fit - min)/(max - min), so the worst source maps to 0 and the best
// to 1. All-equal input maps to all 1 (even split downstream).
std::vector<double> rescale_fitness(const std::vector<double>& fits);

// Deterministic onlooker counts: N_j = floor(ON * fit_res_j / sum fit_res),
// remainder to the argmax-fitness source (ties -> lowest index).
std::vector<int> biased_allocation(const std::vector<double>& fits_res, int onlookers);

// Dimension subset for one move. multi off: one uniform index. multi on:
// count d ~ U{1..m}, then d distinct indices (partial Fisher-Yates), sorted.
std::vector<std::size_t> select_dims(std::size_t m, bool multi, RandomStream& rng);

// Mirror of `moved` through `base` on the changed dims, base elsewhere.
Position opposite_point(const Position& base, const Position& moved,
                        const std::vector<std::size_t>& dims);

// Vertex abscissa of the parabola through (x0,f0), (x1,f1), (x2,f2).
// Returns nullopt when the parabola is flat or concave (a <= eps).
// Throws std::invalid_argument on coincident abscissae.
std::optional<double> parabola_vertex(double x0, double f0, double x1, double f1,
                                      double x2, double f2);

constexpr double kParabolaEps = 1e-12;

// Scout position inside the (adaptively enlarged) convex hull of the sources:
// random convex combination plus a per-dimension jitter of half-width
// |range - diam|/4. Draw order: SN weights, then one u per dimension.
Position smart_scout_position(const std::vector<Position>& sources,
                              const Bounds& bounds, RandomStream& rng);

// Trend prediction from the last best improvements: step from the newest
// entry along the weight-averaged improvement directions, scaled by the
// catalyst. Requires at least 2 entries (nullopt otherwise). Weight shape
// w_t = (t-1)^2, increasing toward the newest step.
std::optional<Position> prophet_guess(const std::vector<PathEntry>& history,
                                      double catalyst);

}  // namespace asbec
