#include "asbec/technologies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace asbec {

std::vector<double> rescale_fitness(const std::vector<double>& fits) {
    const auto [lo_it, hi_it] = std::minmax_element(fits.begin(), fits.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo) return std::vector<double>(fits.size(), 1.0);
    std::vector<double> out(fits.size());
    for (std::size_t j = 0; j < fits.size(); ++j) out[j] = (fits[j] - lo) / (hi - lo);
    return out;
}

std::vector<int> biased_allocation(const std::vector<double>& fits_res, int onlookers) {
    const double total = std::accumulate(fits_res.begin(), fits_res.end(), 0.0);
    std::vector<int> counts(fits_res.size(), 0);
    int assigned = 0;
    for (std::size_t j = 0; j < fits_res.size(); ++j) {
        counts[j] = static_cast<int>(std::floor(onlookers * fits_res[j] / total));
        assigned += counts[j];
    }
    // Remainder goes to the best source; ties resolve to the lowest index.
    const std::size_t best =
        std::max_element(fits_res.begin(), fits_res.end()) - fits_res.begin();
    counts[best] += onlookers - assigned;
    return counts;
}

std::vector<std::size_t> select_dims(std::size_t m, bool multi, RandomStream& rng) {
    if (!multi) return {rng.index(m)};
    const std::size_t d = 1 + rng.index(m);
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t t = 0; t < d; ++t) {
        std::swap(pool[t], pool[t + rng.index(m - t)]);
    }
    pool.resize(d);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Position opposite_point(const Position& base, const Position& moved,
                        const std::vector<std::size_t>& dims) {
    Position out = base;
    for (std::size_t i : dims) out[i] = 2.0 * base[i] - moved[i];
    return out;
}

std::optional<double> parabola_vertex(double x0, double f0, double x1, double f1,
                                      double x2, double f2) {
    if (x0 == x1 || x1 == x2 || x0 == x2) {
        throw std::invalid_argument("parabola_vertex: coincident abscissae");
    }
    // Newton divided differences; a is the leading coefficient of the
    // interpolating parabola and the vertex is -b/(2a) of the same fit.
    const double d01 = (f1 - f0) / (x1 - x0);
    const double d12 = (f2 - f1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a <= kParabolaEps) return std::nullopt;
    return 0.5 * (x0 + x1) - d01 / (2.0 * a);
}

Position smart_scout_position(const std::vector<Position>& sources,
                              const Bounds& bounds, RandomStream& rng) {
    const std::size_t sn = sources.size();
    const std::size_t m = bounds.size();
    std::vector<double> w(sn);
    double wsum = 0.0;
    for (std::size_t k = 0; k < sn; ++k) {
        w[k] = rng.uniform01();
        wsum += w[k];
    }
    if (wsum == 0.0) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(sn));
    } else {
        for (double& wk : w) wk /= wsum;
    }
    Position out(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double center = 0.0, lo = sources[0][i], hi = sources[0][i];
        for (std::size_t k = 0; k < sn; ++k) {
            center += w[k] * sources[k][i];
            lo = std::min(lo, sources[k][i]);
            hi = std::max(hi, sources[k][i]);
        }
        const double diam = hi - lo;
        out[i] = center + 0.25 * rng.uniform_pm1() * std::fabs(bounds.range(i) - diam);
    }
    return out;
}

std::optional<Position> prophet_guess(const std::vector<PathEntry>& history,
                                      double catalyst) {
    const std::size_t n = history.size();
    if (n < 2) return std::nullopt;
    const std::size_t m = history.back().x.size();

    // w(t) = w_t * [f(x_t) - f(x_{t-1})] normalized over t = 2..n, with
    // w_t = (t-1)^2. All improvement deltas are negative, so after
    // normalization every weight is positive.
    std::vector<double> w(n, 0.0);
    double denom = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double shape = static_cast<double>(t) * static_cast<double>(t);
        w[t] = shape * (history[t].f - history[t - 1].f);
        denom += w[t];
    }
    Position out = history.back().x;
    if (denom == 0.0) return out;  // no improvement signal: stay at x_n

    for (std::size_t i = 0; i < m; ++i) {
        double step = 0.0;
        for (std::size_t t = 1; t < n; ++t) {
            step += (w[t] / denom) * (history[t].x[i] - history[t - 1].x[i]);
        }
        out[i] += catalyst * step;
    }
    return out;
}

}  // namespace asbec
