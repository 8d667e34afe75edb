#include "asbec/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace asbec {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-dimension minimum magnitudes for the two functions whose analytic
// minimum is nonzero. Schwefel uses the conventional truncated constant;
// Styblinski-Tang uses the accurate value so the shifted minimum stays
// nonnegative and below 1e-12.
constexpr double kSchwefelShiftPerDim = 418.9829;
constexpr double kStyblinskiShiftPerDim = 39.16616570377142;
constexpr double kStyblinskiArgmin = -2.903534018185960;
constexpr double kSchwefelArgmin = 420.9687;

double sphere(const Position& x) {
    double v = 0.0;
    for (double xi : x) v += xi * xi;
    return v;
}

double dixon_price(const Position& x) {
    double v = (x[0] - 1.0) * (x[0] - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double t = 2.0 * x[i] * x[i] - x[i - 1];
        v += static_cast<double>(i + 1) * t * t;
    }
    return v;
}

double schwefel(const Position& x) {
    double v = 0.0;
    for (double xi : x) v -= xi * std::sin(std::sqrt(std::fabs(xi)));
    return v;
}

double styblinski_tang(const Position& x) {
    double v = 0.0;
    for (double xi : x) {
        const double x2 = xi * xi;
        v += 0.5 * (x2 * x2 - 16.0 * x2 + 5.0 * xi);
    }
    return v;
}

double levy(const Position& x) {
    const std::size_t m = x.size();
    auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
    const double s0 = std::sin(kPi * w(0));
    double v = s0 * s0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double wi = w(i);
        const double s = std::sin(kPi * wi + 1.0);
        v += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    const double wm = w(m - 1);
    const double sm = std::sin(2.0 * kPi * wm);
    v += (wm - 1.0) * (wm - 1.0) * (1.0 + sm * sm);
    return v;
}

double rastrigin(const Position& x) {
    double v = 10.0 * static_cast<double>(x.size());
    for (double xi : x) v += xi * xi - 10.0 * std::cos(2.0 * kPi * xi);
    return v;
}

// Perm(m, beta) with beta = 0.5; global minimum 0 at x_i = i.
double perm(const Position& x) {
    constexpr double beta = 0.5;
    const std::size_t m = x.size();
    double v = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        double t = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            const double jd = static_cast<double>(j);
            t += (std::pow(jd, static_cast<double>(i)) + beta) *
                 (std::pow(x[j - 1] / jd, static_cast<double>(i)) - 1.0);
        }
        v += t * t;
    }
    return v;
}

double rosenbrock(const Position& x) {
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        v += 100.0 * a * a + b * b;
    }
    return v;
}

double ackley(const Position& x) {
    const double m = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double xi : x) {
        sq += xi * xi;
        cs += std::cos(2.0 * kPi * xi);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / m)) - std::exp(cs / m) +
           20.0 + std::numbers::e;
}

double griewank(const Position& x) {
    double sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i] / 4000.0;
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum - prod + 1.0;
}

double raw_value(BenchmarkId id, const Position& x) {
    switch (id) {
        case BenchmarkId::Sphere: return sphere(x);
        case BenchmarkId::DixonPrice: return dixon_price(x);
        case BenchmarkId::Schwefel: return schwefel(x);
        case BenchmarkId::StyblinskiTangNoise: return styblinski_tang(x);
        case BenchmarkId::Levy: return levy(x);
        case BenchmarkId::Rastrigin: return rastrigin(x);
        case BenchmarkId::Perm: return perm(x);
        case BenchmarkId::Rosenbrock: return rosenbrock(x);
        case BenchmarkId::Ackley: return ackley(x);
        case BenchmarkId::Griewank: return griewank(x);
    }
    throw std::logic_error("unknown benchmark id");
}

}  // namespace

double Bounds::clamp(std::size_t i, double v) const {
    return std::clamp(v, lower[i], upper[i]);
}

bool Bounds::contains(const Position& x) const {
    if (x.size() != size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
}

Bounds Bounds::uniform(std::size_t m, double lo, double hi) {
    return Bounds{std::vector<double>(m, lo), std::vector<double>(m, hi)};
}

std::vector<BenchmarkSpec> make_suite() {
    std::vector<BenchmarkSpec> suite;
    suite.push_back({BenchmarkId::Sphere, 50, Bounds::uniform(50, -100, 100)});
    suite.push_back({BenchmarkId::DixonPrice, 20, Bounds::uniform(20, -10, 10)});
    suite.push_back({BenchmarkId::Schwefel, 5, Bounds::uniform(5, -500, 500),
                     kSchwefelShiftPerDim * 5});
    suite.push_back({BenchmarkId::StyblinskiTangNoise, 5,
                     Bounds::uniform(5, -5, 5), kStyblinskiShiftPerDim * 5,
                     0.15});
    suite.push_back({BenchmarkId::Levy, 10, Bounds::uniform(10, -100, 100)});
    suite.push_back({BenchmarkId::Rastrigin, 10, Bounds::uniform(10, -10, 10)});
    suite.push_back({BenchmarkId::Perm, 5, Bounds::uniform(5, -5, 5)});
    suite.push_back({BenchmarkId::Rosenbrock, 10, Bounds::uniform(10, -5, 5)});
    suite.push_back({BenchmarkId::Ackley, 10, Bounds::uniform(10, -20, 70)});
    suite.push_back({BenchmarkId::Griewank, 30, Bounds::uniform(30, -600, 600)});
    return suite;
}

BenchmarkSpec suite_spec(BenchmarkId id) {
    for (auto& spec : make_suite()) {
        if (spec.id == id) return spec;
    }
    throw std::logic_error("unknown benchmark id");
}

double evaluate_exact(const BenchmarkSpec& spec, const Position& x) {
    if (x.size() != spec.m) {
        throw std::invalid_argument("evaluate: position has dimension " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(spec.m));
    }
    return raw_value(spec.id, x) + spec.shift_value;
}

double evaluate(const BenchmarkSpec& spec, const Position& x, RandomStream& rng) {
    double v = evaluate_exact(spec, x);
    if (spec.noise_fraction > 0.0) {
        v *= 1.0 + spec.noise_fraction * rng.uniform_pm1();
    }
    return v;
}

Position known_minimizer(const BenchmarkSpec& spec) {
    switch (spec.id) {
        case BenchmarkId::Sphere:
        case BenchmarkId::Rastrigin:
        case BenchmarkId::Ackley:
        case BenchmarkId::Griewank:
            return Position(spec.m, 0.0);
        case BenchmarkId::Rosenbrock:
        case BenchmarkId::Levy:
            return Position(spec.m, 1.0);
        case BenchmarkId::Schwefel:
            return Position(spec.m, kSchwefelArgmin);
        case BenchmarkId::StyblinskiTangNoise:
            return Position(spec.m, kStyblinskiArgmin);
        case BenchmarkId::DixonPrice: {
            Position x(spec.m);
            for (std::size_t i = 1; i <= spec.m; ++i) {
                const double p = std::pow(2.0, static_cast<double>(i));
                x[i - 1] = std::pow(2.0, -(p - 2.0) / p);
            }
            return x;
        }
        case BenchmarkId::Perm: {
            Position x(spec.m);
            for (std::size_t i = 0; i < spec.m; ++i) x[i] = static_cast<double>(i + 1);
            return x;
        }
    }
    throw std::logic_error("unknown benchmark id");
}

double fitness(double f_value) {
    return f_value >= 0.0 ? 1.0 / (f_value + 1.0) : 1.0 - f_value;
}

std::string_view to_string(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::Sphere: return "sphere";
        case BenchmarkId::DixonPrice: return "dixon_price";
        case BenchmarkId::Schwefel: return "schwefel";
        case BenchmarkId::StyblinskiTangNoise: return "styblinski_tang_noise";
        case BenchmarkId::Levy: return "levy";
        case BenchmarkId::Rastrigin: return "rastrigin";
        case BenchmarkId::Perm: return "perm";
        case BenchmarkId::Rosenbrock: return "rosenbrock";
        case BenchmarkId::Ackley: return "ackley";
        case BenchmarkId::Griewank: return "griewank";
    }
    return "?";
}

std::optional<BenchmarkId> benchmark_from_name(std::string_view name) {
    for (const auto& spec : make_suite()) {
        if (to_string(spec.id) == name) return spec.id;
    }
    return std::nullopt;
}

std::vector<std::string> benchmark_names() {
    std::vector<std::string> names;
    for (const auto& spec : make_suite()) names.emplace_back(to_string(spec.id));
    return names;
}

}  // namespace asbec
