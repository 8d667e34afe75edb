#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "asbec/technologies.hpp"

using namespace asbec;

TEST_CASE("technology set validity") {
    CHECK(TechnologySet::abc().valid());
    CHECK(TechnologySet::asbec().valid());

    TechnologySet t;
    t.check = 0;
    CHECK(!t.valid());

    t = {};
    t.interpolation = true;
    CHECK(!t.valid());
    t.opposition = true;
    CHECK(t.valid());

    t = {};
    t.prophet_memory = 1;
    CHECK(!t.valid());
}

TEST_CASE("rescale_fitness maps to [0,1]") {
    CHECK(rescale_fitness({2, 4, 6}) == std::vector<double>{0, 0.5, 1});
    CHECK(rescale_fitness({5, 5, 5}) == std::vector<double>{1, 1, 1});
    CHECK(rescale_fitness({1, 3}) == std::vector<double>{0, 1});

    RandomStream rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> fits(8);
        for (auto& f : fits) f = rng.uniform(0.0, 10.0);
        const auto res = rescale_fitness(fits);
        const auto lo = std::min_element(fits.begin(), fits.end()) - fits.begin();
        const auto hi = std::max_element(fits.begin(), fits.end()) - fits.begin();
        for (double v : res) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(res[static_cast<std::size_t>(lo)] == 0.0);
        CHECK(res[static_cast<std::size_t>(hi)] == 1.0);
    }
}

TEST_CASE("biased_allocation examples and conservation") {
    CHECK(biased_allocation({0, 0.5, 1}, 8) == std::vector<int>{0, 2, 6});
    CHECK(biased_allocation({1, 1}, 8) == std::vector<int>{4, 4});
    CHECK(biased_allocation({0, 1}, 1) == std::vector<int>{0, 1});

    RandomStream rng(11);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> fits(8);
        for (auto& f : fits) f = rng.uniform(0.0, 5.0);
        const auto res = rescale_fitness(fits);
        const int on = 1 + static_cast<int>(rng.index(16));
        const auto counts = biased_allocation(res, on);

        int total = 0;
        for (int c : counts) total += c;
        CHECK(total == on);

        const double sum = [&] {
            double s = 0;
            for (double v : res) s += v;
            return s;
        }();
        const std::size_t best =
            std::max_element(res.begin(), res.end()) - res.begin();
        for (std::size_t j = 0; j < counts.size(); ++j) {
            const int floor_j = static_cast<int>(std::floor(on * res[j] / sum));
            if (j == best)
                CHECK(counts[j] >= floor_j);
            else
                CHECK(counts[j] == floor_j);
        }
        // The worst source gets nothing, the best always at least one bee.
        const std::size_t worst =
            std::min_element(res.begin(), res.end()) - res.begin();
        const bool all_equal =
            std::all_of(res.begin(), res.end(), [&](double v) { return v == res[0]; });
        if (!all_equal) {
            CHECK(counts[worst] == 0);
            CHECK(counts[best] >= 1);
        }
    }
}

TEST_CASE("select_dims single mode") {
    RandomStream rng(5);
    CHECK(select_dims(1, false, rng) == std::vector<std::size_t>{0});
    CHECK(select_dims(1, true, rng) == std::vector<std::size_t>{0});
    for (int rep = 0; rep < 200; ++rep) {
        const auto dims = select_dims(6, false, rng);
        REQUIRE(dims.size() == 1);
        CHECK(dims[0] < 6);
    }
}

TEST_CASE("select_dims multi mode draws d uniform in 1..m") {
    RandomStream rng(8);
    const int n = 100000;
    const std::size_t m = 5;
    std::vector<int> count_freq(m + 1, 0);
    for (int rep = 0; rep < n; ++rep) {
        const auto dims = select_dims(m, true, rng);
        REQUIRE(dims.size() >= 1);
        REQUIRE(dims.size() <= m);
        CHECK(std::is_sorted(dims.begin(), dims.end()));
        std::set<std::size_t> uniq(dims.begin(), dims.end());
        CHECK(uniq.size() == dims.size());
        for (std::size_t i : dims) CHECK(i < m);
        ++count_freq[dims.size()];
    }
    // Each cardinality has probability 1/5; allow 3 sigma.
    const double p = 1.0 / static_cast<double>(m);
    const double sigma = std::sqrt(p * (1 - p) * n);
    for (std::size_t d = 1; d <= m; ++d)
        CHECK(std::fabs(count_freq[d] - p * n) <= 3.0 * sigma);
}

TEST_CASE("opposite_point mirrors through the base") {
    CHECK(opposite_point({2}, {3}, {0}) == Position{1});
    CHECK(opposite_point({4}, {4}, {0}) == Position{4});

    RandomStream rng(2);
    // Dyadic coordinates keep every subtraction representable, so the
    // involution property can be asserted bit-exactly.
    auto dyadic = [&] {
        return static_cast<double>(static_cast<long>(rng.index(20481)) - 10240) / 1024.0;
    };
    for (int rep = 0; rep < 200; ++rep) {
        Position base(6), moved(6);
        for (std::size_t i = 0; i < 6; ++i) {
            base[i] = dyadic();
            moved[i] = base[i];
        }
        std::vector<std::size_t> dims = {1, 3, 4};
        for (std::size_t i : dims) moved[i] = dyadic();

        const Position opp = opposite_point(base, moved, dims);
        for (std::size_t i : dims)
            CHECK((moved[i] + opp[i]) / 2.0 == doctest::Approx(base[i]).epsilon(1e-12));
        for (std::size_t i : {std::size_t{0}, std::size_t{2}, std::size_t{5}})
            CHECK(opp[i] == base[i]);
        CHECK(opposite_point(base, opp, dims) == moved);
    }

    // Arbitrary reals mirror within rounding error.
    for (int rep = 0; rep < 200; ++rep) {
        Position base = {rng.uniform(-10, 10)}, moved = {rng.uniform(-10, 10)};
        const Position opp = opposite_point(base, moved, {0});
        const Position back = opposite_point(base, opp, {0});
        CHECK(back[0] == doctest::Approx(moved[0]).epsilon(1e-12));
    }
}

namespace {

// Independent oracle: solve the 3x3 Vandermonde system by Cramer's rule and
// return -b/(2a).
struct Quad {
    double a, b, c;
};
Quad solve_parabola(double x0, double f0, double x1, double f1, double x2, double f2) {
    auto det3 = [](double m00, double m01, double m02, double m10, double m11,
                   double m12, double m20, double m21, double m22) {
        return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
               m02 * (m10 * m21 - m11 * m20);
    };
    const double d = det3(x0 * x0, x0, 1, x1 * x1, x1, 1, x2 * x2, x2, 1);
    const double da = det3(f0, x0, 1, f1, x1, 1, f2, x2, 1);
    const double db = det3(x0 * x0, f0, 1, x1 * x1, f1, 1, x2 * x2, f2, 1);
    const double dc = det3(x0 * x0, x0, f0, x1 * x1, x1, f1, x2 * x2, x2, f2);
    return {da / d, db / d, dc / d};
}

}  // namespace

TEST_CASE("parabola_vertex against the linear-system oracle") {
    const Quad q = solve_parabola(0, 1, 1, 0, 2, 1);
    CHECK(q.a == doctest::Approx(1.0));
    CHECK(q.b == doctest::Approx(-2.0));
    const auto v = parabola_vertex(0, 1, 1, 0, 2, 1);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(-q.b / (2 * q.a)));
    CHECK(*v == doctest::Approx(1.0));

    const auto sym = parabola_vertex(-1, 1, 0, 0, 1, 1);
    REQUIRE(sym.has_value());
    CHECK(*sym == doctest::Approx(0.0));

    CHECK(!parabola_vertex(0, 0, 1, 1, 2, 2).has_value());
    CHECK(!parabola_vertex(0, 2, 1, 1, 2, 0).has_value());

    CHECK_THROWS_AS(parabola_vertex(1, 0, 1, 1, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(parabola_vertex(0, 0, 2, 1, 2, 2), std::invalid_argument);
}

TEST_CASE("parabola_vertex recovers quadratic minima") {
    RandomStream rng(21);
    for (int rep = 0; rep < 1000; ++rep) {
        const double a = rng.uniform(0.1, 5.0);
        const double vx = rng.uniform(-5.0, 5.0);
        const double c = rng.uniform(-3.0, 3.0);
        auto f = [&](double x) { return a * (x - vx) * (x - vx) + c; };
        const double x0 = rng.uniform(-10.0, 10.0);
        const double x1 = x0 + rng.uniform(0.5, 2.0);
        const double x2 = x1 + rng.uniform(0.5, 2.0);
        const auto v = parabola_vertex(x0, f(x0), x1, f(x1), x2, f(x2));
        REQUIRE(v.has_value());
        CHECK(std::fabs(*v - vx) <= 1e-9);

        const Quad q = solve_parabola(x0, f(x0), x1, f(x1), x2, f(x2));
        CHECK(*v == doctest::Approx(-q.b / (2 * q.a)).epsilon(1e-9));
    }
}

TEST_CASE("smart scout stays inside the enlarged hull box") {
    const Bounds bounds = Bounds::uniform(4, -50.0, 50.0);

    SUBCASE("single source at the origin") {
        RandomStream rng(4);
        const std::vector<Position> sources = {Position(4, 0.0)};
        double widest = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const Position p = smart_scout_position(sources, bounds, rng);
            for (double coord : p) {
                CHECK(std::fabs(coord) <= 25.0);
                widest = std::max(widest, std::fabs(coord));
            }
        }
        // The jitter must actually use its half-width range/4.
        CHECK(widest > 12.5);
    }

    SUBCASE("zero enlargement collapses to the hull") {
        RandomStream rng(6);
        const Position p = {1.5, -2.0, 3.0};
        Bounds degenerate{{1.5, -2.0, 3.0}, {1.5, -2.0, 3.0}};
        // One point: the normalized weight is exactly 1.
        CHECK(smart_scout_position({p}, degenerate, rng) == p);
        // Several identical points: exact up to summation rounding.
        const std::vector<Position> sources = {p, p, p};
        const Position q = smart_scout_position(sources, degenerate, rng);
        for (std::size_t i = 0; i < p.size(); ++i)
            CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-15));
    }

    SUBCASE("diameter uses per-dimension extremes") {
        // Sources spanning {1,4,2} on one dim: diam 3, enlargement (100-3)/4.
        RandomStream rng(9);
        Bounds wide{{-50.0}, {50.0}};
        const std::vector<Position> sources = {{1.0}, {4.0}, {2.0}};
        for (int rep = 0; rep < 1000; ++rep) {
            const Position p = smart_scout_position(sources, wide, rng);
            const double enlargement = (100.0 - 3.0) / 4.0;
            CHECK(p[0] >= 1.0 - enlargement);
            CHECK(p[0] <= 4.0 + enlargement);
        }
    }
}

TEST_CASE("prophet_guess") {
    SUBCASE("two entries extrapolate the single step") {
        const std::vector<PathEntry> path = {{{0.0}, 1.0}, {{1.0}, 0.0}};
        const auto g = prophet_guess(path, 0.5);
        REQUIRE(g.has_value());
        CHECK((*g)[0] == doctest::Approx(1.5));
    }

    SUBCASE("stationary path stays put") {
        const std::vector<PathEntry> path = {{{2.0, 3.0}, 5.0}, {{2.0, 3.0}, 4.0}};
        const auto g = prophet_guess(path, 3.0);
        REQUIRE(g.has_value());
        CHECK(*g == Position{2.0, 3.0});
    }

    SUBCASE("zero catalyst returns the newest entry") {
        const std::vector<PathEntry> path = {{{1.0}, 3.0}, {{4.0}, 2.0}, {{6.0}, 1.0}};
        const auto g = prophet_guess(path, 0.0);
        REQUIRE(g.has_value());
        CHECK(*g == Position{6.0});
    }

    SUBCASE("short history gives no guess") {
        CHECK(!prophet_guess({}, 0.5).has_value());
        CHECK(!prophet_guess({{{1.0}, 0.0}}, 0.5).has_value());
    }

    SUBCASE("hand oracle for a four-entry history") {
        // Weights before normalization: 1*df2, 4*df3, 9*df4.
        const std::vector<PathEntry> path = {
            {{0.0, 0.0}, 10.0},
            {{1.0, 0.0}, 6.0},   // df = -4, shape 1
            {{1.0, 2.0}, 3.0},   // df = -3, shape 4
            {{2.0, 2.0}, 1.0},   // df = -2, shape 9
        };
        const double w2 = 1.0 * -4.0, w3 = 4.0 * -3.0, w4 = 9.0 * -2.0;
        const double denom = w2 + w3 + w4;
        const double step_x = (w2 / denom) * 1.0 + (w3 / denom) * 0.0 + (w4 / denom) * 1.0;
        const double step_y = (w2 / denom) * 0.0 + (w3 / denom) * 2.0 + (w4 / denom) * 0.0;
        const double c = 2.0;
        const auto g = prophet_guess(path, c);
        REQUIRE(g.has_value());
        CHECK((*g)[0] == doctest::Approx(2.0 + c * step_x).epsilon(1e-12));
        CHECK((*g)[1] == doctest::Approx(2.0 + c * step_y).epsilon(1e-12));
    }

    SUBCASE("translation moves the guess by the same vector") {
        RandomStream rng(13);
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<PathEntry> path;
            double f = 50.0;
            for (int t = 0; t < 4; ++t) {
                Position x(3);
                for (auto& xi : x) xi = rng.uniform(-5, 5);
                f -= rng.uniform(0.1, 2.0);
                path.push_back({x, f});
            }
            const Position shift = {10.0, -3.0, 0.5};
            std::vector<PathEntry> moved = path;
            for (auto& e : moved)
                for (std::size_t i = 0; i < 3; ++i) e.x[i] += shift[i];

            const auto g0 = prophet_guess(path, 1.7);
            const auto g1 = prophet_guess(moved, 1.7);
            REQUIRE(g0.has_value());
            REQUIRE(g1.has_value());
            for (std::size_t i = 0; i < 3; ++i)
                CHECK((*g1)[i] == doctest::Approx((*g0)[i] + shift[i]).epsilon(1e-10));
        }
    }
}
