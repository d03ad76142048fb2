#include <doctest.h>

#include <cmath>
#include <random>

#include "opot/fixtures.hpp"
#include "opot/torusint.hpp"

using namespace opot;

TEST_SUITE("torusint") {

TEST_CASE("grid mean of constants and modes") {
    TorusGrid grid(2, 16);
    CHECK(integrate(grid, [](std::span<const Cx>) { return 1.0; }) == 1.0);

    const Cx mean_z1 = integrate_cx(grid, [](std::span<const Cx> z) { return z[0]; });
    CHECK(std::abs(mean_z1) < 1e-15);

    std::mt19937_64 rng(60);
    std::uniform_int_distribution<int> expd(0, 15);
    for (int rep = 0; rep < 30; ++rep) {
        const int a = expd(rng), b = expd(rng);
        if (a == 0 && b == 0) continue;
        const Cx mode = integrate_cx(grid, [&](std::span<const Cx> z) {
            Cx v{1.0, 0.0};
            for (int i = 0; i < a; ++i) v *= z[0];
            for (int i = 0; i < b; ++i) v *= z[1];
            return v;
        });
        CHECK(std::abs(mode) < 1e-14);
    }
}

TEST_CASE("non-finite integrand is reported") {
    TorusGrid grid(1, 8);
    CHECK_THROWS_AS(integrate(grid, [](std::span<const Cx>) { return std::log(0.0); }),
                    std::domain_error);
}

TEST_CASE("one-parameter szego value") {
    SchurData data;
    data.dim = 1;
    data.r = {Cx{0, 0}, Cx{0.5, 0}};
    data.nu = {1};
    TorusGrid grid(1, 64);
    const double direct = integrate(grid, [&](std::span<const Cx> z) {
        return std::log(1.0 - std::norm(eval_convergent(data, 1, z)));
    });
    CHECK(direct == doctest::Approx(std::log(0.75)).epsilon(1e-10));
    CHECK(szego_integral(data, grid) == doctest::Approx(std::log(0.75)).epsilon(1e-10));
}

TEST_CASE("szego integral across dimensions") {
    SUBCASE("two parameters in two variables") {
        SchurData data;
        data.dim = 2;
        data.r = {Cx{0, 0}, Cx{0.3, 0}, Cx{0, 0.4}};
        data.nu = {1, 2};
        TorusGrid grid(2, 64);
        const double expect = std::log(0.91) + std::log(0.84);
        CHECK(std::abs(szego_integral(data, grid) - expect) < 1e-8);
    }
    SUBCASE("all zero parameters") {
        SchurData data;
        data.dim = 1;
        data.r = {Cx{0, 0}, Cx{0, 0}, Cx{0, 0}};
        data.nu = {1, 1};
        TorusGrid grid(1, 16);
        CHECK(std::abs(szego_integral(data, grid)) < 1e-14);
        CHECK(std::abs(szego_log_w(data, grid)) < 1e-14);
    }
}

TEST_CASE("log w form and the outer integral") {
    SchurData data = fixtures::schur_d2();
    TorusGrid grid(2, 64);
    double reference = 0.0;
    for (int j = 1; j <= data.top_level(); ++j)
        reference += std::log(1.0 - std::norm(data.r[static_cast<size_t>(j)]));
    CHECK(std::abs(szego_log_w(data, grid) - reference) < 1e-8);
    CHECK(std::abs(outer_log_integral(data, grid)) < 1e-8);
}

TEST_CASE("measure weight is a probability density") {
    for (const SchurData& data : fixtures::all_schur()) {
        TorusGrid grid = TorusGrid::preferred(data.dim);
        MeasureWeight w(data, data.top_level());
        const double total = integrate(grid, [&](std::span<const Cx> z) { return w(z); });
        CHECK(std::abs(total - 1.0) < 1e-10);
        double min_w = 1e300;
        for_each_grid_node(grid, [&](std::span<const Cx> z) { min_w = std::min(min_w, w(z)); });
        CHECK(min_w > 0.0);
    }
}

TEST_CASE("gram corner entry is one") {
    SchurData data = fixtures::schur_d2();
    TorusGrid grid(2, 64);
    auto g = gram(data, grid, 0);
    CHECK(std::abs(g[0][0] - Cx{1, 0}) < 1e-10);
}

TEST_CASE("gram diagonal and off-diagonal structure") {
    SchurData data = fixtures::schur_d2();
    TorusGrid grid(2, 64);
    auto g = gram(data, grid, data.top_level());
    double prod = 1.0;
    for (int j = 0; j <= data.top_level(); ++j) {
        if (j >= 1) prod *= 1.0 - std::norm(data.r[static_cast<size_t>(j)]);
        CHECK(std::abs(g[static_cast<size_t>(j)][static_cast<size_t>(j)] - prod) < 1e-8);
        for (int k = 0; k < j; ++k) {
            CHECK(std::abs(g[static_cast<size_t>(j)][static_cast<size_t>(k)]) < 1e-8);
            CHECK(std::abs(g[static_cast<size_t>(k)][static_cast<size_t>(j)]) < 1e-8);
        }
    }
}

TEST_CASE("poisson reproducing identity") {
    SUBCASE("center point") {
        SchurData data = fixtures::schur_d2();
        TorusGrid grid(2, 64);
        std::vector<Cx> zero(2, Cx{0, 0});
        auto [lhs, rhs] = poisson_check(data, grid, zero);
        CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rhs == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("all-zero parameters") {
        SchurData data;
        data.dim = 2;
        data.r = {Cx{0, 0}, Cx{0, 0}};
        data.nu = {1};
        TorusGrid grid(2, 32);
        std::vector<Cx> z{Cx{0.4, 0.2}, Cx{-0.1, 0.3}};
        auto [lhs, rhs] = poisson_check(data, grid, z);
        CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rhs == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("interior point of the bundled data") {
        SchurData data = fixtures::schur_d2();
        TorusGrid grid(2, 128);
        std::vector<Cx> z{Cx{0.5, 0.0}, Cx{0.0, 0.3}};
        auto [lhs, rhs] = poisson_check(data, grid, z);
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
    SUBCASE("points too close to the boundary are rejected") {
        SchurData data = fixtures::schur_d2();
        TorusGrid grid(2, 16);
        std::vector<Cx> z{Cx{0.95, 0.0}, Cx{0.0, 0.0}};
        CHECK_THROWS_AS(poisson_check(data, grid, z), std::invalid_argument);
    }
}

TEST_CASE("the interior value of f is reproduced by its boundary trace") {
    SchurData data = fixtures::schur_d2();
    TorusGrid grid(2, 64);
    std::vector<Cx> z{Cx{0.4, 0.1}, Cx{-0.2, 0.3}};
    const Cx direct = eval_convergent(data, data.top_level(), z);
    const Cx reproduced = integrate_cx(grid, [&](std::span<const Cx> node) {
        return poisson_kernel(z, node) * eval_convergent(data, data.top_level(), node);
    });
    CHECK(std::abs(direct - reproduced) < 1e-10);
}

TEST_CASE("a rationally dependent line still averages to the parameter sum") {
    // eta = (2,3) factors through a one-variable substitution; the average
    // over the (periodic, non-dense) line matches both the substituted
    // torus integral and the parameter sum
    SchurData data = fixtures::schur_d2();
    double reference = 0.0;
    for (int j = 1; j <= data.top_level(); ++j)
        reference += -std::log(1.0 - std::norm(data.r[static_cast<size_t>(j)]));

    MonomialSubstitution sub;
    sub.target_dim = 1;
    sub.kappa = {Monomial{2}, Monomial{3}};
    SchurData g = substitute(data, sub);
    TorusGrid grid(1, 256);
    const double substituted = -szego_integral(g, grid);
    CHECK(std::abs(substituted - reference) < 1e-10);

    TorusLine line({2.0, 3.0});
    const double step = default_line_step(data, line);
    const double avg = line_average(
        line,
        [&](std::span<const Cx> z) {
            return -std::log(1.0 - std::norm(eval_convergent(data, data.top_level(), z)));
        },
        500.0, step);
    CHECK(std::abs(avg - reference) < 1e-3);
}

TEST_CASE("line averages") {
    SUBCASE("constant integrand") {
        TorusLine line({1.0, 2.0});
        const double avg = line_average(line, [](std::span<const Cx>) { return 3.25; }, 10.0, 0.1);
        CHECK(avg == doctest::Approx(3.25).epsilon(1e-12));
    }
    SUBCASE("single cosine decays like sin(L)/L") {
        TorusLine line({1.0});
        for (double L : {40.0, 80.0, 160.0}) {
            const double avg =
                line_average(line, [](std::span<const Cx> z) { return z[0].real(); }, L, 0.01);
            CHECK(std::abs(avg - std::sin(L) / L) < 1e-4);
        }
    }
    SUBCASE("invalid arguments") {
        TorusLine line({1.0});
        CHECK_THROWS_AS(line_average(line, [](std::span<const Cx>) { return 0.0; }, -1.0, 0.1),
                        std::invalid_argument);
        CHECK_THROWS_AS(TorusLine({0.0}), std::invalid_argument);
    }
}

TEST_CASE("dilated log integral is finite and positive inside") {
    SchurData data = fixtures::schur_d1();
    TorusGrid grid(1, 64);
    const double lam = lambda_dilated(data, grid, 0.5);
    CHECK(lam > 0.0);
    CHECK(std::isfinite(lam));
    CHECK(lambda_dilated(data, grid, 0.0) == 0.0);
}

}
