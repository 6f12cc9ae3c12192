#include "bootperc/constructions.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace bootperc;

TEST_CASE("strip fill examples")
{
    CHECK(verify_strip_fill(3, 5, 2));
    CHECK(verify_strip_fill(1, 5, 1));

    const auto corner = strip_fill(3, 2, 2);
    CHECK(corner.filled);
    CHECK(corner.levels_checked == std::vector<long long>{3});

    CHECK_THROWS_AS(verify_strip_fill(3, 2, 1), InputError);
    CHECK_THROWS_AS(verify_strip_fill(3, 5, 4), InputError);
}

TEST_CASE("strip fill holds for every valid strip with d <= 4, n <= 8")
{
    for (int d = 1; d <= 4; ++d)
        for (int n = 1; n <= 8; ++n)
            for (int s = (d + n - 1) / n; s <= d; ++s) {
                const auto report = strip_fill(d, n, s);
                CHECK_MESSAGE(report.filled, "d=" << d << " n=" << n << " s=" << s);
                CHECK(report.missing == 0);
            }
}

TEST_CASE("two levels n + 1 apart stay separated in [4]^2")
{
    const auto report = separation(2, 4);
    CHECK(report.j == 2);
    CHECK_FALSE(report.closure_is_full);

    const LatticeSpec spec(2, 4);
    const auto closed = closure(spec, level_set(2, 4, 2) | level_set(2, 4, 7));
    CHECK(closed == CellSet(spec, std::vector<Cell>{{1, 1}, {3, 3}, {3, 4}, {4, 3}, {4, 4}}));
    CHECK(report.separated());
}

TEST_CASE("separation holds for d in {2,3}, n in 4..8")
{
    for (int d = 2; d <= 3; ++d)
        for (int n = 4; n <= 8; ++n) {
            const auto report = separation(d, n);
            CHECK_MESSAGE(report.separated(), "d=" << d << " n=" << n);
            CHECK(report.levels.size() == static_cast<std::size_t>(n));
        }
    CHECK_THROWS_AS(separation(1, 5), InputError);
    CHECK_THROWS_AS(separation(2, 1), InputError);
}

TEST_CASE("quadratic fit recovers exact coefficients")
{
    std::vector<double> x, y;
    for (int n = 1; n <= 8; ++n) {
        x.push_back(n);
        y.push_back(0.5 * n * n - n + 3);
    }
    const auto fit = fit_quadratic(x, y);
    CHECK(fit.a2 == doctest::Approx(0.5));
    CHECK(fit.a1 == doctest::Approx(-1.0));
    CHECK(fit.a0 == doctest::Approx(3.0));
    REQUIRE(fit.residuals.size() == 8);
    for (double r : fit.residuals)
        CHECK(std::abs(r) < 1e-9);
    CHECK_THROWS_AS(fit_quadratic({1, 2, 3}, {1, 2, 3}), InputError);
}

TEST_CASE("sweep rows are sorted, bounded and fitted")
{
    const auto table = sweep_time(3, {8, 6, 7, 6, 9}, "hyperplanes");
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].n == 6);
    CHECK(table.rows[0].T == 14);
    CHECK(table.rows[0].cells == 216);
    for (const auto& row : table.rows) {
        CHECK(row.percolates);
        CHECK(row.T == run(LatticeSpec(3, row.n), hyperplane_union(3, row.n)).T);
    }
    CHECK(table.bound_violations() == 0);
    CHECK(table.fit);

    CHECK_FALSE(sweep_time(3, {4, 5, 6}, "hyperplanes").fit);
    CHECK_THROWS_AS(sweep_time(3, {4}, "diagonal"), InputError);
    SweepOptions tiny;
    tiny.cell_budget = 100;
    CHECK_THROWS_AS(sweep_time(3, {5}, "hyperplanes", tiny), InputError);
}

TEST_CASE("parallel sweeps give the same rows")
{
    SweepOptions options;
    options.parallelism = 3;
    const auto serial = sweep_time(2, {3, 4, 5, 6, 7, 8, 9, 10}, "shifted");
    const auto parallel = sweep_time(2, {3, 4, 5, 6, 7, 8, 9, 10}, "shifted", options);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].n == parallel.rows[i].n);
        CHECK(serial.rows[i].T == parallel.rows[i].T);
        CHECK(serial.rows[i].percolates == parallel.rows[i].percolates);
    }
}

TEST_CASE("two-dimensional hyperplane times grow linearly")
{
    std::vector<int> ns;
    for (int n = 3; n <= 10; ++n)
        ns.push_back(n);
    const auto table = sweep_time(2, ns, "hyperplanes");
    REQUIRE(table.fit);
    CHECK(std::abs(table.fit->a2) <= 0.05);
}

TEST_CASE("non-percolating rows are kept out of the fit")
{
    // Every shifted row is kept; rows that fail to percolate are flagged only.
    std::vector<int> ns;
    for (int n = 2; n <= 9; ++n)
        ns.push_back(n);
    const auto table = sweep_time(3, ns, "shifted");
    std::size_t percolating = 0;
    for (const auto& row : table.rows)
        percolating += row.percolates ? 1 : 0;
    if (percolating >= 4) {
        REQUIRE(table.fit);
        CHECK(table.fit->residuals.size() == percolating);
    } else {
        CHECK_FALSE(table.fit);
    }
}
