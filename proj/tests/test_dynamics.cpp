#include "bootperc/constructions.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/mask_closure.hpp"

#include "random_sets.hpp"

#include <doctest.h>

#include <array>
#include <random>

using namespace bootperc;

namespace {

// Independent 2D stepper on a plain array, for hand-checked small cases.
std::array<std::array<int, 8>, 8> step_2d(int n, const std::vector<std::pair<int, int>>& seeds, int r, int& T)
{
    std::array<std::array<int, 8>, 8> time{};
    for (auto& row : time)
        row.fill(-1);
    for (auto [x, y] : seeds)
        time[x][y] = 0;
    T = 0;
    for (int t = 1;; ++t) {
        std::vector<std::pair<int, int>> fresh;
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y) {
                if (time[x][y] >= 0)
                    continue;
                int c = 0;
                const int dx[] = {-1, 1, 0, 0}, dy[] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    const int u = x + dx[k], w = y + dy[k];
                    if (u >= 1 && u <= n && w >= 1 && w <= n && time[u][w] >= 0 && time[u][w] < t)
                        ++c;
                }
                if (c >= r)
                    fresh.emplace_back(x, y);
            }
        if (fresh.empty())
            return time;
        for (auto [x, y] : fresh)
            time[x][y] = t;
        T = t;
    }
}

} // namespace

TEST_CASE("A_2 on [3]^2 fills in three steps")
{
    const LatticeSpec spec(2, 3);
    const CellSet initial(spec, std::vector<Cell>{{1, 2}, {2, 1}, {3, 3}});
    const auto record = run(spec, initial, {true, true});
    CHECK(record.percolates);
    CHECK(record.T == 3);
    CHECK(record.infected_at(1) == CellSet(spec, std::vector<Cell>{{1, 1}, {2, 2}}));
    CHECK(record.infected_at(2) == CellSet(spec, std::vector<Cell>{{3, 2}, {2, 3}}));
    CHECK(record.infected_at(3) == CellSet(spec, std::vector<Cell>{{3, 1}, {1, 3}}));

    int T = 0;
    const auto oracle = step_2d(3, {{1, 2}, {2, 1}, {3, 3}}, 2, T);
    CHECK(T == 3);
    for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y)
            CHECK(record.times[spec.index_of({x, y})] == oracle[x][y]);
}

TEST_CASE("A_3 on [6]^3 takes fourteen steps")
{
    const LatticeSpec spec(3, 6);
    const auto record = run(spec, hyperplane_union(3, 6));
    CHECK(record.percolates);
    CHECK(record.T == 14);
}

TEST_CASE("a diagonal percolates [5]^2 in four steps")
{
    const LatticeSpec spec(2, 5);
    const auto record = run(spec, named_set(NamedSet::diagonal2d, 5, 2));
    CHECK(record.percolates);
    CHECK(record.T == 4);

    int T = 0;
    step_2d(5, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}, 2, T);
    CHECK(T == 4);
}

TEST_CASE("closed sets give T = 0")
{
    const LatticeSpec spec(2, 2);
    const auto empty = run(spec, CellSet(spec));
    CHECK_FALSE(empty.percolates);
    CHECK(empty.T == 0);

    const auto full = run(spec, CellSet::full(spec));
    CHECK(full.percolates);
    CHECK(full.T == 0);
}

TEST_CASE("perimeter counts Z^d boundary edges")
{
    const LatticeSpec spec(2, 3);
    CHECK(perimeter(spec, CellSet(spec, std::vector<Cell>{{2, 2}})) == 4);
    CHECK(perimeter(spec, CellSet::full(spec)) == 12);
    CHECK(perimeter(spec, hyperplane_union(2, 3)) == 12);
    CHECK(perimeter(spec, CellSet(spec)) == 0);
    CHECK_THROWS_AS(perimeter(LatticeSpec(2, 3, Topology::torus), CellSet(LatticeSpec(2, 3, Topology::torus))),
                    UnsupportedTopology);
}

TEST_CASE("torus runs reject perimeter tracing")
{
    const LatticeSpec torus(2, 3, Topology::torus);
    CHECK_THROWS_AS(run(torus, CellSet(torus), {false, true}), UnsupportedTopology);
    CHECK_NOTHROW(run(torus, CellSet(torus), {true, false}));
}

TEST_CASE("mismatched lattices are an input error")
{
    CHECK_THROWS_AS(run(LatticeSpec(2, 3), CellSet(LatticeSpec(2, 4))), InputError);
    CHECK_THROWS_AS(run(LatticeSpec(2, 3), CellSet(LatticeSpec(2, 3, Topology::torus))), InputError);
}

TEST_CASE("run records satisfy their invariants on random instances")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const auto [spec, initial] = testing::random_instance(rng, 1024);
        const auto record = run(spec, initial, {true, !spec.is_torus()});

        int max_time = 0;
        bool all = true;
        for (CellIndex v = 0; v < spec.cell_count(); ++v) {
            const auto t = record.times[v];
            CHECK((t == 0) == initial.contains(v));
            all = all && t != kNever;
            max_time = std::max(max_time, static_cast<int>(t));
            if (t > 0) {
                int before = 0, well_before = 0;
                spec.for_each_neighbor(v, [&](CellIndex w) {
                    const auto tw = record.times[w];
                    before += (tw != kNever && tw < t) ? 1 : 0;
                    well_before += (tw != kNever && tw < t - 1) ? 1 : 0;
                });
                CHECK(before >= spec.threshold());
                CHECK(well_before < spec.threshold());
            }
        }
        CHECK(record.T == max_time);
        CHECK(record.percolates == all);

        if (record.perimeter_trace) {
            const auto& trace = *record.perimeter_trace;
            REQUIRE(trace.size() == static_cast<std::size_t>(record.T) + 1);
            CHECK(trace.back() == perimeter(spec, record.closure()));
            if (spec.threshold() == spec.dim())
                for (std::size_t i = 1; i < trace.size(); ++i)
                    CHECK(trace[i] <= trace[i - 1]);
        }

        // Fixed point.
        const auto again = run(spec, record.closure());
        CHECK(again.T == 0);
        CHECK(again.closure() == record.closure());
    }
}

TEST_CASE("closure is monotone under inclusion")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto [spec, small] = testing::random_instance(rng, 512);
        CellSet big = small;
        std::bernoulli_distribution coin(0.1);
        for (CellIndex v = 0; v < spec.cell_count(); ++v)
            if (coin(rng))
                big.insert(v);
        CHECK(closure(spec, small).is_subset_of(closure(spec, big)));
    }
}

TEST_CASE("frontier and naive steppers agree")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto [spec, initial] = testing::random_instance(rng, 4096);
        const RunOptions options{true, !spec.is_torus()};
        CHECK(run(spec, initial, options) == run_naive(spec, initial, options));
    }
}

TEST_CASE("perimeter is conserved exactly from the hyperplane union")
{
    for (int d = 1; d <= 4; ++d) {
        for (int n = 2; n <= (d == 4 ? 5 : 7); ++n) {
            const LatticeSpec spec(d, n);
            const auto record = run(spec, hyperplane_union(d, n), {true, true});
            std::uint64_t expected = 2 * static_cast<std::uint64_t>(d);
            for (int j = 1; j < d; ++j)
                expected *= static_cast<std::uint64_t>(n);
            CHECK(record.perimeter_trace->front() == expected);
            CHECK(check_conservation(record).violations() == 0);
        }
    }
}

TEST_CASE("conservation check flags a redundant seed")
{
    const LatticeSpec spec(2, 3);
    auto initial = hyperplane_union(2, 3);
    initial.insert(Cell{1, 1});
    const auto report = check_conservation(run(spec, initial, {true, true}));
    CHECK(report.adjacent_initial_pairs == 2);
    CHECK(report.violations() > 0);
    CHECK_THROWS_AS(check_conservation(run(spec, initial)), InputError);
}

TEST_CASE("mask stepper matches the engine")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [spec, initial] = testing::random_instance(rng, 64);
        const MaskLattice lattice(spec);
        std::uint64_t mask = 0;
        initial.for_each([&](CellIndex v) { mask |= std::uint64_t{1} << v; });
        const auto record = run(spec, initial);
        const auto t = lattice.percolation_time(mask);
        CHECK(t.has_value() == record.percolates);
        if (t)
            CHECK(*t == record.T);
        std::uint64_t closed = 0;
        record.closure().for_each([&](CellIndex v) { closed |= std::uint64_t{1} << v; });
        CHECK(lattice.closure(mask) == closed);
    }
    CHECK_THROWS_AS(MaskLattice(LatticeSpec(2, 9)), InputError);
}
