#include "bootperc/constructions.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/extremal.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

using namespace bootperc;

namespace {

// Subset-by-subset oracle over every bitmask of the cells.
int brute_min_size(const LatticeSpec& spec)
{
    const auto cells = static_cast<unsigned>(spec.cell_count());
    int best = static_cast<int>(cells) + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        const int k = std::popcount(mask);
        if (k >= best)
            continue;
        CellSet set(spec);
        for (unsigned v = 0; v < cells; ++v)
            if (mask >> v & 1)
                set.insert(v);
        if (percolates(spec, set))
            best = k;
    }
    return best;
}

// Position in colex order of the first percolating 3-subset, counting from 1.
std::uint64_t colex_rank_of_first_triple(const LatticeSpec& spec)
{
    const auto cells = static_cast<CellIndex>(spec.cell_count());
    std::uint64_t rank = 0;
    for (CellIndex a = 0; a < cells; ++a)
        for (CellIndex b = 0; b < a; ++b)
            for (CellIndex c = 0; c < b; ++c) {
                ++rank;
                if (percolates(spec, CellSet(spec, std::vector<CellIndex>{c, b, a})))
                    return rank;
            }
    return 0;
}

// Fill time of [n] from one seed at c under the 1-neighbour rule.
int line_time(int n, int c)
{
    return std::max(c - 1, n - c);
}

} // namespace

TEST_CASE("binomial coefficients")
{
    CHECK(binomial(9, 3) == 84);
    CHECK(binomial(27, 8) == 2220075);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
    CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("smallest percolating sets on tiny grids")
{
    const auto three = min_percolating_size(LatticeSpec(2, 3), 9);
    REQUIRE(three.optimum);
    CHECK(*three.optimum == 3);
    CHECK(three.witness.size() == 3);
    CHECK(percolates(three.spec, three.witness));
    // The search stops at the first percolating set of the optimal size.
    CHECK(three.instances_examined == 1 + 9 + 36 + colex_rank_of_first_triple(three.spec));

    const auto cube = min_percolating_size(LatticeSpec(3, 2), 8);
    REQUIRE(cube.optimum);
    CHECK(*cube.optimum == 4);

    const auto torus = min_percolating_size(LatticeSpec(2, 3, Topology::torus), 9);
    REQUIRE(torus.optimum);
    CHECK(*torus.optimum == 2);
}

TEST_CASE("min size search agrees with a bitmask oracle")
{
    for (auto spec : {LatticeSpec(2, 2), LatticeSpec(2, 3), LatticeSpec(3, 2), LatticeSpec(1, 4),
                      LatticeSpec(2, 3, Topology::torus), LatticeSpec(2, 3, Topology::grid, 1),
                      LatticeSpec(2, 3, Topology::grid, 3), LatticeSpec(1, 4, Topology::torus, 2)}) {
        const auto result = min_percolating_size(spec, static_cast<int>(spec.cell_count()));
        REQUIRE(result.optimum);
        CHECK(*result.optimum == brute_min_size(spec));
    }
}

TEST_CASE("min size search reports nothing below the size limit")
{
    const auto result = min_percolating_size(LatticeSpec(2, 3), 2);
    CHECK_FALSE(result.optimum);
    CHECK(result.witness.empty());
    CHECK(result.exhaustive);
    CHECK(result.size == 2);
}

TEST_CASE("minimum percolation times")
{
    const auto line = min_percolation_time(LatticeSpec(1, 5), 1);
    REQUIRE(line.optimum);
    // The centre seed reaches both ends in two steps.
    CHECK(*line.optimum == 2);
    CHECK(line.witness.cells() == std::vector<Cell>{{3}});

    CHECK(*min_percolation_time(LatticeSpec(2, 3), 3).optimum == 2);
    CHECK(*min_percolation_time(LatticeSpec(2, 4), 4).optimum == 3);

    const auto cube = min_percolation_time(LatticeSpec(3, 2), 4);
    CHECK(*cube.optimum == 1);
    CHECK(cube.witness.cells() == std::vector<Cell>{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}});
    CHECK(run(cube.spec, cube.witness).T == 1);
}

TEST_CASE("one-dimensional minimum time matches the best single seed")
{
    for (int n = 2; n <= 9; ++n) {
        int best = n;
        for (int c = 1; c <= n; ++c)
            best = std::min(best, line_time(n, c));
        const auto result = min_percolation_time(LatticeSpec(1, n), 1);
        CHECK(*result.optimum == best);
        CHECK(*result.optimum == n / 2);
    }
}

TEST_CASE("min time search with no percolating set is a domain error")
{
    CHECK_THROWS_AS(min_percolation_time(LatticeSpec(2, 3), 2), DomainError);
    CHECK_THROWS_AS(min_percolation_time(LatticeSpec(2, 3), 10), InputError);
}

TEST_CASE("budget is enforced before any oversized enumeration")
{
    SearchOptions options;
    options.budget = 100;
    try {
        min_percolating_size(LatticeSpec(2, 3), 9, options);
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        CHECK(e.examined() == 1 + 9 + 36);
        CHECK(e.last_completed_size() == 2);
    }
    CHECK_THROWS_AS(min_percolation_time(LatticeSpec(2, 4), 4, options), ResourceError);
    options.budget = 1820;
    CHECK_NOTHROW(min_percolation_time(LatticeSpec(2, 4), 4, options));
}

TEST_CASE("symmetry groups have the expected orders")
{
    CHECK(symmetry_group(LatticeSpec(2, 3)).size() == 8);
    CHECK(symmetry_group(LatticeSpec(3, 2)).size() == 48);
    CHECK(symmetry_group(LatticeSpec(1, 5)).size() == 2);
    CHECK(symmetry_group(LatticeSpec(2, 3, Topology::torus)).size() == 8 * 9);
    for (const auto& spec : {LatticeSpec(2, 4), LatticeSpec(3, 3), LatticeSpec(2, 4, Topology::torus)}) {
        const auto group = symmetry_group(spec);
        for (CellIndex v = 0; v < spec.cell_count(); ++v)
            CHECK(group.front()[v] == v);
        for (const auto& g : group) {
            // Each element is a graph automorphism.
            std::set<CellIndex> image(g.begin(), g.end());
            CHECK(image.size() == spec.cell_count());
            for (CellIndex v = 0; v < spec.cell_count(); ++v)
                spec.for_each_neighbor(v, [&](CellIndex w) {
                    bool adjacent = false;
                    spec.for_each_neighbor(g[v], [&](CellIndex u) { adjacent = adjacent || u == g[w]; });
                    CHECK(adjacent);
                });
        }
    }
}

TEST_CASE("symmetry pruning gives the same answers with fewer evaluations")
{
    SearchOptions pruned;
    pruned.symmetry_pruning = true;
    for (auto spec : {LatticeSpec(2, 2), LatticeSpec(2, 3), LatticeSpec(3, 2), LatticeSpec(2, 4),
                      LatticeSpec(2, 3, Topology::torus)}) {
        const auto plain = min_percolating_size(spec, static_cast<int>(spec.cell_count()));
        const auto quotient = min_percolating_size(spec, static_cast<int>(spec.cell_count()), pruned);
        CHECK(quotient.symmetry_pruned);
        CHECK(quotient.optimum == plain.optimum);
        CHECK(quotient.witness == plain.witness);
        CHECK(quotient.instances_examined <= plain.instances_examined);
    }
    const auto plain = min_percolation_time(LatticeSpec(3, 2), 4);
    const auto quotient = min_percolation_time(LatticeSpec(3, 2), 4, pruned);
    CHECK(quotient.optimum == plain.optimum);
    CHECK(quotient.witness == plain.witness);
    CHECK(quotient.instances_examined < plain.instances_examined);
}

TEST_CASE("parallel searches match the serial search exactly")
{
    for (unsigned workers : {2u, 3u, 8u}) {
        SearchOptions options;
        options.parallelism = workers;
        const auto spec = LatticeSpec(2, 4);
        const auto serial = min_percolating_size(spec, 6);
        const auto parallel = min_percolating_size(spec, 6, options);
        CHECK(parallel.optimum == serial.optimum);
        CHECK(parallel.witness == serial.witness);
        CHECK(parallel.instances_examined == serial.instances_examined);

        const auto serial_time = min_percolation_time(spec, 4);
        const auto parallel_time = min_percolation_time(spec, 4, options);
        CHECK(parallel_time.optimum == serial_time.optimum);
        CHECK(parallel_time.witness == serial_time.witness);
        CHECK(parallel_time.instances_examined == serial_time.instances_examined);
    }
}

TEST_CASE("minimality checks")
{
    const LatticeSpec spec(2, 3);
    CHECK(is_minimal(spec, hyperplane_union(2, 3)));
    CHECK_FALSE(is_minimal(spec, CellSet::full(spec)));
    for (int n = 2; n <= 6; ++n)
        CHECK(is_minimal(LatticeSpec(2, n), named_set(NamedSet::diagonal2d, n, 2)));
    CHECK_THROWS_AS(is_minimal(spec, CellSet(spec, std::vector<Cell>{{1, 2}, {2, 1}})), DomainError);

    // Larger than the mask fast path.
    const LatticeSpec big(3, 5);
    CHECK(is_minimal(big, hyperplane_union(3, 5)));
    auto extra = hyperplane_union(3, 5);
    extra.insert(Cell{1, 1, 1});
    CHECK_FALSE(is_minimal(big, extra));
}

TEST_CASE("no set one smaller than n^(d-1) percolates")
{
    for (auto [d, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        const LatticeSpec spec(d, n);
        int target = 1;
        for (int j = 1; j < d; ++j)
            target *= n;
        const auto result = min_percolating_size(spec, target - 1);
        CHECK_FALSE(result.optimum);
    }
}
