#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bootperc {

struct StripFillReport {
    int d, n, s;
    bool filled = false;
    /// Levels strictly inside the strip that are nonempty in [n]^d.
    std::vector<long long> levels_checked;
    /// Cells in those levels left healthy by the closure.
    std::uint64_t missing = 0;
};

/// Whether the d-neighbour closure of V_{(s-1)n} u V_{sn} contains every
/// cell strictly between the two levels. Throws InputError unless
/// ceil(d/n) <= s <= d.
StripFillReport strip_fill(int d, int n, int s);
bool verify_strip_fill(int d, int n, int s);

struct SeparationLevel {
    long long level;
    std::uint64_t size;
    std::uint64_t infected;
    /// More than one level away from both seeds.
    bool interior;
};

struct SeparationReport {
    int d, n;
    long long j; ///< lower seed level; the upper seed is j + n + 1
    bool closure_is_full = false;
    /// Every nonempty interior level keeps at least one healthy cell.
    bool interior_levels_hold = false;
    std::vector<SeparationLevel> levels;

    bool separated() const noexcept { return !closure_is_full && interior_levels_hold; }
};

/// Seeds the two levels V_j and V_{j+n+1} for the smallest j >= d with both
/// nonempty and reports how far the d-neighbour closure spreads between
/// them. Throws InputError if d < 2 or no such j exists.
SeparationReport separation(int d, int n);
bool verify_separation(int d, int n);

struct QuadraticFit {
    double a2, a1, a0;
    /// T - (a2 n^2 + a1 n + a0) for each fitted row, in row order.
    std::vector<double> residuals;
};

/// Least-squares fit of y ~ a2 x^2 + a1 x + a0. Needs at least 4 points.
QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRow {
    int n;
    int T;
    bool percolates;
    std::uint64_t cells;
    double runtime_ms;
    /// T exceeded (d+2)n^2 + n.
    bool exceeds_bound;
};

struct SweepTable {
    int d;
    std::string construction;
    std::vector<SweepRow> rows;
    std::optional<QuadraticFit> fit;

    std::uint64_t bound_violations() const;
};

struct SweepOptions {
    std::uint64_t cell_budget = std::uint64_t{1} << 28;
    unsigned parallelism = 1;
};

/// One d-neighbour run per n of the named construction ("hyperplanes",
/// "shifted" or "boundary"), rows sorted by n. Fits T against n over the
/// percolating rows when there are at least four of them.
SweepTable sweep_time(int d, const std::vector<int>& ns, const std::string& construction,
                      const SweepOptions& options = {});

} // namespace bootperc
