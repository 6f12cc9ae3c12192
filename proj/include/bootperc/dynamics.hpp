#pragma once

#include "bootperc/cell_set.hpp"
#include "bootperc/lattice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bootperc {

/// Infection time of a cell that is never infected.
inline constexpr std::int32_t kNever = -1;

struct RunOptions {
    bool audit = false;
    /// Record the perimeter after every step. Grid topology only.
    bool record_trace = false;
};

struct AuditEvent {
    CellIndex cell;
    int step;
    /// Neighbours already infected when the cell was infected, i.e. with
    /// infection time < step.
    int infected_neighbors;

    friend bool operator==(const AuditEvent&, const AuditEvent&) = default;
};

/// Complete trajectory of one synchronous r-neighbour bootstrap run.
struct RunRecord {
    LatticeSpec spec;
    CellSet initial;
    /// Infection time per linear index; 0 for initial cells, kNever if never.
    std::vector<std::int32_t> times;
    /// Last step at which a new infection happened; 0 for closed sets.
    int T = 0;
    bool percolates = false;
    /// Perimeter after each step, index 0 is the initial set.
    std::optional<std::vector<std::uint64_t>> perimeter_trace;
    /// One event per non-initial infection, ordered by (step, cell).
    std::optional<std::vector<AuditEvent>> audit;

    CellSet closure() const;
    /// Cells whose infection time equals `step`.
    CellSet infected_at(int step) const;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Runs the process to its fixed point.
///
/// Each step only re-examines healthy neighbours of the cells infected in the
/// previous step; every healthy cell keeps a counter of its infected
/// neighbours.
///
/// Throws InputError if `initial` lives on a different lattice, and
/// UnsupportedTopology if a perimeter trace is requested on a torus.
RunRecord run(const LatticeSpec& spec, const CellSet& initial, RunOptions options = {});

/// Reference stepper: scans every cell every step and recomputes the
/// perimeter from scratch. Produces the same RunRecord as run().
RunRecord run_naive(const LatticeSpec& spec, const CellSet& initial, RunOptions options = {});

/// Final infected set.
CellSet closure(const LatticeSpec& spec, const CellSet& initial);

bool percolates(const LatticeSpec& spec, const CellSet& initial);

/// Number of Z^d edges between a member of `set` and a vertex outside it,
/// with the grid embedded in Z^d. Throws UnsupportedTopology on a torus.
std::uint64_t perimeter(const LatticeSpec& spec, const CellSet& set);

/// Ways a run can fail to conserve the perimeter exactly.
struct ConservationReport {
    std::uint64_t adjacent_initial_pairs = 0;
    std::uint64_t over_threshold_infections = 0;
    std::uint64_t same_step_adjacent_pairs = 0;
    std::uint64_t perimeter_changes = 0;

    std::uint64_t violations() const noexcept
    {
        return adjacent_initial_pairs + over_threshold_infections + same_step_adjacent_pairs + perimeter_changes;
    }
};

/// Checks that a run infected every cell by exactly r neighbours, never
/// infected two adjacent cells in the same step, started from an independent
/// set, and (when traced) kept a constant perimeter. Requires an audited run.
ConservationReport check_conservation(const RunRecord& record);

} // namespace bootperc
