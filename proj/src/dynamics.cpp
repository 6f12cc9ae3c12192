#include "bootperc/dynamics.hpp"

#include "bootperc/errors.hpp"

#include <algorithm>

namespace bootperc {

namespace {

void check_inputs(const LatticeSpec& spec, const CellSet& initial, const RunOptions& options)
{
    if (!spec.same_geometry(initial.spec()))
        throw InputError("initial set does not belong to the lattice being simulated");
    if (options.record_trace && spec.is_torus())
        throw UnsupportedTopology("perimeter trace is only defined for grid topology");
}

RunRecord make_record(const LatticeSpec& spec, const CellSet& initial, const RunOptions& options)
{
    RunRecord record{spec, initial, std::vector<std::int32_t>(spec.cell_count(), kNever), 0, false, {}, {}};
    initial.for_each([&](CellIndex i) { record.times[i] = 0; });
    if (options.record_trace)
        record.perimeter_trace.emplace(1, perimeter(spec, initial));
    if (options.audit)
        record.audit.emplace();
    return record;
}

void finish(RunRecord& record)
{
    record.percolates = std::none_of(record.times.begin(), record.times.end(), [](auto t) { return t == kNever; });
}

} // namespace

CellSet RunRecord::closure() const
{
    CellSet out(spec);
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] != kNever)
            out.insert(static_cast<CellIndex>(i));
    return out;
}

CellSet RunRecord::infected_at(int step) const
{
    CellSet out(spec);
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] == step)
            out.insert(static_cast<CellIndex>(i));
    return out;
}

RunRecord run(const LatticeSpec& spec, const CellSet& initial, RunOptions options)
{
    check_inputs(spec, initial, options);
    RunRecord record = make_record(spec, initial, options);
    auto& times = record.times;

    const std::size_t cells = spec.cell_count();
    const int r = spec.threshold();
    const auto two_d = static_cast<std::int64_t>(2 * spec.dim());

    // Infected-neighbour count of each healthy cell. Degree is at most 2d <= 64
    // whenever a cell has any neighbour at all, so a byte never overflows.
    std::vector<std::uint8_t> counts(cells, 0);
    // Step for which a cell was last queued as a candidate.
    std::vector<std::int32_t> queued(cells, 0);
    std::vector<CellIndex> candidates;
    std::vector<CellIndex> fresh;

    auto touch_neighbors = [&](CellIndex v, std::int32_t next_step) {
        spec.for_each_neighbor(v, [&](CellIndex w) {
            if (times[w] != kNever)
                return;
            ++counts[w];
            if (queued[w] != next_step) {
                queued[w] = next_step;
                candidates.push_back(w);
            }
        });
    };

    initial.for_each([&](CellIndex v) { touch_neighbors(v, 1); });

    for (std::int32_t step = 1; !candidates.empty(); ++step) {
        fresh.clear();
        for (auto w : candidates)
            if (counts[w] >= r)
                fresh.push_back(w);
        candidates.clear();
        if (fresh.empty())
            break;
        std::sort(fresh.begin(), fresh.end());

        for (auto v : fresh)
            times[v] = step;

        if (record.audit)
            for (auto v : fresh)
                record.audit->push_back({v, step, counts[v]});

        if (record.perimeter_trace) {
            std::int64_t delta = 0;
            for (auto v : fresh) {
                delta += two_d - 2 * static_cast<std::int64_t>(counts[v]);
                spec.for_each_neighbor(v, [&](CellIndex w) {
                    if (w > v && times[w] == step)
                        delta -= 2;
                });
            }
            auto& trace = *record.perimeter_trace;
            trace.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(trace.back()) + delta));
        }

        for (auto v : fresh)
            touch_neighbors(v, step + 1);
        record.T = step;
    }

    finish(record);
    return record;
}

RunRecord run_naive(const LatticeSpec& spec, const CellSet& initial, RunOptions options)
{
    check_inputs(spec, initial, options);
    RunRecord record = make_record(spec, initial, options);
    auto& times = record.times;
    const auto cells = static_cast<CellIndex>(spec.cell_count() - 1);

    for (std::int32_t step = 1;; ++step) {
        std::vector<std::pair<CellIndex, int>> fresh;
        for (CellIndex v = 0;; ++v) {
            if (times[v] == kNever) {
                int infected = 0;
                spec.for_each_neighbor(v, [&](CellIndex w) {
                    if (times[w] != kNever && times[w] < step)
                        ++infected;
                });
                if (infected >= spec.threshold())
                    fresh.emplace_back(v, infected);
            }
            if (v == cells)
                break;
        }
        if (fresh.empty())
            break;
        for (auto [v, infected] : fresh) {
            times[v] = step;
            if (record.audit)
                record.audit->push_back({v, step, infected});
        }
        if (record.perimeter_trace)
            record.perimeter_trace->push_back(perimeter(spec, record.closure()));
        record.T = step;
    }

    finish(record);
    return record;
}

CellSet closure(const LatticeSpec& spec, const CellSet& initial)
{
    return run(spec, initial).closure();
}

bool percolates(const LatticeSpec& spec, const CellSet& initial)
{
    return run(spec, initial).percolates;
}

std::uint64_t perimeter(const LatticeSpec& spec, const CellSet& set)
{
    if (spec.is_torus())
        throw UnsupportedTopology("perimeter is only defined for grid topology");
    if (!spec.same_geometry(set.spec()))
        throw InputError("set does not belong to the lattice");
    const auto two_d = static_cast<std::uint64_t>(2 * spec.dim());
    std::uint64_t total = 0;
    set.for_each([&](CellIndex v) {
        std::uint64_t inside = 0;
        spec.for_each_neighbor(v, [&](CellIndex w) { inside += set.contains(w) ? 1 : 0; });
        total += two_d - inside;
    });
    return total;
}

ConservationReport check_conservation(const RunRecord& record)
{
    if (!record.audit)
        throw InputError("conservation check needs an audited run");
    const auto& spec = record.spec;
    const auto& times = record.times;
    ConservationReport report;

    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto v = static_cast<CellIndex>(i);
        if (times[v] == kNever)
            continue;
        spec.for_each_neighbor(v, [&](CellIndex w) {
            if (w > v && times[w] == times[v]) {
                if (times[v] == 0)
                    ++report.adjacent_initial_pairs;
                else
                    ++report.same_step_adjacent_pairs;
            }
        });
    }
    for (const auto& event : *record.audit)
        if (event.infected_neighbors != spec.threshold())
            ++report.over_threshold_infections;
    if (record.perimeter_trace) {
        const auto& trace = *record.perimeter_trace;
        report.perimeter_changes = static_cast<std::uint64_t>(
            std::count_if(trace.begin(), trace.end(), [&](auto p) { return p != trace.front(); }));
    }
    return report;
}

} // namespace bootperc
