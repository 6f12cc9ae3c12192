#include "bootperc/experiments.hpp"

#include "bootperc/constructions.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/witness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <thread>

namespace bootperc {

namespace {

// Cells of [n]^d grouped by level, for levels d..dn.
std::vector<std::uint64_t> level_sizes(const LatticeSpec& spec)
{
    std::vector<std::uint64_t> sizes(static_cast<std::size_t>(spec.dim()) * spec.side() + 1, 0);
    std::vector<int> x(spec.dim());
    for (std::uint64_t i = 0; i < spec.cell_count(); ++i) {
        spec.decode(static_cast<CellIndex>(i), x);
        int k = 0;
        for (int c : x)
            k += c;
        ++sizes[k];
    }
    return sizes;
}

std::vector<std::uint64_t> infected_by_level(const LatticeSpec& spec, const CellSet& set)
{
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(spec.dim()) * spec.side() + 1, 0);
    std::vector<int> x(spec.dim());
    set.for_each([&](CellIndex v) {
        spec.decode(v, x);
        int k = 0;
        for (int c : x)
            k += c;
        ++counts[k];
    });
    return counts;
}

} // namespace

StripFillReport strip_fill(int d, int n, int s)
{
    const StripContext ctx(d, n, s);
    const LatticeSpec spec(d, n);
    const auto seeds = level_set(d, n, ctx.lower_level()) | level_set(d, n, ctx.upper_level());
    const auto closed = closure(spec, seeds);

    StripFillReport report{d, n, s, false, {}, 0};
    const auto sizes = level_sizes(spec);
    const auto infected = infected_by_level(spec, closed);
    for (long long k = ctx.lower_level() + 1; k < ctx.upper_level(); ++k) {
        if (k < d || sizes[k] == 0)
            continue;
        report.levels_checked.push_back(k);
        report.missing += sizes[k] - infected[k];
    }
    report.filled = report.missing == 0;
    return report;
}

bool verify_strip_fill(int d, int n, int s)
{
    return strip_fill(d, n, s).filled;
}

SeparationReport separation(int d, int n)
{
    if (d < 2)
        throw InputError("separation check needs d >= 2");
    const long long top = static_cast<long long>(d) * n;
    const long long j = d;
    if (j + n + 1 > top)
        throw InputError("no pair of nonempty levels n + 1 apart in [" + std::to_string(n) + "]^" + std::to_string(d));

    const LatticeSpec spec(d, n);
    const auto seeds = level_set(d, n, j) | level_set(d, n, j + n + 1);
    const auto closed = closure(spec, seeds);
    const auto sizes = level_sizes(spec);
    const auto infected = infected_by_level(spec, closed);

    SeparationReport report{d, n, j, closed.is_full(), true, {}};
    for (long long h = j + 1; h < j + n + 1; ++h) {
        const bool interior = h - j > 1 && (j + n + 1) - h > 1;
        report.levels.push_back({h, sizes[h], infected[h], interior});
        if (interior && sizes[h] > 0 && infected[h] == sizes[h])
            report.interior_levels_hold = false;
    }
    return report;
}

bool verify_separation(int d, int n)
{
    return separation(d, n).separated();
}

QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size())
        throw InputError("fit needs as many x values as y values");
    if (x.size() < 4)
        throw InputError("quadratic fit needs at least 4 points");

    const auto m = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd design(m, 3);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        design(i, 0) = x[i] * x[i];
        design(i, 1) = x[i];
        design(i, 2) = 1.0;
        rhs(i) = y[i];
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd residual = rhs - design * coef;

    QuadraticFit fit{coef(0), coef(1), coef(2), {}};
    fit.residuals.assign(residual.data(), residual.data() + residual.size());
    return fit;
}

std::uint64_t SweepTable::bound_violations() const
{
    return static_cast<std::uint64_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.exceeds_bound; }));
}

SweepTable sweep_time(int d, const std::vector<int>& ns, const std::string& construction, const SweepOptions& options)
{
    if (construction != "hyperplanes" && construction != "shifted" && construction != "boundary")
        throw InputError("sweep construction must be hyperplanes, shifted or boundary, got '" + construction + "'");

    std::vector<int> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int n : sorted) {
        const LatticeSpec spec(d, n);
        if (spec.cell_count() > options.cell_budget)
            throw InputError("[" + std::to_string(n) + "]^" + std::to_string(d) + " exceeds the sweep cell budget");
    }

    SweepTable table{d, construction, std::vector<SweepRow>(sorted.size()), std::nullopt};
    auto one_row = [&](std::size_t i) {
        const int n = sorted[i];
        const LatticeSpec spec(d, n);
        const auto start = std::chrono::steady_clock::now();
        const auto record = run(spec, construction_by_name(construction, d, n));
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        table.rows[i] = {n, record.T, record.percolates, spec.cell_count(), elapsed.count(),
                         record.T > witness_depth_bound(d, n)};
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(options.parallelism, static_cast<unsigned>(sorted.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < sorted.size(); ++i)
            one_row(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < sorted.size(); i += workers)
                    one_row(i);
            });
    }

    std::vector<double> xs, ys;
    for (const auto& row : table.rows) {
        if (row.percolates) {
            xs.push_back(row.n);
            ys.push_back(row.T);
        }
    }
    if (xs.size() >= 4)
        table.fit = fit_quadratic(xs, ys);
    return table;
}

} // namespace bootperc
