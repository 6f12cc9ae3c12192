#include "bootperc/extremal.hpp"

#include "bootperc/dynamics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/mask_closure.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

namespace bootperc {

std::string_view to_string(SearchKind kind)
{
    return kind == SearchKind::min_size ? "min_size" : "min_time";
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    constexpr auto saturated = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        // c * (n - i) is divisible by i + 1; split the division so the
        // product only overflows when the result does.
        const std::uint64_t g = std::gcd(c, i + 1);
        const std::uint64_t factor = (n - i) / ((i + 1) / g);
        if (c / g > saturated / factor)
            return saturated;
        c = c / g * factor;
    }
    return c;
}

std::vector<std::vector<CellIndex>> symmetry_group(const LatticeSpec& spec)
{
    const int d = spec.dim();
    const int n = spec.side();
    const auto cells = spec.cell_count();

    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<int>> shifts{std::vector<int>(d, 0)};
    if (spec.is_torus()) {
        shifts.clear();
        for (std::uint64_t t = 0; t < cells; ++t) {
            std::vector<int> shift(d);
            for (int j = 0; j < d; ++j)
                shift[j] = spec.coord0(static_cast<CellIndex>(t), j);
            shifts.push_back(std::move(shift));
        }
    }

    std::vector<std::vector<CellIndex>> group;
    for (const auto& shift : shifts) {
        for (const auto& p : perms) {
            for (std::uint32_t flips = 0; flips < (1U << d); ++flips) {
                std::vector<CellIndex> image(cells);
                for (std::uint64_t i = 0; i < cells; ++i) {
                    std::uint64_t target = 0;
                    for (int j = 0; j < d; ++j) {
                        int c = spec.coord0(static_cast<CellIndex>(i), j);
                        if ((flips >> j) & 1U)
                            c = n - 1 - c;
                        c = (c + shift[j]) % n;
                        target += static_cast<std::uint64_t>(c) * spec.stride(p[j]);
                    }
                    image[i] = static_cast<CellIndex>(target);
                }
                group.push_back(std::move(image));
            }
        }
    }
    return group;
}

namespace {

// Evaluates candidate subsets; one instance per worker thread.
class Evaluator {
public:
    Evaluator(const LatticeSpec& spec, const std::vector<std::vector<CellIndex>>* group)
        : spec_(spec), group_(group), scratch_(spec)
    {
        if (spec.cell_count() <= MaskLattice::kMaxCells)
            mask_.emplace(spec);
    }

    // Colex-least within its orbit. For masks, colex order on equal-size sets
    // is numeric order.
    bool canonical(const std::vector<CellIndex>& combo)
    {
        if (!group_)
            return true;
        if (mask_) {
            const auto self = to_mask(combo);
            for (const auto& g : *group_) {
                std::uint64_t image = 0;
                for (auto v : combo)
                    image |= std::uint64_t{1} << g[v];
                if (image < self)
                    return false;
            }
            return true;
        }
        for (const auto& g : *group_) {
            image_.clear();
            for (auto v : combo)
                image_.push_back(g[v]);
            std::sort(image_.begin(), image_.end());
            if (std::lexicographical_compare(image_.rbegin(), image_.rend(), combo.rbegin(), combo.rend()))
                return false;
        }
        return true;
    }

    std::optional<int> percolation_time(const std::vector<CellIndex>& combo)
    {
        if (mask_)
            return mask_->percolation_time(to_mask(combo));
        scratch_ = CellSet(spec_);
        for (auto v : combo)
            scratch_.insert(v);
        auto record = run(spec_, scratch_);
        if (!record.percolates)
            return std::nullopt;
        return record.T;
    }

private:
    static std::uint64_t to_mask(const std::vector<CellIndex>& combo)
    {
        std::uint64_t mask = 0;
        for (auto v : combo)
            mask |= std::uint64_t{1} << v;
        return mask;
    }

    LatticeSpec spec_;
    const std::vector<std::vector<CellIndex>>* group_;
    std::optional<MaskLattice> mask_;
    CellSet scratch_;
    std::vector<CellIndex> image_;
};

// All k-subsets whose largest element is `top`, or the empty set when k = 0.
// Scans in colex order.
struct ChunkResult {
    std::uint64_t examined = 0;
    /// For first-hit scans: candidates examined up to and including the hit.
    std::uint64_t examined_at_hit = 0;
    std::optional<int> best_time;
    std::vector<CellIndex> best;
};

enum class ScanMode { first_hit, best_time };

ChunkResult scan_chunk(int k, CellIndex top, Evaluator& eval, ScanMode mode)
{
    ChunkResult result;
    std::vector<CellIndex> combo(static_cast<std::size_t>(k));
    const int lower = k - 1; // elements below `top`
    for (int i = 0; i < lower; ++i)
        combo[i] = static_cast<CellIndex>(i);
    if (k > 0)
        combo[lower] = top;

    for (;;) {
        if (eval.canonical(combo)) {
            ++result.examined;
            if (auto t = eval.percolation_time(combo)) {
                if (!result.best_time || *t < *result.best_time) {
                    result.best_time = t;
                    result.best = combo;
                }
                if (mode == ScanMode::first_hit) {
                    result.examined_at_hit = result.examined;
                    return result;
                }
            }
        }
        // Next colex combination of the lower k-1 elements drawn from [0, top).
        int i = 0;
        while (i < lower) {
            const CellIndex limit = i + 1 < lower ? combo[i + 1] : top;
            if (combo[i] + 1 < limit)
                break;
            ++i;
        }
        if (i >= lower)
            return result;
        ++combo[i];
        for (int j = 0; j < i; ++j)
            combo[j] = static_cast<CellIndex>(j);
    }
}

std::vector<CellIndex> chunk_tops(int k, std::uint64_t cells)
{
    std::vector<CellIndex> tops;
    if (k == 0) {
        tops.push_back(0);
        return tops;
    }
    for (std::uint64_t m = static_cast<std::uint64_t>(k - 1); m < cells; ++m)
        tops.push_back(static_cast<CellIndex>(m));
    return tops;
}

// Scans every chunk of size-k subsets across `workers` threads. For first-hit
// scans, workers skip chunks above the lowest chunk known to contain a hit.
std::vector<ChunkResult> scan_level(const LatticeSpec& spec, int k, const std::vector<std::vector<CellIndex>>* group,
                                    ScanMode mode, unsigned workers)
{
    const auto tops = chunk_tops(k, spec.cell_count());
    std::vector<ChunkResult> results(tops.size());
    std::atomic<std::size_t> first_hit{tops.size()};
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(tops.size())));

    auto work = [&](unsigned w) {
        Evaluator eval(spec, group);
        for (std::size_t c = w; c < tops.size(); c += workers) {
            if (mode == ScanMode::first_hit && c > first_hit.load())
                break;
            results[c] = scan_chunk(k, tops[c], eval, mode);
            if (mode == ScanMode::first_hit && results[c].best_time) {
                auto seen = first_hit.load();
                while (c < seen && !first_hit.compare_exchange_weak(seen, c)) {
                }
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }
    return results;
}

CellSet to_set(const LatticeSpec& spec, const std::vector<CellIndex>& combo)
{
    return CellSet(spec, std::span<const CellIndex>(combo));
}

void require_budget(std::uint64_t examined, std::uint64_t level_size, const SearchOptions& options, int k,
                    int last_completed)
{
    if (level_size > options.budget || examined > options.budget - level_size)
        throw ResourceError("search budget of " + std::to_string(options.budget) + " subsets exceeded at size "
                                + std::to_string(k) + " (" + std::to_string(level_size) + " subsets at this size, "
                                + std::to_string(examined) + " enumerated so far)",
                            examined, last_completed);
}

} // namespace

SearchResult min_percolating_size(const LatticeSpec& spec, int max_size, const SearchOptions& options)
{
    const auto cells = spec.cell_count();
    max_size = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(max_size, 0)), cells));
    const auto group = options.symmetry_pruning ? std::optional(symmetry_group(spec)) : std::nullopt;

    SearchResult result{SearchKind::min_size, spec, std::nullopt, CellSet(spec), 0, true, options.symmetry_pruning,
                        max_size};
    std::uint64_t enumerated = 0;
    for (int k = 0; k <= max_size; ++k) {
        const auto level_size = binomial(cells, static_cast<std::uint64_t>(k));
        require_budget(enumerated, level_size, options, k, k - 1);
        const auto chunks =
            scan_level(spec, k, group ? &*group : nullptr, ScanMode::first_hit, options.parallelism);

        const auto hit = std::find_if(chunks.begin(), chunks.end(), [](const auto& c) { return c.best_time.has_value(); });
        for (auto it = chunks.begin(); it != hit; ++it)
            result.instances_examined += it->examined;
        if (hit != chunks.end()) {
            result.instances_examined += hit->examined_at_hit;
            result.optimum = k;
            result.witness = to_set(spec, hit->best);
            if (!run(spec, result.witness).percolates)
                throw InvariantViolation("search witness failed to percolate on re-validation");
            return result;
        }
        enumerated += level_size;
    }
    return result;
}

SearchResult min_percolation_time(const LatticeSpec& spec, int size, const SearchOptions& options)
{
    const auto cells = spec.cell_count();
    if (size < 0 || static_cast<std::uint64_t>(size) > cells)
        throw InputError("subset size " + std::to_string(size) + " outside [0, " + std::to_string(cells) + "]");
    const auto level_size = binomial(cells, static_cast<std::uint64_t>(size));
    require_budget(0, level_size, options, size, -1);

    const auto group = options.symmetry_pruning ? std::optional(symmetry_group(spec)) : std::nullopt;
    const auto chunks = scan_level(spec, size, group ? &*group : nullptr, ScanMode::best_time, options.parallelism);

    SearchResult result{SearchKind::min_time, spec, std::nullopt, CellSet(spec), 0, true, options.symmetry_pruning,
                        size};
    const ChunkResult* best = nullptr;
    for (const auto& chunk : chunks) {
        result.instances_examined += chunk.examined;
        if (chunk.best_time && (!best || *chunk.best_time < *best->best_time))
            best = &chunk;
    }
    if (!best)
        throw DomainError("no set of size " + std::to_string(size) + " percolates");

    result.optimum = best->best_time;
    result.witness = to_set(spec, best->best);
    const auto check = run(spec, result.witness);
    if (!check.percolates || check.T != *result.optimum)
        throw InvariantViolation("search witness failed re-validation");
    return result;
}

bool is_minimal(const LatticeSpec& spec, const CellSet& set)
{
    if (!spec.same_geometry(set.spec()))
        throw InputError("set does not belong to the lattice");

    if (spec.cell_count() <= MaskLattice::kMaxCells) {
        const MaskLattice lattice(spec);
        std::uint64_t mask = 0;
        set.for_each([&](CellIndex v) { mask |= std::uint64_t{1} << v; });
        if (!lattice.percolation_time(mask))
            throw DomainError("set does not percolate, minimality is undefined");
        for (auto bits = mask; bits; bits &= bits - 1)
            if (lattice.percolation_time(mask & ~(bits & -bits)))
                return false;
        return true;
    }

    if (!percolates(spec, set))
        throw DomainError("set does not percolate, minimality is undefined");
    for (auto v : set.indices()) {
        CellSet smaller = set;
        smaller.erase(v);
        if (percolates(spec, smaller))
            return false;
    }
    return true;
}

} // namespace bootperc
