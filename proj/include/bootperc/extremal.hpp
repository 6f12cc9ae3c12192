#pragma once

#include "bootperc/cell_set.hpp"
#include "bootperc/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bootperc {

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct SearchOptions {
    /// Maximum number of candidate subsets a search may enumerate.
    std::uint64_t budget = kDefaultSearchBudget;
    /// Only evaluate subsets that are colex-least in their orbit under the
    /// lattice symmetry group.
    bool symmetry_pruning = false;
    /// Worker threads; results do not depend on this.
    unsigned parallelism = 1;
};

enum class SearchKind { min_size, min_time };

std::string_view to_string(SearchKind kind);

/// Outcome of a brute-force extremal search.
///
/// Candidates are visited in colexicographic order of their sorted linear
/// indices, so the witness is the colex-least optimal set. Counting is
/// defined by that sequential order and is identical for any parallelism.
struct SearchResult {
    SearchKind kind;
    LatticeSpec spec;
    /// Least percolating size (min_size) or least percolation time (min_time);
    /// empty when a min_size search found nothing up to its size limit.
    std::optional<int> optimum;
    /// A set achieving the optimum; empty when there is none.
    CellSet witness;
    /// Candidates whose closure was evaluated.
    std::uint64_t instances_examined = 0;
    /// Every candidate that pruning did not exclude was examined.
    bool exhaustive = true;
    bool symmetry_pruned = false;
    /// Subset size searched (min_time) or the size limit (min_size).
    int size = 0;
};

/// Least k <= max_size such that some k-subset percolates. Throws
/// ResourceError before starting a subset size that would push the number of
/// enumerated candidates over the budget.
SearchResult min_percolating_size(const LatticeSpec& spec, int max_size, const SearchOptions& options = {});

/// Least T(A) over percolating sets A with |A| = size. Throws DomainError if
/// no set of that size percolates and ResourceError if C(n^d, size) exceeds
/// the budget.
SearchResult min_percolation_time(const LatticeSpec& spec, int size, const SearchOptions& options = {});

/// True iff `set` percolates but no set obtained by deleting one member
/// does. By monotonicity this means no proper subset percolates. Throws
/// DomainError if `set` does not percolate.
bool is_minimal(const LatticeSpec& spec, const CellSet& set);

/// Automorphisms of the lattice used for pruning, each a permutation of
/// linear indices. Grid: coordinate permutations and reflections x -> n+1-x.
/// Torus: those composed with all translations. The identity comes first.
std::vector<std::vector<CellIndex>> symmetry_group(const LatticeSpec& spec);

/// C(n, k), saturating at the largest uint64 value.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

} // namespace bootperc
