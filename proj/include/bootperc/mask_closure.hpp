#pragma once

#include "bootperc/lattice.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace bootperc {

/// Bit-parallel stepper for lattices of at most 64 cells, where a whole
/// configuration fits in one machine word (bit i is linear index i).
/// Used by the brute-force searches to test millions of candidate sets.
class MaskLattice {
public:
    static constexpr std::uint64_t kMaxCells = 64;

    /// Throws InputError if the lattice has more than 64 cells.
    explicit MaskLattice(const LatticeSpec& spec);

    const LatticeSpec& spec() const noexcept { return spec_; }
    std::uint64_t full_mask() const noexcept { return full_; }

    /// One synchronous step: the infected set after infecting every healthy
    /// cell with at least r infected neighbours.
    std::uint64_t step(std::uint64_t infected) const noexcept;

    /// Percolation time of `initial`, or nullopt as soon as the process
    /// stalls short of the full lattice.
    std::optional<int> percolation_time(std::uint64_t initial) const noexcept;

    std::uint64_t closure(std::uint64_t initial) const noexcept;

private:
    LatticeSpec spec_;
    std::uint64_t full_;
    std::array<std::uint64_t, kMaxCells> neighbors_{};
};

} // namespace bootperc
