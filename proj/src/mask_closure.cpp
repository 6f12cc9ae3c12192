#include "bootperc/mask_closure.hpp"

#include "bootperc/errors.hpp"

#include <bit>

namespace bootperc {

MaskLattice::MaskLattice(const LatticeSpec& spec) : spec_(spec)
{
    const auto cells = spec.cell_count();
    if (cells > kMaxCells)
        throw InputError("mask stepper supports at most 64 cells, lattice has " + std::to_string(cells));
    full_ = cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
    for (CellIndex v = 0; v < cells; ++v)
        spec.for_each_neighbor(v, [&](CellIndex w) { neighbors_[v] |= std::uint64_t{1} << w; });
}

std::uint64_t MaskLattice::step(std::uint64_t infected) const noexcept
{
    const int r = spec_.threshold();
    std::uint64_t next = infected;
    std::uint64_t healthy = full_ & ~infected;
    while (healthy) {
        const int v = std::countr_zero(healthy);
        healthy &= healthy - 1;
        if (std::popcount(neighbors_[v] & infected) >= r)
            next |= std::uint64_t{1} << v;
    }
    return next;
}

std::optional<int> MaskLattice::percolation_time(std::uint64_t initial) const noexcept
{
    std::uint64_t infected = initial & full_;
    int t = 0;
    while (infected != full_) {
        const auto next = step(infected);
        if (next == infected)
            return std::nullopt;
        infected = next;
        ++t;
    }
    return t;
}

std::uint64_t MaskLattice::closure(std::uint64_t initial) const noexcept
{
    std::uint64_t infected = initial & full_;
    for (;;) {
        const auto next = step(infected);
        if (next == infected)
            return infected;
        infected = next;
    }
}

} // namespace bootperc
