#include "bootperc/lattice.hpp"

#include "bootperc/errors.hpp"

#include <numeric>
#include <sstream>

namespace bootperc {

std::string_view to_string(Topology topology)
{
    return topology == Topology::grid ? "grid" : "torus";
}

Topology parse_topology(std::string_view text)
{
    if (text == "grid")
        return Topology::grid;
    if (text == "torus")
        return Topology::torus;
    throw InputError("unknown topology '" + std::string(text) + "' (expected grid or torus)");
}

std::string to_string(const Cell& cell)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t j = 0; j < cell.dim(); ++j)
        out << (j ? "," : "") << cell[j];
    out << ')';
    return out.str();
}

int level_of(const Cell& cell)
{
    return std::accumulate(cell.coords.begin(), cell.coords.end(), 0);
}

LatticeSpec::LatticeSpec(int d, int n, Topology topology, std::optional<int> r)
    : d_(d), n_(n), topology_(topology), r_(r.value_or(d)), cells_(1)
{
    if (d < 1)
        throw InputError("dimension d must be at least 1, got " + std::to_string(d));
    if (n < 1)
        throw InputError("side length n must be at least 1, got " + std::to_string(n));
    if (topology == Topology::torus && n < 3)
        throw InputError("torus requires n >= 3, got n = " + std::to_string(n));
    if (r_ < 1 || r_ > 2 * d)
        throw InputError("threshold r must lie in [1, 2d] = [1, " + std::to_string(2 * d) + "], got "
                         + std::to_string(r_));

    for (int j = 0; j < d; ++j) {
        cells_ *= static_cast<std::uint64_t>(n);
        if (cells_ > kMaxCells)
            throw InputError("lattice too large: " + std::to_string(n) + "^" + std::to_string(d)
                             + " exceeds 2^32 cells");
    }

    strides_.assign(d, 1);
    for (int j = d - 2; j >= 0; --j)
        strides_[j] = strides_[j + 1] * static_cast<std::uint64_t>(n);
}

bool LatticeSpec::contains(const Cell& cell) const noexcept
{
    if (cell.dim() != static_cast<std::size_t>(d_))
        return false;
    for (int x : cell.coords)
        if (x < 1 || x > n_)
            return false;
    return true;
}

void LatticeSpec::validate(const Cell& cell) const
{
    if (cell.dim() != static_cast<std::size_t>(d_))
        throw InputError("cell " + to_string(cell) + " has " + std::to_string(cell.dim())
                         + " coordinates, expected " + std::to_string(d_));
    if (!contains(cell))
        throw InputError("cell " + to_string(cell) + " has a coordinate outside [1, " + std::to_string(n_) + "]");
}

CellIndex LatticeSpec::index_of(const Cell& cell) const
{
    validate(cell);
    std::uint64_t index = 0;
    for (int j = 0; j < d_; ++j)
        index += static_cast<std::uint64_t>(cell[j] - 1) * strides_[j];
    return static_cast<CellIndex>(index);
}

void LatticeSpec::decode(CellIndex index, std::span<int> out) const
{
    for (int j = 0; j < d_; ++j)
        out[j] = coord0(index, j) + 1;
}

Cell LatticeSpec::cell_at(CellIndex index) const
{
    if (index >= cells_)
        throw InputError("cell index " + std::to_string(index) + " out of range");
    Cell cell{std::vector<int>(static_cast<std::size_t>(d_))};
    decode(index, cell.coords);
    return cell;
}

std::vector<Cell> LatticeSpec::neighbors(const Cell& cell) const
{
    const CellIndex index = index_of(cell);
    std::vector<Cell> result;
    result.reserve(2 * d_);
    for_each_neighbor(index, [&](CellIndex u) { result.push_back(cell_at(u)); });
    return result;
}

int LatticeSpec::degree(CellIndex index) const noexcept
{
    int deg = 0;
    for_each_neighbor(index, [&](CellIndex) { ++deg; });
    return deg;
}

} // namespace bootperc
