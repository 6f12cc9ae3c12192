#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bootperc {

/// Linear cell index. Valid indices are in [0, n^d).
using CellIndex = std::uint32_t;

/// Largest number of cells a lattice may have.
inline constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 32;

enum class Topology { grid, torus };

std::string_view to_string(Topology topology);
/// Parses "grid" or "torus"; throws InputError otherwise.
Topology parse_topology(std::string_view text);

/// A lattice point with 1-based coordinates, (v_1, ..., v_d).
struct Cell {
    std::vector<int> coords;

    Cell() = default;
    explicit Cell(std::vector<int> c) : coords(std::move(c)) {}
    Cell(std::initializer_list<int> c) : coords(c) {}

    std::size_t dim() const noexcept { return coords.size(); }
    int operator[](std::size_t j) const { return coords[j]; }
    int& operator[](std::size_t j) { return coords[j]; }

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& cell);

/// Coordinate sum of a cell; the cell lies on level set V_k for k = level_of(cell).
int level_of(const Cell& cell);

/// Geometry and infection threshold of a d-dimensional grid [n]^d or torus.
///
/// Cells map to linear indices in row-major order with the first coordinate
/// most significant:
///
///     index(v) = sum_j (v_j - 1) * n^(d - j)      for j = 1..d
///
/// so (1,...,1) is index 0 and (n,...,n) is index n^d - 1.
///
/// Neighbours are always visited in the order: dimension 1..d, and within a
/// dimension the -1 step before the +1 step.
class LatticeSpec {
public:
    /// Throws InputError unless d >= 1, n >= 1, n^d <= 2^32, 1 <= r <= 2d and,
    /// for a torus, n >= 3. The threshold defaults to d.
    LatticeSpec(int d, int n, Topology topology = Topology::grid, std::optional<int> r = std::nullopt);

    int dim() const noexcept { return d_; }
    int side() const noexcept { return n_; }
    Topology topology() const noexcept { return topology_; }
    int threshold() const noexcept { return r_; }
    std::uint64_t cell_count() const noexcept { return cells_; }
    bool is_torus() const noexcept { return topology_ == Topology::torus; }

    /// Same cell universe and adjacency; the threshold may differ.
    bool same_geometry(const LatticeSpec& other) const noexcept
    {
        return d_ == other.d_ && n_ == other.n_ && topology_ == other.topology_;
    }

    LatticeSpec with_threshold(int r) const { return LatticeSpec(d_, n_, topology_, r); }

    bool contains(const Cell& cell) const noexcept;
    /// Throws InputError when the cell does not belong to this lattice.
    void validate(const Cell& cell) const;

    CellIndex index_of(const Cell& cell) const;
    Cell cell_at(CellIndex index) const;
    /// Writes the 1-based coordinates of `index` into `out` (size d).
    void decode(CellIndex index, std::span<int> out) const;
    /// 0-based coordinate of `index` along dimension `j` (0-based).
    int coord0(CellIndex index, int j) const noexcept
    {
        return static_cast<int>((index / strides_[j]) % static_cast<std::uint64_t>(n_));
    }
    std::uint64_t stride(int j) const noexcept { return strides_[j]; }

    std::vector<Cell> neighbors(const Cell& cell) const;
    int degree(CellIndex index) const noexcept;

    /// Calls f(neighbor_index) for every neighbour in the fixed order.
    template <typename F>
    void for_each_neighbor(CellIndex index, F&& f) const
    {
        const auto n = static_cast<std::uint64_t>(n_);
        for (int j = 0; j < d_; ++j) {
            const std::uint64_t stride = strides_[j];
            const auto x = (index / stride) % n;
            if (topology_ == Topology::grid) {
                if (x > 0)
                    f(static_cast<CellIndex>(index - stride));
                if (x + 1 < n)
                    f(static_cast<CellIndex>(index + stride));
            } else {
                f(static_cast<CellIndex>(x > 0 ? index - stride : index + (n - 1) * stride));
                f(static_cast<CellIndex>(x + 1 < n ? index + stride : index - (n - 1) * stride));
            }
        }
    }

    friend bool operator==(const LatticeSpec& a, const LatticeSpec& b) noexcept
    {
        return a.same_geometry(b) && a.r_ == b.r_;
    }

private:
    int d_;
    int n_;
    Topology topology_;
    int r_;
    std::uint64_t cells_;
    std::vector<std::uint64_t> strides_;
};

} // namespace bootperc
