#pragma once

#include "bootperc/lattice.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace bootperc {

/// A set of cells of one lattice, stored as a bitset over linear indices.
///
/// Binary operations require both operands to share a geometry (d, n,
/// topology); the threshold carried by the spec is irrelevant to set
/// membership and is ignored.
class CellSet {
public:
    explicit CellSet(LatticeSpec spec);
    CellSet(LatticeSpec spec, std::span<const Cell> cells);
    CellSet(LatticeSpec spec, std::span<const CellIndex> indices);

    static CellSet full(LatticeSpec spec);

    const LatticeSpec& spec() const noexcept { return spec_; }
    std::uint64_t universe_size() const noexcept { return spec_.cell_count(); }

    bool contains(CellIndex index) const noexcept
    {
        return index < spec_.cell_count() && ((words_[index >> 6] >> (index & 63)) & 1U);
    }
    bool contains(const Cell& cell) const { return spec_.contains(cell) && contains(spec_.index_of(cell)); }

    void insert(CellIndex index);
    void insert(const Cell& cell) { insert(spec_.index_of(cell)); }
    void erase(CellIndex index);
    void erase(const Cell& cell) { erase(spec_.index_of(cell)); }

    std::uint64_t size() const noexcept;
    bool empty() const noexcept;
    bool is_full() const noexcept { return size() == spec_.cell_count(); }

    CellSet& operator|=(const CellSet& other);
    CellSet& operator-=(const CellSet& other);
    CellSet& operator&=(const CellSet& other);
    friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
    friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }
    friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }

    bool is_subset_of(const CellSet& other) const;

    /// Equal geometry and equal membership.
    friend bool operator==(const CellSet& a, const CellSet& b) noexcept
    {
        return a.spec_.same_geometry(b.spec_) && a.words_ == b.words_;
    }

    /// Calls f(index) for each member in increasing index order.
    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<CellIndex>((w << 6) + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<CellIndex> indices() const;
    /// Members in increasing index order, i.e. lexicographic coordinate order.
    std::vector<Cell> cells() const;

private:
    void require_same_geometry(const CellSet& other) const;

    LatticeSpec spec_;
    std::vector<std::uint64_t> words_;
};

} // namespace bootperc
