#include "bootperc/cell_set.hpp"

#include "bootperc/errors.hpp"

#include <algorithm>

namespace bootperc {

CellSet::CellSet(LatticeSpec spec) : spec_(std::move(spec)), words_((spec_.cell_count() + 63) / 64, 0) {}

CellSet::CellSet(LatticeSpec spec, std::span<const Cell> cells) : CellSet(std::move(spec))
{
    for (const auto& cell : cells)
        insert(cell);
}

CellSet::CellSet(LatticeSpec spec, std::span<const CellIndex> indices) : CellSet(std::move(spec))
{
    for (auto index : indices)
        insert(index);
}

CellSet CellSet::full(LatticeSpec spec)
{
    CellSet set(std::move(spec));
    std::fill(set.words_.begin(), set.words_.end(), ~std::uint64_t{0});
    if (const auto tail = set.spec_.cell_count() % 64)
        set.words_.back() = (std::uint64_t{1} << tail) - 1;
    return set;
}

void CellSet::insert(CellIndex index)
{
    if (index >= spec_.cell_count())
        throw InputError("cell index " + std::to_string(index) + " out of range");
    words_[index >> 6] |= std::uint64_t{1} << (index & 63);
}

void CellSet::erase(CellIndex index)
{
    if (index >= spec_.cell_count())
        throw InputError("cell index " + std::to_string(index) + " out of range");
    words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63));
}

std::uint64_t CellSet::size() const noexcept
{
    std::uint64_t total = 0;
    for (auto w : words_)
        total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

bool CellSet::empty() const noexcept
{
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

void CellSet::require_same_geometry(const CellSet& other) const
{
    if (!spec_.same_geometry(other.spec_))
        throw InputError("cell sets belong to different lattices");
}

CellSet& CellSet::operator|=(const CellSet& other)
{
    require_same_geometry(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] |= other.words_[w];
    return *this;
}

CellSet& CellSet::operator-=(const CellSet& other)
{
    require_same_geometry(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= ~other.words_[w];
    return *this;
}

CellSet& CellSet::operator&=(const CellSet& other)
{
    require_same_geometry(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= other.words_[w];
    return *this;
}

bool CellSet::is_subset_of(const CellSet& other) const
{
    require_same_geometry(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w])
            return false;
    return true;
}

std::vector<CellIndex> CellSet::indices() const
{
    std::vector<CellIndex> out;
    out.reserve(size());
    for_each([&](CellIndex i) { out.push_back(i); });
    return out;
}

std::vector<Cell> CellSet::cells() const
{
    std::vector<Cell> out;
    out.reserve(size());
    for_each([&](CellIndex i) { out.push_back(spec_.cell_at(i)); });
    return out;
}

} // namespace bootperc
