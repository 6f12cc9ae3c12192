#include "bootperc/constructions.hpp"

#include "bootperc/errors.hpp"

#include <algorithm>
#include <string>

namespace bootperc {

namespace {

// Appends every cell of [n]^d with coordinate sum k whose first `fixed`
// coordinates are already set in `coords`.
void enumerate_level(const LatticeSpec& spec, std::vector<int>& coords, int fixed, long long remaining, CellSet& out)
{
    const int d = spec.dim();
    const int n = spec.side();
    const int left = d - fixed - 1;
    if (left < 0) {
        std::uint64_t index = 0;
        for (int j = 0; j < d; ++j)
            index += static_cast<std::uint64_t>(coords[j] - 1) * spec.stride(j);
        out.insert(static_cast<CellIndex>(index));
        return;
    }
    // After this coordinate, `left` coordinates must absorb the rest, each in [1, n].
    const long long lo = std::max<long long>(1, remaining - static_cast<long long>(left) * n);
    const long long hi = std::min<long long>(n, remaining - left);
    for (long long x = lo; x <= hi; ++x) {
        coords[fixed] = static_cast<int>(x);
        enumerate_level(spec, coords, fixed + 1, remaining - x, out);
    }
}

void add_level(CellSet& out, long long k)
{
    const auto& spec = out.spec();
    if (k < spec.dim() || k > static_cast<long long>(spec.dim()) * spec.side())
        return;
    std::vector<int> coords(spec.dim());
    enumerate_level(spec, coords, 0, k, out);
}

} // namespace

CellSet level_set(int d, int n, long long k)
{
    CellSet out{LatticeSpec(d, n)};
    add_level(out, k);
    return out;
}

CellSet hyperplane_union(int d, int n)
{
    CellSet out{LatticeSpec(d, n)};
    for (int i = 1; i <= d; ++i)
        add_level(out, static_cast<long long>(i) * n);
    return out;
}

CellSet shifted_union(int d, int n)
{
    CellSet out{LatticeSpec(d, n)};
    for (int i = 1; i <= d; ++i)
        add_level(out, static_cast<long long>(i) * n - n / 2);
    return out;
}

std::string_view to_string(NamedSet name)
{
    switch (name) {
    case NamedSet::diagonal2d:
        return "diagonal";
    case NamedSet::boundary:
        return "boundary";
    case NamedSet::torus3:
        return "torus3";
    }
    return "?";
}

NamedSet parse_named_set(std::string_view text)
{
    if (text == "diagonal" || text == "diagonal2d")
        return NamedSet::diagonal2d;
    if (text == "boundary")
        return NamedSet::boundary;
    if (text == "torus3")
        return NamedSet::torus3;
    throw InputError("unknown named set '" + std::string(text) + "'");
}

CellSet named_set(NamedSet name, int n, int d)
{
    switch (name) {
    case NamedSet::diagonal2d: {
        if (d != 2)
            throw InputError("diagonal2d requires d = 2");
        CellSet out{LatticeSpec(2, n)};
        for (int i = 1; i <= n; ++i)
            out.insert(Cell{i, i});
        return out;
    }
    case NamedSet::boundary: {
        LatticeSpec spec(d, n);
        CellSet out(spec);
        for (std::uint64_t i = 0; i < spec.cell_count(); ++i) {
            const auto v = static_cast<CellIndex>(i);
            for (int j = 0; j < d; ++j) {
                const int x = spec.coord0(v, j);
                if (x == 0 || x == n - 1) {
                    out.insert(v);
                    break;
                }
            }
        }
        return out;
    }
    case NamedSet::torus3: {
        if (d != 3)
            throw InputError("torus3 requires d = 3");
        if (n < 3)
            throw InputError("torus3 requires n >= 3");
        CellSet out{LatticeSpec(3, n, Topology::torus)};
        for (const auto& cell : hyperplane_union(3, n - 1).cells())
            out.insert(cell);
        out.insert(Cell{1, 1, n});
        out.insert(Cell{1, n, 1});
        out.insert(Cell{n, 1, 1});
        return out;
    }
    }
    throw InputError("unknown named set");
}

CellSet construction_by_name(std::string_view name, int d, int n)
{
    if (name == "hyperplanes")
        return hyperplane_union(d, n);
    if (name == "shifted")
        return shifted_union(d, n);
    return named_set(parse_named_set(name), n, d);
}

} // namespace bootperc
