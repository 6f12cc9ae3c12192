#pragma once

#include "bootperc/cell_set.hpp"

#include <string_view>

namespace bootperc {

/// V_k: all cells of the grid [n]^d with coordinate sum k. Empty when k lies
/// outside [d, dn]. Enumerates compositions directly, so the cost is
/// proportional to |V_k| rather than n^d.
CellSet level_set(int d, int n, long long k);

/// Union of the levels V_n, V_2n, ..., V_dn. Has exactly n^(d-1) cells and
/// percolates [n]^d under the d-neighbour rule.
CellSet hyperplane_union(int d, int n);

/// Union of the levels V_{in - floor(n/2)} for i = 1..d. No percolation
/// guarantee.
CellSet shifted_union(int d, int n);

enum class NamedSet { diagonal2d, boundary, torus3 };

std::string_view to_string(NamedSet name);
NamedSet parse_named_set(std::string_view text);

/// diagonal2d: {(i, i)} on [n]^2.
/// boundary:   every grid cell with a coordinate equal to 1 or n.
/// torus3:     hyperplane_union(3, n-1) placed in the [n-1]^3 corner of the
///             3-torus plus the seeds (1,1,n), (1,n,1), (n,1,1).
///
/// Throws InputError for diagonal2d with d != 2 and torus3 with d != 3 or n < 3.
CellSet named_set(NamedSet name, int n, int d);

/// Every construction available by name: "hyperplanes", "shifted",
/// "diagonal", "boundary", "torus3". Throws InputError on an unknown name.
CellSet construction_by_name(std::string_view name, int d, int n);

} // namespace bootperc
