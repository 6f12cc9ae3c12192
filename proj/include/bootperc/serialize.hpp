#pragma once

#include "bootperc/cell_set.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/experiments.hpp"
#include "bootperc/extremal.hpp"
#include "bootperc/witness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace bootperc {

using Json = nlohmann::ordered_json;

/// [[v_1, ..., v_d], ...] in increasing index order.
Json cells_to_json(const CellSet& set);
/// Throws InputError on malformed input or cells outside `spec`.
CellSet cells_from_json(const LatticeSpec& spec, const Json& json);

/// One cell per line, d space-separated 1-based coordinates.
std::string cells_to_text(const CellSet& set);
/// Parses the text format. Blank lines and lines starting with '#' are
/// skipped. Throws InputError naming the offending line.
CellSet cells_from_text(const LatticeSpec& spec, std::string_view text);
CellSet read_cells_file(const LatticeSpec& spec, const std::string& path);

/// {d, n, topology, r, initial, T, percolates, times, perimeter_trace?, audit?}
/// where times is the flat row-major array with -1 for never.
Json to_json(const RunRecord& record);
RunRecord run_record_from_json(const Json& json);

/// {root, s, n, d, depth, nodes: [{label, t, children | null}]}
Json to_json(const WitnessDag& dag);
/// DOT digraph with one "u/t -> w/t" edge per line.
std::string to_dot(const WitnessDag& dag);

Json to_json(const SearchResult& result);

/// Rows plus fit. Runtimes are included only when `with_timing` is set so
/// that default output is reproducible byte for byte.
Json to_json(const SweepTable& table, bool with_timing = false);
/// Header d,construction,n,T,percolates,cells.
std::string to_csv(const SweepTable& table);

Json to_json(const StripFillReport& report);
Json to_json(const SeparationReport& report);

} // namespace bootperc
