#include "bootperc/serialize.hpp"

#include "bootperc/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bootperc {

namespace {

Json cell_json(const Cell& cell)
{
    return Json(cell.coords);
}

Json cell_json(const LatticeSpec& spec, CellIndex v)
{
    return cell_json(spec.cell_at(v));
}

Cell cell_from_json(const Json& json)
{
    if (!json.is_array())
        throw InputError("cell must be a JSON array of integers, got " + json.dump());
    Cell cell;
    for (const auto& x : json) {
        if (!x.is_number_integer())
            throw InputError("cell coordinate must be an integer, got " + x.dump());
        cell.coords.push_back(x.get<int>());
    }
    return cell;
}

} // namespace

Json cells_to_json(const CellSet& set)
{
    Json out = Json::array();
    for (const auto& cell : set.cells())
        out.push_back(cell_json(cell));
    return out;
}

CellSet cells_from_json(const LatticeSpec& spec, const Json& json)
{
    if (!json.is_array())
        throw InputError("cell list must be a JSON array");
    CellSet set(spec);
    for (const auto& item : json)
        set.insert(cell_from_json(item));
    return set;
}

std::string cells_to_text(const CellSet& set)
{
    std::string out;
    for (const auto& cell : set.cells()) {
        for (std::size_t j = 0; j < cell.dim(); ++j) {
            if (j)
                out += ' ';
            out += std::to_string(cell[j]);
        }
        out += '\n';
    }
    return out;
}

CellSet cells_from_text(const LatticeSpec& spec, std::string_view text)
{
    CellSet set(spec);
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        Cell cell;
        std::size_t pos = 0;
        bool comment = false;
        while (pos < line.size()) {
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
                ++pos;
            if (pos == line.size())
                break;
            if (line[pos] == '#' && cell.coords.empty()) {
                comment = true;
                break;
            }
            int value = 0;
            const auto* first = line.data() + pos;
            const auto* last = line.data() + line.size();
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || (ptr != last && *ptr != ' ' && *ptr != '\t'))
                throw InputError("line " + std::to_string(line_no) + ": malformed coordinate in '" + std::string(line)
                                 + "'");
            cell.coords.push_back(value);
            pos = static_cast<std::size_t>(ptr - line.data());
        }
        if (comment || cell.coords.empty())
            continue;
        if (!spec.contains(cell))
            throw InputError("line " + std::to_string(line_no) + ": cell " + to_string(cell) + " is not in the lattice");
        set.insert(cell);
    }
    return set;
}

CellSet read_cells_file(const LatticeSpec& spec, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read initial-set file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return cells_from_text(spec, buffer.str());
}

Json to_json(const RunRecord& record)
{
    const auto& spec = record.spec;
    Json out;
    out["d"] = spec.dim();
    out["n"] = spec.side();
    out["topology"] = std::string(to_string(spec.topology()));
    out["r"] = spec.threshold();
    out["initial"] = cells_to_json(record.initial);
    out["T"] = record.T;
    out["percolates"] = record.percolates;
    out["times"] = record.times;
    if (record.perimeter_trace)
        out["perimeter_trace"] = *record.perimeter_trace;
    if (record.audit) {
        Json events = Json::array();
        for (const auto& e : *record.audit)
            events.push_back({{"cell", cell_json(spec, e.cell)}, {"step", e.step}, {"infected_neighbors", e.infected_neighbors}});
        out["audit"] = std::move(events);
    }
    return out;
}

RunRecord run_record_from_json(const Json& json)
{
    try {
        const LatticeSpec spec(json.at("d").get<int>(), json.at("n").get<int>(),
                               parse_topology(json.at("topology").get<std::string>()), json.at("r").get<int>());
        RunRecord record{spec, cells_from_json(spec, json.at("initial")), json.at("times").get<std::vector<std::int32_t>>(),
                         json.at("T").get<int>(), json.at("percolates").get<bool>(), {}, {}};
        if (record.times.size() != spec.cell_count())
            throw InputError("times array has " + std::to_string(record.times.size()) + " entries, expected "
                             + std::to_string(spec.cell_count()));
        if (json.contains("perimeter_trace"))
            record.perimeter_trace = json.at("perimeter_trace").get<std::vector<std::uint64_t>>();
        if (json.contains("audit")) {
            record.audit.emplace();
            for (const auto& e : json.at("audit"))
                record.audit->push_back({spec.index_of(cell_from_json(e.at("cell"))), e.at("step").get<int>(),
                                         e.at("infected_neighbors").get<int>()});
        }
        return record;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed run record: ") + e.what());
    }
}

Json to_json(const WitnessDag& dag)
{
    const auto& ctx = dag.context();
    Json out;
    out["root"] = cell_json(dag.root());
    out["s"] = ctx.strip();
    out["n"] = ctx.side();
    out["d"] = ctx.dim();
    out["depth"] = dag.depth();
    Json nodes = Json::array();
    for (const auto& node : dag.nodes()) {
        Json item;
        item["label"] = cell_json(node.label);
        item["t"] = node.t;
        if (node.is_leaf()) {
            item["children"] = nullptr;
        } else {
            Json children = Json::array();
            for (auto c : node.children)
                children.push_back(cell_json(dag.nodes()[c].label));
            item["children"] = std::move(children);
        }
        nodes.push_back(std::move(item));
    }
    out["nodes"] = std::move(nodes);
    return out;
}

std::string to_dot(const WitnessDag& dag)
{
    auto name = [](const WitnessNode& node) {
        std::string s = "\"";
        for (std::size_t j = 0; j < node.label.dim(); ++j)
            s += (j ? "," : "") + std::to_string(node.label[j]);
        return s + "/" + std::to_string(node.t) + "\"";
    };
    std::string out = "digraph IW {\n";
    for (const auto& node : dag.nodes()) {
        if (node.is_leaf())
            out += "  " + name(node) + " [shape=circle];\n";
        for (auto c : node.children)
            out += "  " + name(node) + " -> " + name(dag.nodes()[c]) + ";\n";
    }
    out += "}\n";
    return out;
}

Json to_json(const SearchResult& result)
{
    Json out;
    out["kind"] = std::string(to_string(result.kind));
    out["d"] = result.spec.dim();
    out["n"] = result.spec.side();
    out["topology"] = std::string(to_string(result.spec.topology()));
    out["r"] = result.spec.threshold();
    out["size"] = result.size;
    if (result.optimum)
        out["optimum"] = *result.optimum;
    else
        out["optimum"] = nullptr;
    out["witness"] = cells_to_json(result.witness);
    out["instances_examined"] = result.instances_examined;
    out["exhaustive"] = result.exhaustive;
    out["symmetry_pruned"] = result.symmetry_pruned;
    return out;
}

Json to_json(const SweepTable& table, bool with_timing)
{
    Json out;
    out["d"] = table.d;
    out["construction"] = table.construction;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json item;
        item["n"] = row.n;
        item["T"] = row.T;
        item["percolates"] = row.percolates;
        item["cells"] = row.cells;
        item["exceeds_bound"] = row.exceeds_bound;
        if (with_timing)
            item["runtime_ms"] = row.runtime_ms;
        rows.push_back(std::move(item));
    }
    out["rows"] = std::move(rows);
    if (table.fit) {
        out["fit"] = {{"a2", table.fit->a2}, {"a1", table.fit->a1}, {"a0", table.fit->a0},
                      {"residuals", table.fit->residuals}};
    } else {
        out["fit"] = nullptr;
    }
    return out;
}

std::string to_csv(const SweepTable& table)
{
    std::string out = "d,construction,n,T,percolates,cells\n";
    for (const auto& row : table.rows)
        out += std::to_string(table.d) + "," + table.construction + "," + std::to_string(row.n) + ","
               + std::to_string(row.T) + "," + (row.percolates ? "true" : "false") + "," + std::to_string(row.cells)
               + "\n";
    return out;
}

Json to_json(const StripFillReport& report)
{
    return {{"check", "strip-fill"}, {"d", report.d},         {"n", report.n},
            {"s", report.s},         {"filled", report.filled}, {"levels_checked", report.levels_checked},
            {"missing", report.missing}};
}

Json to_json(const SeparationReport& report)
{
    Json levels = Json::array();
    for (const auto& l : report.levels)
        levels.push_back({{"level", l.level}, {"size", l.size}, {"infected", l.infected}, {"interior", l.interior}});
    return {{"check", "separation"},
            {"d", report.d},
            {"n", report.n},
            {"j", report.j},
            {"separated", report.separated()},
            {"closure_is_full", report.closure_is_full},
            {"interior_levels_hold", report.interior_levels_hold},
            {"levels", std::move(levels)}};
}

} // namespace bootperc
