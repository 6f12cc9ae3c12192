#include "cli.hpp"

#include "bootperc/constructions.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/experiments.hpp"
#include "bootperc/extremal.hpp"
#include "bootperc/serialize.hpp"
#include "bootperc/witness.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <optional>
#include <ostream>

namespace bootperc::cli {

namespace {

enum class Format { json, csv, text };

// Parsed command line. r and topology are resolved against the command.
struct CliConfig {
    std::string command;
    int d = 0;
    int n = 0;
    std::optional<int> r;
    std::optional<std::string> topology;
    std::string construction;
    std::string initial_path;
    Format format = Format::json;
    bool audit = false;
    bool trace = false;
    bool expect_percolates = false;
    std::string snapshot;
    std::optional<std::uint64_t> budget;
    unsigned parallelism = 1;
    bool symmetry = false;
    bool timing = false;

    // witness
    int s = 0;
    std::string cell;
    // search
    std::optional<int> max_size;
    std::optional<int> size;
    // sweep
    std::vector<int> ns;
    int n_from = 0, n_to = 0, n_step = 1;
    // verify
    std::string check;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what)
{
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InputError(what + " must be a non-negative integer, got '" + text + "'");
    return value;
}

std::uint64_t search_budget(const CliConfig& cfg)
{
    if (cfg.budget)
        return *cfg.budget;
    if (const char* env = std::getenv("BOOTPERC_BUDGET"))
        return parse_u64(env, "BOOTPERC_BUDGET");
    return kDefaultSearchBudget;
}

LatticeSpec lattice_of(const CliConfig& cfg, Topology fallback = Topology::grid)
{
    const auto topology = cfg.topology ? parse_topology(*cfg.topology) : fallback;
    return LatticeSpec(cfg.d, cfg.n, topology, cfg.r);
}

Cell parse_cell(const std::string& text)
{
    Cell cell;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find(',', pos), text.size());
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
        if (ec != std::errc() || ptr != text.data() + end)
            throw InputError("malformed cell '" + text + "' (expected comma-separated integers)");
        cell.coords.push_back(value);
        pos = end + 1;
    }
    return cell;
}

int parse_snapshot_every(const std::string& text)
{
    constexpr std::string_view prefix = "every=";
    if (text.rfind(prefix, 0) != 0)
        throw InputError("--snapshot expects every=K, got '" + text + "'");
    const auto k = parse_u64(text.substr(prefix.size()), "snapshot interval");
    if (k == 0 || k > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw InputError("snapshot interval must be positive");
    return static_cast<int>(k);
}

void print_json(std::ostream& out, const Json& json)
{
    out << json.dump() << '\n' << std::flush;
}

int cmd_simulate(const CliConfig& cfg, std::ostream& out)
{
    const auto spec = lattice_of(cfg, cfg.construction == "torus3" ? Topology::torus : Topology::grid);
    const int snapshot_every = cfg.snapshot.empty() ? 0 : parse_snapshot_every(cfg.snapshot);
    if (cfg.construction.empty() && cfg.initial_path.empty())
        throw InputError("simulate needs --construction or --initial");

    const CellSet initial = cfg.initial_path.empty() ? construction_by_name(cfg.construction, cfg.d, cfg.n)
                                                     : read_cells_file(spec, cfg.initial_path);
    if (!spec.same_geometry(initial.spec()))
        throw InputError("construction '" + cfg.construction + "' does not live on a "
                         + std::string(to_string(spec.topology())));

    const auto record = run(spec, initial, {cfg.audit, cfg.trace});

    if (snapshot_every > 0) {
        int previous = -1;
        for (int step = 0;; step = std::min(step + snapshot_every, record.T)) {
            CellSet fresh(spec);
            for (std::size_t i = 0; i < record.times.size(); ++i)
                if (record.times[i] > previous && record.times[i] <= step)
                    fresh.insert(static_cast<CellIndex>(i));
            Json line;
            line["step"] = step;
            line["new"] = cells_to_json(fresh);
            print_json(out, line);
            previous = step;
            if (step == record.T)
                break;
        }
    }

    switch (cfg.format) {
    case Format::json:
        print_json(out, to_json(record));
        break;
    case Format::csv:
        out << "d,n,topology,r,T,percolates,initial,infected\n"
            << spec.dim() << ',' << spec.side() << ',' << to_string(spec.topology()) << ',' << spec.threshold() << ','
            << record.T << ',' << (record.percolates ? "true" : "false") << ',' << initial.size() << ','
            << record.closure().size() << '\n';
        break;
    case Format::text:
        out << "lattice: [" << spec.side() << "]^" << spec.dim() << ' ' << to_string(spec.topology())
            << ", r = " << spec.threshold() << '\n'
            << "initial: " << initial.size() << '\n'
            << "infected: " << record.closure().size() << " of " << spec.cell_count() << '\n'
            << "T: " << record.T << '\n'
            << "percolates: " << (record.percolates ? "true" : "false") << '\n';
        break;
    }

    if (cfg.expect_percolates && !record.percolates)
        return ExitCode::negative;
    return ExitCode::ok;
}

int cmd_construct(const CliConfig& cfg, std::ostream& out)
{
    const auto set = construction_by_name(cfg.construction, cfg.d, cfg.n);
    if (cfg.format == Format::text)
        out << cells_to_text(set);
    else if (cfg.format == Format::json)
        print_json(out, cells_to_json(set));
    else
        throw InputError("construct supports --format json or text");
    return ExitCode::ok;
}

int cmd_witness(const CliConfig& cfg, std::ostream& out)
{
    const StripContext ctx(cfg.d, cfg.n, cfg.s);
    const auto dag = build_witness(parse_cell(cfg.cell), ctx);
    if (cfg.format == Format::text)
        out << to_dot(dag);
    else if (cfg.format == Format::json)
        print_json(out, to_json(dag));
    else
        throw InputError("witness supports --format json or text");
    return ExitCode::ok;
}

int cmd_search(const CliConfig& cfg, std::ostream& out)
{
    const auto spec = lattice_of(cfg);
    const SearchOptions options{search_budget(cfg), cfg.symmetry, cfg.parallelism};
    SearchResult result = cfg.command == "search-min-set"
                              ? min_percolating_size(spec, cfg.max_size.value_or(static_cast<int>(std::min<std::uint64_t>(
                                                               spec.cell_count(), std::numeric_limits<int>::max()))),
                                                     options)
                              : [&] {
                                    std::uint64_t size = 1;
                                    for (int j = 1; j < cfg.d; ++j)
                                        size *= static_cast<std::uint64_t>(cfg.n);
                                    return min_percolation_time(spec, cfg.size.value_or(static_cast<int>(size)), options);
                                }();

    if (cfg.format == Format::text) {
        out << to_string(result.kind) << ": ";
        if (result.optimum)
            out << *result.optimum << '\n' << cells_to_text(result.witness);
        else
            out << "none up to size " << result.size << '\n';
    } else {
        print_json(out, to_json(result));
    }
    return result.optimum ? ExitCode::ok : ExitCode::negative;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out)
{
    std::vector<int> ns = cfg.ns;
    if (ns.empty()) {
        if (cfg.n_from < 1 || cfg.n_to < cfg.n_from || cfg.n_step < 1)
            throw InputError("sweep needs --ns or a valid --n-from/--n-to/--n-step range");
        for (int n = cfg.n_from; n <= cfg.n_to; n += cfg.n_step)
            ns.push_back(n);
    }
    SweepOptions options;
    options.parallelism = cfg.parallelism;
    const auto table = sweep_time(cfg.d, ns, cfg.construction.empty() ? "hyperplanes" : cfg.construction, options);
    if (cfg.format == Format::csv)
        out << to_csv(table);
    else
        print_json(out, to_json(table, cfg.timing));
    return table.bound_violations() == 0 ? ExitCode::ok : ExitCode::negative;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out)
{
    if (cfg.check == "strip-fill") {
        const auto report = strip_fill(cfg.d, cfg.n, cfg.s);
        print_json(out, to_json(report));
        return report.filled ? ExitCode::ok : ExitCode::negative;
    }
    if (cfg.check == "separation") {
        const auto report = separation(cfg.d, cfg.n);
        print_json(out, to_json(report));
        return report.separated() ? ExitCode::ok : ExitCode::negative;
    }

    const auto spec = lattice_of(cfg, cfg.construction == "torus3" ? Topology::torus : Topology::grid);
    const CellSet set = cfg.initial_path.empty()
                            ? construction_by_name(cfg.construction.empty() ? "hyperplanes" : cfg.construction, cfg.d, cfg.n)
                            : read_cells_file(spec, cfg.initial_path);
    if (cfg.check == "minimal") {
        const bool minimal = is_minimal(spec, set);
        print_json(out, {{"check", "minimal"}, {"d", cfg.d}, {"n", cfg.n}, {"size", set.size()}, {"minimal", minimal}});
        return minimal ? ExitCode::ok : ExitCode::negative;
    }
    if (cfg.check == "conservation") {
        const auto record = run(spec, set, {true, !spec.is_torus()});
        const auto report = check_conservation(record);
        print_json(out, {{"check", "conservation"},
                         {"d", cfg.d},
                         {"n", cfg.n},
                         {"percolates", record.percolates},
                         {"T", record.T},
                         {"adjacent_initial_pairs", report.adjacent_initial_pairs},
                         {"over_threshold_infections", report.over_threshold_infections},
                         {"same_step_adjacent_pairs", report.same_step_adjacent_pairs},
                         {"perimeter_changes", report.perimeter_changes}});
        return report.violations() == 0 ? ExitCode::ok : ExitCode::negative;
    }
    throw InputError("unknown check '" + cfg.check + "'");
}

void add_lattice_options(CLI::App* cmd, CliConfig& cfg, bool with_rule)
{
    cmd->add_option("--d", cfg.d, "Dimension")->required();
    cmd->add_option("--n", cfg.n, "Side length")->required();
    if (with_rule) {
        cmd->add_option("--r", cfg.r, "Infection threshold (default d)");
        cmd->add_option("--topology", cfg.topology, "grid or torus")->check(CLI::IsMember({"grid", "torus"}));
    }
}

void add_format(CLI::App* cmd, CliConfig& cfg)
{
    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
    cmd->add_option("--format", cfg.format, "json, csv or text")->transform(CLI::CheckedTransformer(formats));
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CliConfig cfg;
    CLI::App app{"d-neighbour bootstrap percolation toolkit", "bootperc"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Run the process from an initial set");
    add_lattice_options(simulate, cfg, true);
    auto* construction = simulate->add_option("--construction", cfg.construction,
                                              "hyperplanes, shifted, diagonal, boundary or torus3");
    auto* initial = simulate->add_option("--initial", cfg.initial_path, "Initial-set file, one cell per line");
    construction->excludes(initial);
    simulate->add_flag("--audit", cfg.audit, "Record the infected-neighbour count of every infection");
    simulate->add_flag("--trace", cfg.trace, "Record the perimeter after every step");
    simulate->add_flag("--expect-percolates", cfg.expect_percolates, "Exit 1 if the set does not percolate");
    simulate->add_option("--snapshot", cfg.snapshot, "every=K: emit newly infected cells every K steps");
    add_format(simulate, cfg);

    auto* construct = app.add_subcommand("construct", "Print a named initial set");
    add_lattice_options(construct, cfg, false);
    construct->add_option("--construction", cfg.construction, "hyperplanes, shifted, diagonal, boundary or torus3")
        ->required();
    add_format(construct, cfg);

    auto* witness = app.add_subcommand("witness", "Build the infection witness DAG of a cell");
    add_lattice_options(witness, cfg, false);
    witness->add_option("--s", cfg.s, "Strip index")->required();
    witness->add_option("--v", cfg.cell, "Root cell, e.g. 4,2,2")->required();
    add_format(witness, cfg);

    for (const char* name : {"search-min-set", "search-min-time"}) {
        auto* search = app.add_subcommand(name, std::string(name) == "search-min-set"
                                                    ? "Smallest percolating set by exhaustive search"
                                                    : "Fastest percolating set of a given size by exhaustive search");
        add_lattice_options(search, cfg, true);
        if (std::string(name) == "search-min-set")
            search->add_option("--max-size", cfg.max_size, "Largest subset size to try");
        else
            search->add_option("--size", cfg.size, "Subset size (default n^(d-1))");
        search->add_option("--budget", cfg.budget, "Maximum candidate subsets to enumerate");
        search->add_option("--parallelism", cfg.parallelism, "Worker threads")->check(CLI::PositiveNumber);
        search->add_flag("--symmetry", cfg.symmetry, "Skip subsets that are not least in their symmetry orbit");
        add_format(search, cfg);
    }

    auto* sweep = app.add_subcommand("sweep", "Percolation time of a construction across n");
    sweep->add_option("--d", cfg.d, "Dimension")->required();
    sweep->add_option("--construction", cfg.construction, "hyperplanes, shifted or boundary");
    sweep->add_option("--ns", cfg.ns, "Explicit side lengths")->delimiter(',');
    sweep->add_option("--n-from", cfg.n_from, "First side length");
    sweep->add_option("--n-to", cfg.n_to, "Last side length");
    sweep->add_option("--n-step", cfg.n_step, "Side length step");
    sweep->add_option("--parallelism", cfg.parallelism, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_flag("--timing", cfg.timing, "Include per-row runtimes in JSON output");
    add_format(sweep, cfg);

    auto* verify = app.add_subcommand("verify", "Run one of the structural checks");
    verify->add_option("--check", cfg.check, "strip-fill, separation, minimal or conservation")
        ->required()
        ->check(CLI::IsMember({"strip-fill", "separation", "minimal", "conservation"}));
    add_lattice_options(verify, cfg, true);
    verify->add_option("--s", cfg.s, "Strip index (strip-fill)");
    verify->add_option("--construction", cfg.construction, "Set to check (minimal, conservation)");
    verify->add_option("--initial", cfg.initial_path, "Initial-set file (minimal, conservation)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    }

    for (auto* sub : app.get_subcommands())
        cfg.command = sub->get_name();

    try {
        if (cfg.command == "simulate")
            return cmd_simulate(cfg, out);
        if (cfg.command == "construct")
            return cmd_construct(cfg, out);
        if (cfg.command == "witness")
            return cmd_witness(cfg, out);
        if (cfg.command == "search-min-set" || cfg.command == "search-min-time")
            return cmd_search(cfg, out);
        if (cfg.command == "sweep")
            return cmd_sweep(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const DomainError& e) {
        err << "result: " << e.what() << '\n';
        return ExitCode::negative;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "; sizes up to " << e.last_completed_size() << " fully refuted\n";
        return ExitCode::resource;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return ExitCode::internal;
    }
}

} // namespace bootperc::cli
