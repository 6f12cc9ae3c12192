#include "bootperc/witness.hpp"

#include "bootperc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

namespace bootperc {

StripContext::StripContext(int d, int n, int s) : d_(d), n_(n), s_(s)
{
    if (d < 1 || n < 1)
        throw InputError("strip context needs d >= 1 and n >= 1");
    const int lowest = (d + n - 1) / n;
    if (s < lowest || s > d)
        throw InputError("strip index s = " + std::to_string(s) + " outside [" + std::to_string(lowest) + ", "
                         + std::to_string(d) + "]");
}

bool StripContext::in_interior(const Cell& v) const
{
    if (!lattice().contains(v))
        return false;
    const long long k = level_of(v);
    return k > lower_level() && k < upper_level();
}

bool StripContext::on_boundary(const Cell& v) const
{
    if (!lattice().contains(v))
        return false;
    const long long k = level_of(v);
    return k == lower_level() || k == upper_level();
}

int t_of(const Cell& v, const StripContext& ctx)
{
    if (!ctx.in_interior(v) && !ctx.on_boundary(v))
        throw InputError("cell " + to_string(v) + " is not in strip " + std::to_string(ctx.strip()));
    return static_cast<int>(level_of(v) - ctx.lower_level());
}

std::vector<Cell> pre_set(const Cell& v, const StripContext& ctx)
{
    if (!ctx.in_interior(v))
        throw InputError("Pre is only defined inside the strip, got " + to_string(v));
    const int t = t_of(v, ctx);
    std::vector<Cell> out;
    out.reserve(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) {
        Cell u = v;
        u[j] += v[j] <= t ? 1 : -1;
        out.push_back(std::move(u));
    }
    return out;
}

long long potential_L(const Cell& v, long long C)
{
    long long total = 0;
    for (int x : v.coords)
        if (x >= C + 1)
            total += x;
    return total;
}

long long potential_h(const Cell& v)
{
    long long total = 0;
    for (int x : v.coords)
        total += static_cast<long long>(x) * x;
    return total;
}

long long witness_depth_bound(int d, int n)
{
    const auto nn = static_cast<long long>(n);
    return (d + 2) * nn * nn + nn;
}

WitnessDag::WitnessDag(StripContext ctx, std::vector<WitnessNode> nodes) : ctx_(ctx), nodes_(std::move(nodes))
{
    if (nodes_.empty())
        throw InputError("witness DAG needs a root");
}

std::size_t WitnessDag::edge_count() const noexcept
{
    std::size_t edges = 0;
    for (const auto& node : nodes_)
        edges += node.children.size();
    return edges;
}

std::optional<std::size_t> WitnessDag::find(const Cell& label) const
{
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].label == label)
            return i;
    return std::nullopt;
}

namespace {

// Longest path to a leaf for every node, by iterative depth-first search.
// A grey node reached again closes a directed cycle.
void compute_heights(std::vector<WitnessNode>& nodes)
{
    enum class Colour : std::uint8_t { white, grey, black };
    std::vector<Colour> colour(nodes.size(), Colour::white);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    stack.emplace_back(0, 0);
    colour[0] = Colour::grey;

    while (!stack.empty()) {
        auto& [id, next_child] = stack.back();
        auto& node = nodes[id];
        if (next_child < node.children.size()) {
            const auto child = node.children[next_child++];
            if (colour[child] == Colour::grey) {
                std::string cycle;
                auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == child; });
                for (; it != stack.end(); ++it)
                    cycle += to_string(nodes[it->first].label) + " -> ";
                cycle += to_string(nodes[child].label);
                throw InvariantViolation("witness construction found a directed cycle: " + cycle);
            }
            if (colour[child] == Colour::white) {
                colour[child] = Colour::grey;
                stack.emplace_back(child, 0);
            }
            continue;
        }
        int height = 0;
        for (auto child : node.children)
            height = std::max(height, nodes[child].height + 1);
        node.height = height;
        colour[id] = Colour::black;
        stack.pop_back();
    }
}

} // namespace

WitnessDag build_witness(const Cell& v, const StripContext& ctx)
{
    if (!ctx.in_interior(v))
        throw InputError("witness root " + to_string(v) + " is not inside strip " + std::to_string(ctx.strip()));

    const LatticeSpec lattice = ctx.lattice();
    std::vector<WitnessNode> nodes;
    std::unordered_map<CellIndex, std::size_t> ids;
    std::deque<std::size_t> active;

    auto intern = [&](const Cell& label) {
        const auto key = lattice.index_of(label);
        if (auto it = ids.find(key); it != ids.end())
            return it->second;
        const auto id = nodes.size();
        nodes.push_back({label, t_of(label, ctx), {}, 0});
        ids.emplace(key, id);
        active.push_back(id);
        return id;
    };

    intern(v);
    while (!active.empty()) {
        const auto id = active.front();
        active.pop_front();
        if (ctx.on_boundary(nodes[id].label))
            continue;
        std::vector<std::size_t> children;
        for (const auto& u : pre_set(nodes[id].label, ctx))
            children.push_back(intern(u));
        nodes[id].children = std::move(children);
    }

    compute_heights(nodes);
    return WitnessDag(ctx, std::move(nodes));
}

CertificateReport verify_certificate(const WitnessDag& dag)
{
    CertificateReport report;
    const int n = dag.context().side();
    const auto& nodes = dag.nodes();
    for (const auto& u : nodes) {
        for (auto child : u.children) {
            const auto& w = nodes[child];
            ++report.edges_checked;

            int moved = 0;
            int direction = 0;
            for (std::size_t j = 0; j < u.label.dim(); ++j) {
                if (u.label[j] != w.label[j]) {
                    ++moved;
                    direction = w.label[j] - u.label[j];
                }
            }
            if (moved != 1 || std::abs(direction) != 1 || w.t - u.t != direction) {
                ++report.level_violations;
                continue;
            }

            for (long long C = std::max(u.t, w.t); C <= n; ++C) {
                const auto before = potential_L(u.label, C);
                const auto after = potential_L(w.label, C);
                if (after > before)
                    ++report.increase_violations;
                if (direction < 0 && u.t == C && !(after < before))
                    ++report.strict_decrease_violations;
            }
        }
    }
    return report;
}

} // namespace bootperc
