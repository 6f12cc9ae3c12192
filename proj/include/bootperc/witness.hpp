#pragma once

#include "bootperc/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bootperc {

/// A strip of [n]^d between the seeded levels V_{(s-1)n} and V_{sn}.
/// The strip interior F_s is every level strictly between the two.
class StripContext {
public:
    /// Throws InputError unless d, n >= 1 and ceil(d/n) <= s <= d.
    StripContext(int d, int n, int s);

    int dim() const noexcept { return d_; }
    int side() const noexcept { return n_; }
    int strip() const noexcept { return s_; }
    long long lower_level() const noexcept { return static_cast<long long>(s_ - 1) * n_; }
    long long upper_level() const noexcept { return static_cast<long long>(s_) * n_; }
    LatticeSpec lattice() const { return LatticeSpec(d_, n_); }

    /// v lies strictly between the two seeded levels.
    bool in_interior(const Cell& v) const;
    /// v lies on one of the two seeded levels.
    bool on_boundary(const Cell& v) const;

private:
    int d_;
    int n_;
    int s_;
};

/// Level offset of v within the strip: its coordinate sum minus (s-1)n.
/// Throws InputError unless v lies in the strip or on its boundary levels.
int t_of(const Cell& v, const StripContext& ctx);

/// The d designated infectors of an interior cell v: v + e_j for every
/// coordinate with v_j <= t_v and v - e_j for every coordinate with
/// v_j > t_v, listed in coordinate order. Throws InputError for cells not
/// in the strip interior.
std::vector<Cell> pre_set(const Cell& v, const StripContext& ctx);

/// Sum of the coordinates of v that exceed C.
long long potential_L(const Cell& v, long long C);

/// Sum of the squared coordinates of v.
long long potential_h(const Cell& v);

/// Bound on the number of edges on any root-to-leaf path of a witness DAG.
long long witness_depth_bound(int d, int n);

struct WitnessNode {
    Cell label;
    int t;
    /// Node ids of Pre(label), in pre_set order; empty for leaves.
    std::vector<std::size_t> children;
    /// Longest path (in edges) from this node to a leaf.
    int height = 0;

    bool is_leaf() const noexcept { return children.empty(); }
};

/// Infection witness tree of a cell, stored with one node per distinct
/// label. The tree is the unfolding of this DAG. Node 0 is the root and the
/// remaining nodes appear in the order they were first reached.
class WitnessDag {
public:
    WitnessDag(StripContext ctx, std::vector<WitnessNode> nodes);

    const StripContext& context() const noexcept { return ctx_; }
    const Cell& root() const noexcept { return nodes_.front().label; }
    const std::vector<WitnessNode>& nodes() const noexcept { return nodes_; }
    int depth() const noexcept { return nodes_.front().height; }
    std::size_t edge_count() const noexcept;

    /// Node id carrying `label`, if any.
    std::optional<std::size_t> find(const Cell& label) const;

private:
    StripContext ctx_;
    std::vector<WitnessNode> nodes_;
};

/// Expands v breadth-first through pre_set until every open label lies on a
/// seeded level, sharing nodes between repeated labels, then computes
/// heights. Throws InputError if v is not in the strip interior, and
/// InvariantViolation naming the labels involved if a directed cycle is met.
WitnessDag build_witness(const Cell& v, const StripContext& ctx);

/// Result of checking the potential-function argument for acyclicity on
/// every edge of a DAG.
struct CertificateReport {
    /// Edges u -> w with |t_w - t_u| != 1 or a step direction that
    /// disagrees with the sign of t_w - t_u.
    std::uint64_t level_violations = 0;
    /// (edge, C) pairs with C >= max(t_u, t_w) where L_C(w) > L_C(u).
    std::uint64_t increase_violations = 0;
    /// Downward edges with t_u = C where L_C(w) is not strictly smaller.
    std::uint64_t strict_decrease_violations = 0;
    std::uint64_t edges_checked = 0;

    bool ok() const noexcept
    {
        return level_violations == 0 && increase_violations == 0 && strict_decrease_violations == 0;
    }
};

/// For every directed path with C = max t attained at its first vertex,
/// L_C never increases and strictly drops on a first downward step. Every
/// such path is a chain of edges whose endpoints have t <= C, so checking
/// each edge against every C in [max(t_u, t_w), n] covers all paths.
CertificateReport verify_certificate(const WitnessDag& dag);

} // namespace bootperc
