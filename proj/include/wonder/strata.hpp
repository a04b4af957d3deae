#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wonder/partition.hpp"

namespace wonder {

/// B: multiscale differentials with a double pole at the extra marked point.
/// A: multiscale lines with the extra marked point p_infinity.
enum class Space { B, A };

/// A boundary stratum as a strictly increasing chain of partitions, coarsest
/// first (the empty chain is the open stratum).  Codimension = chain length.
/// Space B draws members from L_n minus {bottom, top}; space A allows top,
/// which can only sit last.
struct ChainStratum {
    Space space = Space::B;
    int n = 0;
    std::vector<SetPartition> chain;

    int codim() const { return static_cast<int>(chain.size()); }
    std::string to_string() const; // "123|45<12|3|45", "" for the open stratum
};

ChainStratum make_stratum(Space space, int n, std::vector<SetPartition> chain);
ChainStratum parse_chain(Space space, const std::string& text, int n = 0);

inline constexpr int kDefaultMaxStrataN = 7;

/// Every stratum, graded by codimension then lexicographic in enumeration
/// indices; includes the open stratum.
std::vector<ChainStratum> strata_enumerate(Space space, int n,
                                           int max_n = kDefaultMaxStrataN);

/// Dual stable rooted level tree of a stratum.  Levels run 0 (root) down to
/// -depth.  A vertex exists at level -l for a non-singleton block of the l-th
/// chain member unless the block persists to the next member (then the vertex
/// sits deeper and its parent edge skips levels).  In space A a chain ending
/// with top gets one bottom vertex per element, matching the picture of the
/// divisor isomorphic to the B-space.
struct LevelTree {
    struct Vertex {
        std::vector<int> block; // marks of the subtree below this component
        int level = 0;          // -1 .. -depth
        int parent = -1;        // vertex index, or -1 for the root
    };

    Space space = Space::B;
    int n = 0;
    int depth = 0;
    std::vector<Vertex> vertices;  // sorted by (level, block)
    std::vector<int> mark_vertex;  // 1-based marks -> vertex index, -1 = root

    int mark_of_root_count() const;
    std::vector<int> children_of(int vertex) const; // vertex -1 = root
    /// marks + children + (parent edge | distinguished root mark)
    int special_points(int vertex) const;
};

/// Builds and validates the tree (throws InternalError on a stability
/// violation, which valid chains can never trigger).
LevelTree tree_from_chain(const ChainStratum& stratum);
ChainStratum chain_from_tree(const LevelTree& tree);

/// Divisor <-> two-level tree bijection.
SetPartition sigma_of_two_level(const LevelTree& tree);
LevelTree partition_to_tree(const SetPartition& sigma, Space space);

/// The 2-chain stratum spanned by two distinct comparable divisor labels;
/// empty when the divisors are disjoint (incomparable labels).
std::optional<ChainStratum> divisor_intersection(const SetPartition& a,
                                                 const SetPartition& b, Space space);

/// Strict exceptional-divisor order: both labels in Ex_n and a strictly
/// coarser than b.
bool exceptional_lt(const SetPartition& a, const SetPartition& b);

/// True iff the sequence has no inversion under exceptional_lt, i.e. it is a
/// linear extension and hence a valid blowdown order.
bool is_valid_blowdown_order(const std::vector<SetPartition>& order);

/// The chain of rational curves over a point of a B-stratum: one generic
/// component plus one per level passage.
struct FiberChain {
    std::vector<int> passages; // 0 = generic, then 1..codim

    std::size_t length() const { return passages.size(); }
};

FiberChain chow_fiber_model(const ChainStratum& stratum);

/// Chart weights and linearization data of the scaling action.
struct CstarReport {
    int n = 0;
    std::vector<std::pair<std::string, int>> chart_weights;   // t, z_13..z_1n
    std::vector<std::pair<std::string, int>> linearization;   // x_1+...+x_n, x_1-x_j
    std::string semistable_locus;
};

CstarReport cstar_report(int n);

/// Deterministic DOT rendering: levels as ranks, marks as leaf decorations.
std::string tree_to_dot(const LevelTree& tree);

} // namespace wonder
