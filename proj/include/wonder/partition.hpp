#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wonder/errors.hpp"

namespace wonder {

/// A partition of {1,...,n} into disjoint nonempty blocks, stored canonically:
/// each block ascending, blocks ordered by their minimum element.
///
/// The lattice order used throughout follows the convention
///   a <= b  iff  every block of b is contained in a block of a,
/// so the one-block partition is the minimum (bottom) and the all-singletons
/// partition is the maximum (top).  Coarser partitions sit lower.  The rank
/// n - #blocks is order-reversing along <= and equals the codimension of the
/// associated polydiagonal.
class SetPartition {
public:
    SetPartition() = default;

    /// Canonicalizes and validates: blocks must be disjoint, nonempty and
    /// cover {1,...,n}.
    static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);

    /// One block {1,...,n}.
    static SetPartition bottom(int n);
    /// n singleton blocks.
    static SetPartition top(int n);
    /// Single non-singleton block `merged`, all other elements singletons.
    static SetPartition from_merged_subset(int n, std::vector<int> merged);

    /// Parses the text form: blocks joined by '|', elements as decimal digits,
    /// or comma-separated inside blocks for n >= 10 (e.g. "124|58|36|7|9").
    static SetPartition parse(const std::string& text);

    int n() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    /// n - #blocks: 0 for top, n-1 for bottom.
    int rank() const { return n_ - block_count(); }

    bool is_bottom() const { return block_count() == 1; }
    bool is_top() const { return block_count() == n_; }

    /// Index (into blocks()) of the block containing element i (1-based).
    int block_of(int i) const;
    bool same_block(int i, int j) const { return block_of(i) == block_of(j); }

    std::vector<std::vector<int>> non_singleton_blocks() const;
    /// At least two blocks of size >= 2.
    bool in_ex() const;

    std::string to_string() const;

    bool operator==(const SetPartition& other) const {
        return n_ == other.n_ && blocks_ == other.blocks_;
    }
    bool operator!=(const SetPartition& other) const { return !(*this == other); }

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_; // 1-based element -> block index

    void rebuild_index();
};

/// Lattice order: true iff every block of b is a subset of a block of a
/// (b refines a; a is the coarser one).
bool leq(const SetPartition& a, const SetPartition& b);

bool comparable(const SetPartition& a, const SetPartition& b);

/// Transitive closure of the union of the two equivalence relations; this is
/// the meet of {a, b} under leq (the finest common coarsening).
SetPartition common_coarsening(const SetPartition& a, const SetPartition& b);

/// Fixed enumeration order: graded by block count (coarsest first), then by
/// canonical-lexicographic comparison of the block lists.  This is a linear
/// extension of leq.
bool canonical_less(const SetPartition& a, const SetPartition& b);

inline constexpr int kDefaultMaxPartitionN = 9;

/// All of L_n in the canonical order above; length Bell(n).
std::vector<SetPartition> enumerate_partitions(int n, int max_n = kDefaultMaxPartitionN);

/// Partitions with at least two non-singleton blocks, in enumeration order.
std::vector<SetPartition> enumerate_ex(int n, int max_n = kDefaultMaxPartitionN);

struct SetPartitionHash {
    std::size_t operator()(const SetPartition& p) const;
};

} // namespace wonder
