#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wonder/partition.hpp"

namespace wonder {

/// Which projective space a catalog's codimensions are measured in:
/// P^{n-1} itself, or its hyperplane slice H: x_1 + ... + x_n = 0.
enum class Ambient { Projective, Hyperplane };

/// A polydiagonal Delta_sigma of P^{n-1}, or its slice Delta^h_sigma by H.
/// Diagonals Delta_S are the polydiagonals whose index partition has a single
/// non-singleton block; `diagonal_form` only records how the subspace was
/// built (it never affects equality or the math).
class Subspace {
public:
    static Subspace polydiagonal(SetPartition sigma, bool in_h);
    static Subspace diagonal(int n, std::vector<int> subset, bool in_h);

    const SetPartition& sigma() const { return sigma_; }
    int n() const { return sigma_.n(); }
    bool in_h() const { return in_h_; }
    Ambient ambient() const { return in_h_ ? Ambient::Hyperplane : Ambient::Projective; }
    bool diagonal_form() const { return diagonal_form_; }

    /// Projective dimension: #blocks - 1, minus 1 more inside H.
    int dim() const { return sigma_.block_count() - 1 - (in_h_ ? 1 : 0); }
    /// Codimension inside the given ambient space.
    int codim(Ambient a) const;

    /// The single non-singleton block, when there is exactly one.
    std::optional<std::vector<int>> diagonal_subset() const;

    std::string to_string() const;

    bool operator==(const Subspace& o) const {
        return in_h_ == o.in_h_ && sigma_ == o.sigma_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    Subspace(SetPartition sigma, bool in_h, bool diagonal_form);
    SetPartition sigma_;
    bool in_h_ = false;
    bool diagonal_form_ = false;
};

/// s is contained in t (same picture inside P^{n-1}; the H-constraint only
/// shrinks).  Equivalent to leq on index partitions plus flag implication.
bool contains(const Subspace& outer, const Subspace& inner);

/// Intersection of two subspaces with the same ambient flag; empty when the
/// result would be Delta^h_bottom (the point [1:...:1] misses H).
std::optional<Subspace> intersect(const Subspace& a, const Subspace& b);

/// Deterministic order: dim ascending, then index partition, then flag.
bool subspace_less(const Subspace& a, const Subspace& b);

enum class CatalogKind { DiagInf, PolyInf, PolyOnly, PolyUnionPolyInf, BottomPoint, Custom };

/// One of the paper-table subspace families (or a custom list), together with
/// the ambient space its blowups live in.
struct Catalog {
    int n = 0;
    CatalogKind kind = CatalogKind::Custom;
    Ambient ambient = Ambient::Projective;
    std::vector<Subspace> members;

    std::size_t size() const { return members.size(); }
};

/// The four table catalogs.  DiagInf lives in H; the others in P^{n-1}.
Catalog make_catalog(int n, CatalogKind kind);

/// PolyInf minus the top slice Delta^h_top, in ambient H: the building set
/// whose wonderful model is Y_n.  Returned with kind Custom.
Catalog wonderful_building_set(int n);

Catalog custom_catalog(int n, Ambient ambient, std::vector<Subspace> members);

/// All nonempty intersections of nonempty subfamilies, in subspace order.
std::vector<Subspace> induced_arrangement(const Catalog& cat);

struct GFactors {
    std::vector<Subspace> factors; // minimal members containing s
    bool transversal = false;      // codimensions sum to codim(s)
};

/// Minimal members of cat containing s; s must lie in the induced arrangement.
GFactors g_factors(const Subspace& s, const Catalog& cat);

/// True iff every induced-arrangement element factors transversally.
bool is_building_set(const Catalog& cat);

enum class PlanPolicy { IncreasingDim, DiagThenEx, Custom };

struct BlowupPlan {
    Catalog catalog;
    std::vector<int> order;        // permutation of member indices
    std::vector<bool> prefix_valid; // [i]: first i+1 centers form a building set
};

BlowupPlan blowup_plan(const Catalog& cat, PlanPolicy policy,
                       std::vector<int> custom_order = {});

/// Graded ranks of the even cohomology, index k = 0..dim.
struct BettiTable {
    std::vector<long long> ranks;

    bool palindromic() const;
    bool operator==(const BettiTable& o) const { return ranks == o.ranks; }
    std::string to_string() const;
};

/// Accounts the plan's blowups starting from the ambient projective space.
/// Supports centers that are (at their blowup time) divisorial, points, or
/// rational curves; refuses anything else, naming the offending center.
BettiTable betti_blowup_oracle(const BlowupPlan& plan);

} // namespace wonder
