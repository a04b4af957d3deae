#include "wonder/arrangement.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace wonder {

Subspace::Subspace(SetPartition sigma, bool in_h, bool diagonal_form)
    : sigma_(std::move(sigma)), in_h_(in_h), diagonal_form_(diagonal_form) {}

Subspace Subspace::polydiagonal(SetPartition sigma, bool in_h) {
    if (in_h && sigma.is_bottom())
        throw DomainError("Subspace: Delta^h_bottom is empty ([1:...:1] is not in H)");
    return Subspace(std::move(sigma), in_h, false);
}

Subspace Subspace::diagonal(int n, std::vector<int> subset, bool in_h) {
    if (subset.size() < 2)
        throw DomainError("Subspace::diagonal: need |S| >= 2");
    if (in_h && static_cast<int>(subset.size()) > n - 1)
        throw DomainError("Subspace::diagonal: need |S| <= n-1 inside H");
    auto sigma = SetPartition::from_merged_subset(n, std::move(subset));
    return Subspace(std::move(sigma), in_h, true);
}

int Subspace::codim(Ambient a) const {
    if (a == Ambient::Hyperplane && !in_h_)
        throw DomainError("codim: subspace does not lie in H");
    const int ambient_dim = (a == Ambient::Projective) ? n() - 1 : n() - 2;
    return ambient_dim - dim();
}

std::optional<std::vector<int>> Subspace::diagonal_subset() const {
    auto ns = sigma_.non_singleton_blocks();
    if (ns.size() == 1)
        return ns.front();
    return std::nullopt;
}

std::string Subspace::to_string() const {
    std::string prefix = in_h_ ? "D^h_" : "D_";
    return prefix + sigma_.to_string();
}

bool contains(const Subspace& outer, const Subspace& inner) {
    if (outer.n() != inner.n())
        throw DomainError("contains: ground sets differ");
    if (outer.in_h() && !inner.in_h())
        return false;
    return leq(inner.sigma(), outer.sigma());
}

namespace {

// Intersection without the same-ambient-flag requirement; used for closures
// of mixed catalogs.
std::optional<Subspace> intersect_any(const Subspace& a, const Subspace& b) {
    auto meet = common_coarsening(a.sigma(), b.sigma());
    const bool in_h = a.in_h() || b.in_h();
    if (in_h && meet.is_bottom())
        return std::nullopt;
    return Subspace::polydiagonal(std::move(meet), in_h);
}

struct SubspaceKeyHash {
    std::size_t operator()(const Subspace& s) const {
        return SetPartitionHash{}(s.sigma()) * 2 + (s.in_h() ? 1 : 0);
    }
};

std::vector<Subspace> close_under_intersection(const std::vector<Subspace>& members) {
    std::unordered_set<Subspace, SubspaceKeyHash> seen(members.begin(), members.end());
    std::vector<Subspace> work(members.begin(), members.end());
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            auto meet = intersect_any(work[i], work[j]);
            if (meet && !seen.count(*meet)) {
                seen.insert(*meet);
                work.push_back(*meet);
            }
        }
    }
    std::sort(work.begin(), work.end(), subspace_less);
    return work;
}

GFactors g_factors_unchecked(const Subspace& s, const Catalog& cat) {
    std::vector<Subspace> containing;
    for (const auto& m : cat.members)
        if (contains(m, s))
            containing.push_back(m);
    GFactors out;
    for (const auto& m : containing) {
        bool minimal = true;
        for (const auto& other : containing)
            if (other != m && contains(m, other)) {
                minimal = false;
                break;
            }
        if (minimal)
            out.factors.push_back(m);
    }
    std::sort(out.factors.begin(), out.factors.end(), subspace_less);
    int sum = 0;
    for (const auto& f : out.factors)
        sum += f.codim(cat.ambient);
    out.transversal = (sum == s.codim(cat.ambient));
    return out;
}

bool is_building_set_of(const std::vector<Subspace>& arrangement, const Catalog& cat) {
    for (const auto& s : arrangement)
        if (!g_factors_unchecked(s, cat).transversal)
            return false;
    return true;
}

} // namespace

std::optional<Subspace> intersect(const Subspace& a, const Subspace& b) {
    if (a.n() != b.n() || a.in_h() != b.in_h())
        throw DomainError("intersect: ambients differ");
    return intersect_any(a, b);
}

bool subspace_less(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim())
        return a.dim() < b.dim();
    if (a.sigma() != b.sigma())
        return canonical_less(a.sigma(), b.sigma());
    return a.in_h() < b.in_h();
}

Catalog make_catalog(int n, CatalogKind kind) {
    if (n < 2)
        throw DomainError("make_catalog: need n >= 2");
    Catalog cat;
    cat.n = n;
    cat.kind = kind;
    switch (kind) {
    case CatalogKind::DiagInf: {
        cat.ambient = Ambient::Hyperplane;
        // subsets S with 2 <= |S| <= n-1, by size then lexicographically
        std::vector<std::vector<int>> subsets;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i))
                    s.push_back(i + 1);
            if (s.size() >= 2 && static_cast<int>(s.size()) <= n - 1)
                subsets.push_back(std::move(s));
        }
        std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
        for (auto& s : subsets)
            cat.members.push_back(Subspace::diagonal(n, std::move(s), true));
        break;
    }
    case CatalogKind::PolyInf:
        cat.ambient = Ambient::Projective;
        for (const auto& sigma : enumerate_partitions(n))
            if (!sigma.is_bottom())
                cat.members.push_back(Subspace::polydiagonal(sigma, true));
        break;
    case CatalogKind::PolyOnly:
        cat.ambient = Ambient::Projective;
        for (const auto& sigma : enumerate_partitions(n))
            if (!sigma.is_top())
                cat.members.push_back(Subspace::polydiagonal(sigma, false));
        break;
    case CatalogKind::PolyUnionPolyInf: {
        cat.ambient = Ambient::Projective;
        for (const auto& sigma : enumerate_partitions(n)) {
            if (!sigma.is_top())
                cat.members.push_back(Subspace::polydiagonal(sigma, false));
            if (!sigma.is_bottom())
                cat.members.push_back(Subspace::polydiagonal(sigma, true));
        }
        break;
    }
    case CatalogKind::BottomPoint:
        cat.ambient = Ambient::Projective;
        cat.members.push_back(Subspace::polydiagonal(SetPartition::bottom(n), false));
        break;
    case CatalogKind::Custom:
        throw DomainError("make_catalog: use custom_catalog for Custom");
    }
    return cat;
}

Catalog wonderful_building_set(int n) {
    if (n < 2)
        throw DomainError("wonderful_building_set: need n >= 2");
    Catalog cat;
    cat.n = n;
    cat.kind = CatalogKind::Custom;
    cat.ambient = Ambient::Hyperplane;
    for (const auto& sigma : enumerate_partitions(n))
        if (!sigma.is_bottom() && !sigma.is_top())
            cat.members.push_back(Subspace::polydiagonal(sigma, true));
    return cat;
}

Catalog custom_catalog(int n, Ambient ambient, std::vector<Subspace> members) {
    Catalog cat;
    cat.n = n;
    cat.kind = CatalogKind::Custom;
    cat.ambient = ambient;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].n() != n)
            throw DomainError("custom_catalog: member ground set mismatch");
        if (ambient == Ambient::Hyperplane && !members[i].in_h())
            throw DomainError("custom_catalog: H-catalog member not inside H");
        for (std::size_t j = 0; j < i; ++j)
            if (members[i] == members[j])
                throw DomainError("custom_catalog: duplicate member");
    }
    cat.members = std::move(members);
    return cat;
}

std::vector<Subspace> induced_arrangement(const Catalog& cat) {
    return close_under_intersection(cat.members);
}

GFactors g_factors(const Subspace& s, const Catalog& cat) {
    auto arrangement = induced_arrangement(cat);
    if (std::find(arrangement.begin(), arrangement.end(), s) == arrangement.end())
        throw DomainError("g_factors: subspace not in the induced arrangement");
    return g_factors_unchecked(s, cat);
}

bool is_building_set(const Catalog& cat) {
    return is_building_set_of(induced_arrangement(cat), cat);
}

BlowupPlan blowup_plan(const Catalog& cat, PlanPolicy policy, std::vector<int> custom_order) {
    if (!is_building_set(cat))
        throw DomainError("blowup_plan: catalog is not a building set");
    const int count = static_cast<int>(cat.members.size());
    std::vector<int> order(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        order[static_cast<std::size_t>(i)] = i;
    auto by_subspace = [&](int a, int b) {
        return subspace_less(cat.members[static_cast<std::size_t>(a)],
                             cat.members[static_cast<std::size_t>(b)]);
    };
    switch (policy) {
    case PlanPolicy::IncreasingDim:
        std::sort(order.begin(), order.end(), by_subspace);
        break;
    case PlanPolicy::DiagThenEx: {
        auto is_diag = [&](int i) {
            return cat.members[static_cast<std::size_t>(i)].diagonal_subset().has_value();
        };
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (is_diag(a) != is_diag(b))
                return is_diag(a);
            return by_subspace(a, b);
        });
        break;
    }
    case PlanPolicy::Custom: {
        if (custom_order.size() != static_cast<std::size_t>(count))
            throw DomainError("blowup_plan: custom order has wrong length");
        std::vector<char> used(static_cast<std::size_t>(count), 0);
        for (int i : custom_order) {
            if (i < 0 || i >= count || used[static_cast<std::size_t>(i)])
                throw DomainError("blowup_plan: custom order is not a permutation");
            used[static_cast<std::size_t>(i)] = 1;
        }
        order = std::move(custom_order);
        break;
    }
    }
    BlowupPlan plan;
    plan.catalog = cat;
    plan.order = order;
    plan.prefix_valid.reserve(order.size());
    std::vector<Subspace> prefix;
    for (int idx : order) {
        prefix.push_back(cat.members[static_cast<std::size_t>(idx)]);
        Catalog sub = custom_catalog(cat.n, cat.ambient, prefix);
        plan.prefix_valid.push_back(is_building_set(sub));
    }
    return plan;
}

bool BettiTable::palindromic() const {
    for (std::size_t i = 0, j = ranks.size(); i < j--; ++i)
        if (ranks[i] != ranks[j])
            return false;
    return true;
}

std::string BettiTable::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(ranks[i]);
    }
    return out + ")";
}

BettiTable betti_blowup_oracle(const BlowupPlan& plan) {
    const Catalog& cat = plan.catalog;
    const int ambient_dim = (cat.ambient == Ambient::Projective) ? cat.n - 1 : cat.n - 2;
    BettiTable table;
    table.ranks.assign(static_cast<std::size_t>(ambient_dim) + 1, 1);

    // Dominant-transform bookkeeping: dims[k] is the dimension of center k's
    // transform so far.  A center contained in an earlier, strictly smaller
    // center becomes the preimage bundle (dimension grows by codim-1); after
    // that event its transform meets later centers only properly.
    const std::size_t count = plan.order.size();
    std::vector<int> dims(count);
    std::vector<char> grew(count, 0);
    for (std::size_t k = 0; k < count; ++k)
        dims[k] = cat.members[static_cast<std::size_t>(plan.order[k])].dim();

    for (std::size_t k = 0; k < count; ++k) {
        const Subspace& center = cat.members[static_cast<std::size_t>(plan.order[k])];
        const int d = dims[k];
        const int c = ambient_dim - d;
        if (c <= 1)
            continue; // divisorial center: blowup is an isomorphism
        if (d > 1)
            throw CapabilityError("betti_blowup_oracle: center " + center.to_string() +
                                  " has dimension " + std::to_string(d) +
                                  " at blowup time; only points and rational curves are supported");
        // Bl_Z X adds a copy of H^{*-2i}(Z) for i = 1..c-1; Z is a point or a
        // rational curve with graded ranks (1) or (1,1).
        for (int i = 1; i <= c - 1; ++i)
            table.ranks[static_cast<std::size_t>(i)] += 1;
        if (d == 1)
            for (int i = 1; i <= c - 1; ++i)
                table.ranks[static_cast<std::size_t>(i) + 1] += 1;
        for (std::size_t later = k + 1; later < count; ++later) {
            if (grew[later])
                continue;
            const Subspace& other = cat.members[static_cast<std::size_t>(plan.order[later])];
            if (other != center && contains(center, other)) {
                dims[later] += c - 1; // preimage is a P^{c-1}-bundle
                grew[later] = 1;
            }
        }
    }
    return table;
}

} // namespace wonder
