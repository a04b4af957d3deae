#include "wonder/strata.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wonder {

namespace {

void validate_member(Space space, const SetPartition& sigma, bool is_last) {
    if (sigma.is_bottom())
        throw DomainError("stratum: the bottom partition labels no boundary stratum");
    if (space == Space::B && sigma.is_top())
        throw DomainError("stratum: top is not a divisor label in space B");
    if (space == Space::A && sigma.is_top() && !is_last)
        throw DomainError("stratum: top can only close a chain");
}

} // namespace

std::string ChainStratum::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i)
            out += '<';
        out += chain[i].to_string();
    }
    return out;
}

ChainStratum make_stratum(Space space, int n, std::vector<SetPartition> chain) {
    if (n < 2)
        throw DomainError("make_stratum: need n >= 2");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i].n() != n)
            throw DomainError("make_stratum: ground set mismatch");
        validate_member(space, chain[i], i + 1 == chain.size());
        if (i > 0 && !(leq(chain[i - 1], chain[i]) && chain[i - 1] != chain[i]))
            throw DomainError("make_stratum: chain not strictly increasing");
    }
    return ChainStratum{space, n, std::move(chain)};
}

ChainStratum parse_chain(Space space, const std::string& text, int n) {
    std::vector<SetPartition> chain;
    if (!text.empty()) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t lt = text.find('<', pos);
            std::string piece =
                text.substr(pos, lt == std::string::npos ? std::string::npos : lt - pos);
            chain.push_back(SetPartition::parse(piece));
            if (lt == std::string::npos)
                break;
            pos = lt + 1;
        }
    }
    if (chain.empty()) {
        if (n < 2)
            throw DomainError("parse_chain: open stratum needs an explicit n");
        return make_stratum(space, n, {});
    }
    int inferred = chain.front().n();
    if (n != 0 && n != inferred)
        throw DomainError("parse_chain: n does not match the chain members");
    return make_stratum(space, inferred, std::move(chain));
}

std::vector<ChainStratum> strata_enumerate(Space space, int n, int max_n) {
    if (n < 2)
        throw DomainError("strata_enumerate: need n >= 2");
    if (n > max_n)
        throw CapacityError("strata_enumerate: n exceeds the configured limit " +
                            std::to_string(max_n));
    std::vector<SetPartition> ground;
    for (const auto& sigma : enumerate_partitions(n)) {
        if (sigma.is_bottom())
            continue;
        if (space == Space::B && sigma.is_top())
            continue;
        ground.push_back(sigma);
    }
    std::vector<ChainStratum> out;
    std::vector<SetPartition> chain;
    // Ground order is a linear extension of leq, so extending with later
    // comparable elements enumerates every strict chain exactly once.
    auto rec = [&](auto&& self, std::size_t start) -> void {
        out.push_back(ChainStratum{space, n, chain});
        for (std::size_t i = start; i < ground.size(); ++i) {
            if (!chain.empty() &&
                !(leq(chain.back(), ground[i]) && chain.back() != ground[i]))
                continue;
            chain.push_back(ground[i]);
            self(self, i + 1);
            chain.pop_back();
        }
    };
    rec(rec, 0);
    std::stable_sort(out.begin(), out.end(), [](const ChainStratum& a, const ChainStratum& b) {
        return a.chain.size() < b.chain.size();
    });
    return out;
}

int LevelTree::mark_of_root_count() const {
    int count = 0;
    for (int v : mark_vertex)
        if (v == -1)
            ++count;
    return count;
}

std::vector<int> LevelTree::children_of(int vertex) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].parent == vertex)
            out.push_back(static_cast<int>(i));
    return out;
}

int LevelTree::special_points(int vertex) const {
    int marks = 0;
    for (int v : mark_vertex)
        if (v == vertex)
            ++marks;
    int children = static_cast<int>(children_of(vertex).size());
    // non-root: parent edge; root: the distinguished mark (p_{n+1} or p_inf)
    return marks + children + 1;
}

namespace {

void validate_stability(const LevelTree& t) {
    const int min_special = (t.space == Space::B) ? 3 : 2;
    if (t.special_points(-1) < min_special)
        throw InternalError("level tree: root has too few special points");
    for (std::size_t i = 0; i < t.vertices.size(); ++i)
        if (t.special_points(static_cast<int>(i)) < min_special)
            throw InternalError("level tree: vertex " + std::to_string(i) +
                                " has too few special points");
    if (t.space == Space::A && t.depth > 0) {
        // A chain closed by the all-singletons partition shows up as an
        // all-singleton bottom level; marks must then sit exactly there.
        bool top_closed = true;
        for (const auto& v : t.vertices)
            if (v.level == -t.depth && v.block.size() > 1)
                top_closed = false;
        if (top_closed) {
            for (int i = 1; i <= t.n; ++i) {
                int v = t.mark_vertex[static_cast<std::size_t>(i - 1)];
                if (v == -1 || t.vertices[static_cast<std::size_t>(v)].level != -t.depth)
                    throw InternalError("level tree: mark off the bottom level in a top-closed chain");
            }
        }
    }
}

} // namespace

LevelTree tree_from_chain(const ChainStratum& stratum) {
    const int L = stratum.codim();
    LevelTree t;
    t.space = stratum.space;
    t.n = stratum.n;
    t.depth = L;
    const bool top_last = L > 0 && stratum.chain.back().is_top();

    // Vertex for block B of sigma_l at level -l iff B does not persist into
    // sigma_{l+1}; singleton blocks only materialize on the top-closed bottom
    // level of an A-chain.
    for (int l = 1; l <= L; ++l) {
        const SetPartition& sigma = stratum.chain[static_cast<std::size_t>(l - 1)];
        for (const auto& block : sigma.blocks()) {
            bool persists = false;
            if (l < L) {
                const SetPartition& next = stratum.chain[static_cast<std::size_t>(l)];
                const auto& nb = next.blocks()[static_cast<std::size_t>(next.block_of(block.front()))];
                persists = (nb == block);
            }
            const bool singleton_ok =
                stratum.space == Space::A && l == L && top_last;
            if (block.size() < 2 && !singleton_ok)
                continue;
            if (persists)
                continue;
            LevelTree::Vertex v;
            v.block = block;
            v.level = -l;
            t.vertices.push_back(std::move(v));
        }
    }
    std::sort(t.vertices.begin(), t.vertices.end(), [](const auto& a, const auto& b) {
        if (a.level != b.level)
            return a.level > b.level; // shallow first
        return a.block < b.block;
    });

    // Parent of (B, -l): the vertex of the smallest strictly larger block at a
    // shallower level, or the root when B is already a block of sigma_1.
    for (auto& v : t.vertices) {
        v.parent = -1;
        for (int l = -v.level - 1; l >= 1; --l) {
            const SetPartition& sigma = stratum.chain[static_cast<std::size_t>(l - 1)];
            const auto& enclosing =
                sigma.blocks()[static_cast<std::size_t>(sigma.block_of(v.block.front()))];
            if (enclosing == v.block)
                continue;
            for (std::size_t i = 0; i < t.vertices.size(); ++i)
                if (t.vertices[i].level == -l && t.vertices[i].block == enclosing) {
                    v.parent = static_cast<int>(i);
                    break;
                }
            break; // nearest strictly enclosing block carries the vertex
        }
    }

    // Mark i sits on the vertex of the smallest component containing it.
    t.mark_vertex.assign(static_cast<std::size_t>(t.n), -1);
    for (int i = 1; i <= t.n; ++i) {
        for (int l = L; l >= 1; --l) {
            const SetPartition& sigma = stratum.chain[static_cast<std::size_t>(l - 1)];
            const auto& block = sigma.blocks()[static_cast<std::size_t>(sigma.block_of(i))];
            const bool singleton_ok = stratum.space == Space::A && l == L && top_last;
            if (block.size() < 2 && !singleton_ok)
                continue;
            for (std::size_t vi = 0; vi < t.vertices.size(); ++vi)
                if (t.vertices[vi].block == block) {
                    t.mark_vertex[static_cast<std::size_t>(i - 1)] = static_cast<int>(vi);
                    break;
                }
            break;
        }
    }

    validate_stability(t);
    return t;
}

ChainStratum chain_from_tree(const LevelTree& tree) {
    std::vector<SetPartition> chain;
    for (int l = 1; l <= tree.depth; ++l) {
        // Blocks: marks collected over connected components of the forest of
        // vertices at levels <= -l.
        std::vector<int> component(tree.vertices.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < tree.vertices.size(); ++i) {
            if (tree.vertices[i].level > -l)
                continue;
            int p = tree.vertices[i].parent;
            if (p >= 0 && tree.vertices[static_cast<std::size_t>(p)].level <= -l)
                component[i] = component[static_cast<std::size_t>(p)];
            else
                component[i] = next++;
        }
        std::vector<std::vector<int>> groups(static_cast<std::size_t>(next));
        for (int mark = 1; mark <= tree.n; ++mark) {
            int v = tree.mark_vertex[static_cast<std::size_t>(mark - 1)];
            if (v >= 0 && component[static_cast<std::size_t>(v)] >= 0)
                groups[static_cast<std::size_t>(component[static_cast<std::size_t>(v)])].push_back(mark);
        }
        std::vector<std::vector<int>> blocks;
        std::vector<char> used(static_cast<std::size_t>(tree.n) + 1, 0);
        for (auto& g : groups)
            if (!g.empty()) {
                for (int x : g)
                    used[static_cast<std::size_t>(x)] = 1;
                blocks.push_back(std::move(g));
            }
        for (int i = 1; i <= tree.n; ++i)
            if (!used[static_cast<std::size_t>(i)])
                blocks.push_back({i});
        chain.push_back(SetPartition::from_blocks(tree.n, std::move(blocks)));
    }
    return make_stratum(tree.space, tree.n, std::move(chain));
}

SetPartition sigma_of_two_level(const LevelTree& tree) {
    if (tree.depth != 1)
        throw DomainError("sigma_of_two_level: tree does not have exactly two levels");
    auto stratum = chain_from_tree(tree);
    return stratum.chain.front();
}

LevelTree partition_to_tree(const SetPartition& sigma, Space space) {
    if (sigma.is_bottom() || sigma.is_top()) {
        if (space == Space::B || sigma.is_bottom())
            throw DomainError("partition_to_tree: sigma must avoid bottom and top");
    }
    return tree_from_chain(make_stratum(space, sigma.n(), {sigma}));
}

std::optional<ChainStratum> divisor_intersection(const SetPartition& a,
                                                 const SetPartition& b, Space space) {
    if (a == b)
        throw DomainError("divisor_intersection: divisors must be distinct");
    validate_member(space, a, true);
    validate_member(space, b, true);
    if (leq(a, b))
        return make_stratum(space, a.n(), {a, b});
    if (leq(b, a))
        return make_stratum(space, a.n(), {b, a});
    return std::nullopt;
}

bool exceptional_lt(const SetPartition& a, const SetPartition& b) {
    if (!a.in_ex() || !b.in_ex())
        throw DomainError("exceptional_lt: labels must lie in Ex_n");
    return a != b && leq(a, b);
}

bool is_valid_blowdown_order(const std::vector<SetPartition>& order) {
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (exceptional_lt(order[j], order[i]))
                return false;
    return true;
}

FiberChain chow_fiber_model(const ChainStratum& stratum) {
    if (stratum.space != Space::B)
        throw DomainError("chow_fiber_model: defined for space B only");
    tree_from_chain(stratum); // the level passages exist iff the tree is valid
    FiberChain fc;
    for (int k = 0; k <= stratum.codim(); ++k)
        fc.passages.push_back(k);
    return fc;
}

CstarReport cstar_report(int n) {
    if (n < 3)
        throw DomainError("cstar_report: need n >= 3");
    CstarReport r;
    r.n = n;
    r.chart_weights.emplace_back("t", -1);
    for (int j = 3; j <= n; ++j)
        r.chart_weights.emplace_back("z1" + std::to_string(j), 0);
    std::string sum = "x1";
    for (int j = 2; j <= n; ++j)
        sum += "+x" + std::to_string(j);
    r.linearization.emplace_back(sum, -1);
    for (int j = 2; j <= n; ++j)
        r.linearization.emplace_back("x1-x" + std::to_string(j), 0);
    r.semistable_locus = "P^" + std::to_string(n - 1) + " \\ {[1:...:1]}";
    return r;
}

std::string tree_to_dot(const LevelTree& tree) {
    std::ostringstream os;
    os << "digraph level_tree {\n";
    os << "  rankdir=TB;\n";
    os << "  node [shape=circle, label=\"\", width=0.12, style=filled, fillcolor=black];\n";
    os << "  root [xlabel=\"" << (tree.space == Space::B ? "p" + std::to_string(tree.n + 1) : "p_inf")
       << "\"];\n";
    for (std::size_t i = 0; i < tree.vertices.size(); ++i) {
        os << "  v" << i << " [xlabel=\"{";
        const auto& b = tree.vertices[i].block;
        for (std::size_t k = 0; k < b.size(); ++k)
            os << (k ? "," : "") << b[k];
        os << "}\"];\n";
    }
    // one rank per level, root on top
    os << "  { rank=source; root; }\n";
    for (int l = 1; l <= tree.depth; ++l) {
        os << "  { rank=same;";
        for (std::size_t i = 0; i < tree.vertices.size(); ++i)
            if (tree.vertices[i].level == -l)
                os << " v" << i << ";";
        os << " }\n";
    }
    for (std::size_t i = 0; i < tree.vertices.size(); ++i) {
        if (tree.vertices[i].parent == -1)
            os << "  root -> v" << i << ";\n";
        else
            os << "  v" << tree.vertices[i].parent << " -> v" << i << ";\n";
    }
    os << "  node [shape=plaintext, style=solid, width=0.1];\n";
    for (int mark = 1; mark <= tree.n; ++mark) {
        int v = tree.mark_vertex[static_cast<std::size_t>(mark - 1)];
        os << "  m" << mark << " [label=\"p" << mark << "\"];\n  ";
        if (v == -1)
            os << "root";
        else
            os << "v" << v;
        os << " -> m" << mark << " [arrowhead=none, style=dotted];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace wonder
