#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "wonder/strata.hpp"

using namespace wonder;

namespace {

// Independent oracle: number of strict k-chains in a poset given by its
// strict comparability matrix, via matrix powers.
std::vector<std::uint64_t> chain_counts(const std::vector<std::vector<int>>& lt, int max_len) {
    const std::size_t m = lt.size();
    std::vector<std::uint64_t> counts{1}; // empty chain
    std::vector<std::uint64_t> reach(m, 1); // chains of current length ending at j
    for (int len = 1; len <= max_len; ++len) {
        if (len == 1) {
            reach.assign(m, 1);
        } else {
            std::vector<std::uint64_t> next(m, 0);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (lt[i][j])
                        next[j] += reach[i];
            reach = std::move(next);
        }
        std::uint64_t total = 0;
        for (auto v : reach)
            total += v;
        counts.push_back(total);
    }
    return counts;
}

std::vector<std::vector<int>> strict_lt_matrix(Space space, int n) {
    std::vector<SetPartition> ground;
    for (const auto& sigma : enumerate_partitions(n)) {
        if (sigma.is_bottom())
            continue;
        if (space == Space::B && sigma.is_top())
            continue;
        ground.push_back(sigma);
    }
    std::vector<std::vector<int>> lt(ground.size(), std::vector<int>(ground.size(), 0));
    for (std::size_t i = 0; i < ground.size(); ++i)
        for (std::size_t j = 0; j < ground.size(); ++j)
            lt[i][j] = (i != j && leq(ground[i], ground[j]) && ground[i] != ground[j]) ? 1 : 0;
    return lt;
}

std::map<int, int> count_by_codim(const std::vector<ChainStratum>& strata) {
    std::map<int, int> by;
    for (const auto& s : strata)
        by[s.codim()]++;
    return by;
}

} // namespace

TEST_CASE("strata counts for small n") {
    auto b3 = strata_enumerate(Space::B, 3);
    CHECK(b3.size() == 4); // open + 3 divisors
    auto a3 = strata_enumerate(Space::A, 3);
    CHECK(a3.size() == 8);
    auto by = count_by_codim(a3);
    CHECK(by[0] == 1);
    CHECK(by[1] == 4);
    CHECK(by[2] == 3); // the three isolated fixed points q_ij
    auto b4 = strata_enumerate(Space::B, 4);
    CHECK(b4.size() == 32);
    auto by4 = count_by_codim(b4);
    CHECK(by4[0] == 1);
    CHECK(by4[1] == 13);
    CHECK(by4[2] == 18);
}

TEST_CASE("strata counts match the matrix-power oracle (n <= 5)") {
    for (Space space : {Space::B, Space::A}) {
        for (int n = 2; n <= 5; ++n) {
            auto lt = strict_lt_matrix(space, n);
            auto expected = chain_counts(lt, n);
            auto strata = strata_enumerate(space, n);
            auto by = count_by_codim(strata);
            std::uint64_t total = 0;
            for (std::size_t len = 0; len < expected.size(); ++len) {
                CHECK(static_cast<std::uint64_t>(by[static_cast<int>(len)]) == expected[len]);
                total += expected[len];
            }
            CHECK(strata.size() == total);
        }
    }
}

TEST_CASE("stratum validation") {
    CHECK_THROWS_AS(make_stratum(Space::B, 4, {SetPartition::bottom(4)}), DomainError);
    CHECK_THROWS_AS(make_stratum(Space::B, 4, {SetPartition::top(4)}), DomainError);
    CHECK_THROWS_AS(make_stratum(Space::A, 4, {SetPartition::bottom(4)}), DomainError);
    CHECK_NOTHROW(make_stratum(Space::A, 4, {SetPartition::top(4)}));
    CHECK_THROWS_AS(
        make_stratum(Space::A, 4, {SetPartition::top(4), SetPartition::parse("12|3|4")}),
        DomainError);
    // not strictly increasing
    CHECK_THROWS_AS(
        make_stratum(Space::B, 4, {SetPartition::parse("12|3|4"), SetPartition::parse("13|2|4")}),
        DomainError);
    CHECK_THROWS_AS(
        make_stratum(Space::B, 4, {SetPartition::parse("12|3|4"), SetPartition::parse("12|3|4")}),
        DomainError);
}

TEST_CASE("chain literal round-trip") {
    auto s = parse_chain(Space::B, "123|45<12|3|45");
    CHECK(s.n == 5);
    CHECK(s.codim() == 2);
    CHECK(s.to_string() == "123|45<12|3|45");
    auto open = parse_chain(Space::A, "", 4);
    CHECK(open.codim() == 0);
    CHECK_THROWS_AS(parse_chain(Space::B, "12|3|4<12|34"), DomainError);
    for (const auto& st : strata_enumerate(Space::A, 4)) {
        if (st.codim() == 0)
            continue;
        auto back = parse_chain(Space::A, st.to_string());
        CHECK(back.chain == st.chain);
    }
}

TEST_CASE("tree of the worked 2-chain example") {
    auto s = parse_chain(Space::B, "123|45<12|3|45");
    auto t = tree_from_chain(s);
    CHECK(t.depth == 2);
    REQUIRE(t.vertices.size() == 3);
    // sorted: level -1 first, then level -2 by block
    CHECK(t.vertices[0].block == std::vector<int>{1, 2, 3});
    CHECK(t.vertices[0].level == -1);
    CHECK(t.vertices[0].parent == -1);
    CHECK(t.vertices[1].block == std::vector<int>{1, 2});
    CHECK(t.vertices[1].level == -2);
    CHECK(t.vertices[1].parent == 0);
    CHECK(t.vertices[2].block == std::vector<int>{4, 5});
    CHECK(t.vertices[2].level == -2);
    CHECK(t.vertices[2].parent == -1); // long edge to the root
    CHECK(t.mark_vertex == std::vector<int>{1, 1, 0, 2, 2});
    for (int v = -1; v < 3; ++v)
        CHECK(t.special_points(v) >= 3);
    CHECK(chain_from_tree(t).chain == s.chain);
}

TEST_CASE("open stratum tree") {
    auto t = tree_from_chain(make_stratum(Space::B, 5, {}));
    CHECK(t.depth == 0);
    CHECK(t.vertices.empty());
    CHECK(t.mark_of_root_count() == 5);
}

TEST_CASE("A-space top divisor tree matches the comb picture") {
    auto t = partition_to_tree(SetPartition::top(4), Space::A);
    CHECK(t.depth == 1);
    REQUIRE(t.vertices.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(t.vertices[i].block.size() == 1);
        CHECK(t.vertices[i].parent == -1);
        CHECK(t.special_points(static_cast<int>(i)) == 2); // legal in A only
    }
    CHECK(t.mark_of_root_count() == 0);
    CHECK_THROWS_AS(partition_to_tree(SetPartition::top(4), Space::B), DomainError);
    CHECK_THROWS_AS(partition_to_tree(SetPartition::bottom(4), Space::A), DomainError);
}

TEST_CASE("A-space chain through top keeps marks on the bottom level") {
    auto s = parse_chain(Space::A, "12|3<1|2|3");
    auto t = tree_from_chain(s);
    CHECK(t.depth == 2);
    REQUIRE(t.vertices.size() == 4); // {12}@-1 and three singletons @-2
    CHECK(t.vertices[0].block == std::vector<int>{1, 2});
    for (int mark = 1; mark <= 3; ++mark) {
        int v = t.mark_vertex[static_cast<std::size_t>(mark - 1)];
        REQUIRE(v >= 0);
        CHECK(t.vertices[static_cast<std::size_t>(v)].level == -2);
    }
    CHECK(chain_from_tree(t).chain == s.chain);
}

TEST_CASE("two-level bijection (Fig. 1 comb curve)") {
    auto fig = SetPartition::parse("124|58|36|7|9");
    auto t = partition_to_tree(fig, Space::B);
    CHECK(t.depth == 1);
    CHECK(t.vertices.size() == 3);
    CHECK(t.mark_of_root_count() == 2); // marks 7 and 9
    CHECK(sigma_of_two_level(t) == fig);
}

TEST_CASE("two-level bijection is exhaustive (n <= 5)") {
    for (int n = 3; n <= 5; ++n) {
        int count = 0;
        for (const auto& sigma : enumerate_partitions(n)) {
            if (sigma.is_bottom() || sigma.is_top())
                continue;
            auto t = partition_to_tree(sigma, Space::B);
            CHECK(sigma_of_two_level(t) == sigma);
            CHECK(t.vertices.size() == sigma.non_singleton_blocks().size());
            ++count;
        }
        CHECK(count == static_cast<int>(enumerate_partitions(n).size()) - 2);
    }
    CHECK_THROWS_AS(sigma_of_two_level(tree_from_chain(parse_chain(Space::B, "123|45<12|3|45"))),
                    DomainError);
}

TEST_CASE("tree/chain round-trip is exhaustive (n <= 5)") {
    for (Space space : {Space::B, Space::A})
        for (int n = 2; n <= 5; ++n)
            for (const auto& s : strata_enumerate(space, n)) {
                LevelTree t = tree_from_chain(s); // validator must not fire
                CHECK(chain_from_tree(t).chain == s.chain);
            }
}

TEST_CASE("divisor intersection") {
    auto c = divisor_intersection(SetPartition::parse("12|34"), SetPartition::parse("12|3|4"),
                                  Space::B);
    REQUIRE(c.has_value());
    CHECK(c->codim() == 2);
    CHECK(c->chain.front() == SetPartition::parse("12|34"));
    CHECK_FALSE(divisor_intersection(SetPartition::parse("12|3|4"), SetPartition::parse("13|2|4"),
                                     Space::B)
                    .has_value());
    // order of arguments is irrelevant
    auto c2 = divisor_intersection(SetPartition::parse("12|3|4"), SetPartition::parse("12|34"),
                                   Space::B);
    REQUIRE(c2.has_value());
    CHECK(c2->chain == c->chain);
    CHECK_THROWS_AS(divisor_intersection(SetPartition::parse("12|34"), SetPartition::parse("12|34"),
                                         Space::B),
                    DomainError);
    // in A, top meets every other divisor
    for (const auto& sigma : enumerate_partitions(4)) {
        if (sigma.is_bottom() || sigma.is_top())
            continue;
        CHECK(divisor_intersection(sigma, SetPartition::top(4), Space::A).has_value());
    }
}

TEST_CASE("exceptional order") {
    CHECK(exceptional_lt(SetPartition::parse("12|345"), SetPartition::parse("12|34|5")));
    CHECK_FALSE(exceptional_lt(SetPartition::parse("12|34|5"), SetPartition::parse("12|345")));
    CHECK_FALSE(exceptional_lt(SetPartition::parse("12|34"), SetPartition::parse("13|24")));
    CHECK_FALSE(exceptional_lt(SetPartition::parse("13|24"), SetPartition::parse("12|34")));
    CHECK_THROWS_AS(exceptional_lt(SetPartition::parse("123|4"), SetPartition::parse("12|34")),
                    DomainError);

    // agreement with leq, exhaustively on Ex_5
    auto ex5 = enumerate_ex(5);
    CHECK(ex5.size() == 25);
    int comparable_pairs = 0;
    for (const auto& a : ex5)
        for (const auto& b : ex5) {
            bool expected = (a != b) && leq(a, b);
            CHECK(exceptional_lt(a, b) == expected);
            if (expected)
                ++comparable_pairs;
        }
    int brute = 0;
    for (const auto& a : ex5)
        for (const auto& b : ex5)
            if (a != b && leq(a, b))
                ++brute;
    CHECK(comparable_pairs == brute);
}

TEST_CASE("linear extensions of Ex_n are valid blowdown orders") {
    auto ex5 = enumerate_ex(5); // enumeration order is a linear extension
    CHECK(is_valid_blowdown_order(ex5));
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        // random topological shuffle: repeatedly pick a random minimal element
        auto pool = ex5;
        std::vector<SetPartition> order;
        while (!pool.empty()) {
            std::vector<std::size_t> minimal;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                bool is_min = true;
                for (std::size_t j = 0; j < pool.size(); ++j)
                    if (i != j && exceptional_lt(pool[j], pool[i]))
                        is_min = false;
                if (is_min)
                    minimal.push_back(i);
            }
            std::size_t pick = minimal[rng() % minimal.size()];
            order.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        CHECK(is_valid_blowdown_order(order));
    }
    auto reversed = ex5;
    std::reverse(reversed.begin(), reversed.end());
    CHECK_FALSE(is_valid_blowdown_order(reversed));
}

TEST_CASE("fiber chains have codim+1 components") {
    CHECK(chow_fiber_model(make_stratum(Space::B, 4, {})).length() == 1);
    for (int n = 3; n <= 5; ++n)
        for (const auto& s : strata_enumerate(Space::B, n))
            CHECK(chow_fiber_model(s).length() == static_cast<std::size_t>(s.codim()) + 1);
    CHECK_THROWS_AS(chow_fiber_model(make_stratum(Space::A, 3, {SetPartition::top(3)})),
                    DomainError);
}

TEST_CASE("cstar report") {
    auto r = cstar_report(5);
    REQUIRE(r.chart_weights.size() == 4);
    CHECK(r.chart_weights[0] == std::pair<std::string, int>{"t", -1});
    CHECK(r.chart_weights[1] == std::pair<std::string, int>{"z13", 0});
    CHECK(r.chart_weights[2] == std::pair<std::string, int>{"z14", 0});
    CHECK(r.chart_weights[3] == std::pair<std::string, int>{"z15", 0});
    CHECK(r.linearization.front() ==
          std::pair<std::string, int>{"x1+x2+x3+x4+x5", -1});
    for (std::size_t i = 1; i < r.linearization.size(); ++i)
        CHECK(r.linearization[i].second == 0);
    CHECK(r.semistable_locus == "P^4 \\ {[1:...:1]}");
    CHECK_THROWS_AS(cstar_report(2), DomainError);
}

TEST_CASE("DOT output is byte-stable and shows the long edge") {
    auto t = tree_from_chain(parse_chain(Space::B, "123|45<12|3|45"));
    auto dot1 = tree_to_dot(t);
    auto dot2 = tree_to_dot(tree_from_chain(parse_chain(Space::B, "123|45<12|3|45")));
    CHECK(dot1 == dot2);
    CHECK(dot1.find("digraph") != std::string::npos);
    CHECK(dot1.find("root -> v2") != std::string::npos); // {45} hangs from the root
    CHECK(dot1.find("rank=same") != std::string::npos);
}
