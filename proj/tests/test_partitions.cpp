#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "wonder/partition.hpp"

using namespace wonder;

namespace {

// Independent oracle: Bell numbers via the recurrence B(n+1) = sum C(n,k) B(k).
std::uint64_t bell_recurrence(int n) {
    std::vector<std::vector<std::uint64_t>> choose(
        static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
    for (int i = 0; i <= n; ++i) {
        choose[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
    }
    std::vector<std::uint64_t> bell{1}; // B(0)
    for (int m = 0; m < n; ++m) {
        std::uint64_t next = 0;
        for (int k = 0; k <= m; ++k)
            next += choose[m][k] * bell[static_cast<std::size_t>(k)];
        bell.push_back(next);
    }
    return bell[static_cast<std::size_t>(n)];
}

// Independent count of partitions with at least two blocks of size >= 2,
// reading sizes straight off the block lists.
int count_ex_brute(int n) {
    int total = 0;
    for (const auto& p : enumerate_partitions(n)) {
        int big = 0;
        for (const auto& b : p.blocks())
            if (b.size() >= 2)
                ++big;
        if (big >= 2)
            ++total;
    }
    return total;
}

} // namespace

TEST_CASE("enumeration sizes match the Bell recurrence") {
    CHECK(enumerate_partitions(1).size() == 1);
    CHECK(enumerate_partitions(3).size() == 5);
    CHECK(enumerate_partitions(4).size() == 15);
    for (int n = 1; n <= 8; ++n)
        CHECK(enumerate_partitions(n).size() == bell_recurrence(n));
}

TEST_CASE("enumeration is deduplicated, graded and deterministic") {
    for (int n = 2; n <= 6; ++n) {
        auto parts = enumerate_partitions(n);
        CHECK(parts.front() == SetPartition::bottom(n));
        CHECK(parts.back() == SetPartition::top(n));
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            CHECK(canonical_less(parts[i], parts[i + 1]));
            CHECK(parts[i].block_count() <= parts[i + 1].block_count());
        }
    }
    auto l3 = enumerate_partitions(3);
    REQUIRE(l3.size() == 5);
    CHECK(l3[0].to_string() == "123");
    CHECK(l3[1].to_string() == "12|3");
    CHECK(l3[2].to_string() == "13|2");
    CHECK(l3[3].to_string() == "1|23");
    CHECK(l3[4].to_string() == "1|2|3");
}

TEST_CASE("enumeration bounds error") {
    CHECK_THROWS_AS(enumerate_partitions(0), BoundsError);
    CHECK_THROWS_AS(enumerate_partitions(10), BoundsError);
    CHECK_NOTHROW(enumerate_partitions(10, 12));
}

TEST_CASE("leq basics") {
    auto bot = SetPartition::bottom(4);
    auto p12_34 = SetPartition::parse("12|34");
    auto p12 = SetPartition::parse("12|3|4");
    auto p13 = SetPartition::parse("13|2|4");
    for (const auto& s : enumerate_partitions(4))
        CHECK(leq(bot, s));
    CHECK(leq(p12_34, p12));
    CHECK_FALSE(leq(p12, p12_34));
    CHECK_FALSE(leq(p12, p13));
    CHECK_FALSE(leq(p13, p12));
    CHECK_THROWS_AS(leq(SetPartition::bottom(3), bot), DomainError);
}

TEST_CASE("leq is a partial order (exhaustive n <= 5)") {
    for (int n = 2; n <= 5; ++n) {
        auto parts = enumerate_partitions(n);
        for (const auto& a : parts) {
            CHECK(leq(a, a));
            for (const auto& b : parts) {
                if (leq(a, b) && leq(b, a))
                    CHECK(a == b);
                if (leq(a, b) && a != b)
                    CHECK(a.rank() > b.rank()); // rank order-reversing
                for (const auto& c : parts)
                    if (leq(a, b) && leq(b, c))
                        CHECK(leq(a, c));
            }
        }
    }
}

TEST_CASE("common_coarsening examples") {
    auto m = common_coarsening(SetPartition::parse("12|3"), SetPartition::parse("13|2"));
    CHECK(m == SetPartition::bottom(3));
    auto s = SetPartition::parse("12|34");
    CHECK(common_coarsening(s, s) == s);
    CHECK(common_coarsening(SetPartition::parse("12|34"), SetPartition::parse("1|23|4")) ==
          SetPartition::bottom(4));
    CHECK_THROWS_AS(common_coarsening(SetPartition::bottom(3), SetPartition::bottom(4)), DomainError);
}

TEST_CASE("common_coarsening is the greatest lower bound (exhaustive n <= 4)") {
    for (int n = 2; n <= 4; ++n) {
        auto parts = enumerate_partitions(n);
        for (const auto& a : parts)
            for (const auto& b : parts) {
                auto m = common_coarsening(a, b);
                CHECK(leq(m, a));
                CHECK(leq(m, b));
                for (const auto& c : parts)
                    if (leq(c, a) && leq(c, b))
                        CHECK(leq(c, m));
            }
    }
}

TEST_CASE("rank") {
    CHECK(SetPartition::top(5).rank() == 0);
    CHECK(SetPartition::bottom(5).rank() == 4);
    CHECK(SetPartition::parse("12|3|4").rank() == 1);
}

TEST_CASE("non-singleton blocks and Ex membership") {
    auto fig = SetPartition::parse("124|58|36|7|9");
    CHECK(fig.n() == 9);
    auto ns = fig.non_singleton_blocks();
    REQUIRE(ns.size() == 3);
    CHECK(ns[0] == std::vector<int>{1, 2, 4});
    CHECK(ns[1] == std::vector<int>{3, 6});
    CHECK(ns[2] == std::vector<int>{5, 8});
    CHECK(fig.in_ex());
    CHECK_FALSE(SetPartition::parse("12|3|4").in_ex());
    CHECK(count_ex_brute(4) == 3);
    CHECK(count_ex_brute(5) == 25);
    CHECK(enumerate_ex(4).size() == 3);
    CHECK(enumerate_ex(5).size() == 25);
}

TEST_CASE("text round-trip, digits and comma form") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : enumerate_partitions(n))
            CHECK(SetPartition::parse(p.to_string()) == p);
    // n >= 10 uses commas
    auto p = SetPartition::from_blocks(11, {{1, 10, 2}, {3, 11}, {4}, {5, 6, 7, 8, 9}});
    CHECK(p.to_string() == "1,2,10|3,11|4|5,6,7,8,9");
    CHECK(SetPartition::parse(p.to_string()) == p);
    CHECK_THROWS_AS(SetPartition::parse(""), DomainError);
    CHECK_THROWS_AS(SetPartition::parse("12||3"), DomainError);
    CHECK_THROWS_AS(SetPartition::parse("12|2"), DomainError);
    CHECK_THROWS_AS(SetPartition::parse("13|4"), DomainError);
}

TEST_CASE("canonical storage is unique") {
    auto a = SetPartition::from_blocks(5, {{4, 3}, {5, 1}, {2}});
    auto b = SetPartition::from_blocks(5, {{1, 5}, {2}, {3, 4}});
    CHECK(a == b);
    CHECK(a.to_string() == "15|2|34");
    CHECK(SetPartitionHash{}(a) == SetPartitionHash{}(b));
    CHECK(a.block_of(3) == a.block_of(4));
    CHECK(a.same_block(1, 5));
    CHECK_FALSE(a.same_block(1, 2));
}
