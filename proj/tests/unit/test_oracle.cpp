#include <random>

#include "doctest.h"
#include "naive.hpp"
#include "ppm/hardgen.hpp"
#include "ppm/oracle.hpp"
#include "ppm/workloads.hpp"

using namespace ppm;
using V = std::vector<Value>;

namespace {

StreamInstance perm(V values) {
    const auto n = static_cast<Value>(values.size());
    return {n, StreamMode::Permutation, std::move(values)};
}

}  // namespace

TEST_CASE("contains_bruteforce examples") {
    // Exhaustive lexicographic scan: 9 at position 3 is the first entry with a
    // smaller pair completing 312 after it (7 at 4, 8 at 10).
    const StreamInstance seq312{18, StreamMode::DistinctSequence, {3, 1, 9, 7, 15, 13, 18, 16, 14, 8, 5}};
    const auto occ = contains_bruteforce(seq312, Pattern::parse("312"));
    REQUIRE(occ);
    CHECK(occ->positions == std::vector<Index>{3, 4, 10});
    CHECK(occ->values == V{9, 7, 8});

    CHECK_FALSE(contains_bruteforce(perm({1, 2, 3, 4, 5, 6}), Pattern::parse("21")));
    CHECK_FALSE(contains_bruteforce(perm({2, 1, 3}), Pattern::parse("312")));
    CHECK_THROWS_AS(contains_bruteforce({3, StreamMode::Permutation, {1, 2}}, Pattern::parse("12")),
                    std::invalid_argument);
}

TEST_CASE("count_occurrences examples") {
    CHECK(count_occurrences(perm({2, 1, 3}), Pattern::parse("12")) == 2);
    CHECK(count_occurrences(perm({4, 3, 2, 1}), Pattern::parse("21")) == 6);
    const auto inst = gen_pi4_front(Pattern::parse("4231"), V{1, 3}, V{2, 3}, 4);
    CHECK(count_occurrences(inst.stream, Pattern::parse("4231")) == 1);
    CHECK(count_occurrences(perm({1, 2}), Pattern::parse("123")) == 0);
}

TEST_CASE("count reaches values beyond 64 bits only through the unbounded type") {
    // C(30, 15) increasing 15-subsequences of the identity.
    V identity(30);
    for (Value i = 0; i < 30; ++i) identity[static_cast<std::size_t>(i)] = i + 1;
    CHECK(count_occurrences(std::span<const Value>(identity), Pattern::parse("1,2,3,4,5,6,7,8,9,10,11,12,13,14,15")) ==
          BigCount(155117520));
}

TEST_CASE("oracle agrees with naive enumeration") {
    std::mt19937_64 rng(42);
    const auto patterns = naive::all_patterns(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<Value> size(1, 9);
        const Value n = size(rng);
        auto seq = random_permutation(n + 3, rng);
        if (trial % 2) seq.resize(static_cast<std::size_t>(n));  // distinct sequence over [n + 3]
        for (const auto& p : patterns) {
            const Pattern pattern(p);
            const auto mine = find_first_occurrence(seq, pattern);
            const auto ref = naive::first_match(seq, p);
            REQUIRE(mine.has_value() == ref.has_value());
            if (mine) {
                for (std::size_t j = 0; j < p.size(); ++j) {
                    CHECK(mine->positions[j] == (*ref)[j] + 1);
                    CHECK(mine->values[j] == seq[(*ref)[j]]);
                }
                CHECK(is_order_isomorphic(mine->values, p));
            }
            const auto count = count_occurrences(std::span<const Value>(seq), pattern);
            CHECK(count == naive::count_matches(seq, p));
            CHECK((count > 0) == mine.has_value());
        }
    }
}

TEST_CASE("complement duality of containment and counts") {
    const auto patterns = naive::all_patterns(1, 3);
    for (Value n = 1; n <= 6; ++n) {
        for_each_permutation(n, [&](const V& tau) {
            const auto tau_c = complement(tau, n);
            for (const auto& p : patterns) {
                const Pattern pat(p);
                const Pattern pat_c(complement(p, static_cast<Value>(p.size())));
                CHECK(find_first_occurrence(tau, pat).has_value() == find_first_occurrence(tau_c, pat_c).has_value());
                CHECK(count_occurrences(std::span<const Value>(tau), pat) ==
                      count_occurrences(std::span<const Value>(tau_c), pat_c));
            }
        });
    }
}

TEST_CASE("longest increasing subsequence matches the quadratic DP") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_permutation(1 + trial % 40, rng);
        CHECK(longest_increasing_subsequence(p) == naive::lis_quadratic(p));
    }
}

TEST_CASE("split protocol examples") {
    CHECK(split_protocol({{3, 1}, {2}, 3}, Pattern::parse("312")));
    CHECK(split_alice_bit({{3, 1}, {2}, 3}, Pattern::parse("312")));
    CHECK(split_protocol({{1}, {2, 3}, 3}, Pattern::parse("123")));
    CHECK_FALSE(split_alice_bit({{1}, {2, 3}, 3}, Pattern::parse("123")));
    CHECK_FALSE(split_protocol({{2, 1}, {3}, 3}, Pattern::parse("312")));
    CHECK_THROWS_AS(split_protocol({{1, 2}, {3, 4}, 4}, Pattern::parse("1234")), std::invalid_argument);
    CHECK_THROWS_AS(split_protocol({{1, 2}, {2}, 3}, Pattern::parse("12")), std::invalid_argument);
}

TEST_CASE("split protocol equals the oracle on every split, n <= 5") {
    const auto patterns = naive::all_patterns(1, 3);
    for (Value n = 1; n <= 5; ++n) {
        for_each_permutation(n, [&](const V& tau) {
            for (std::size_t cut = 0; cut <= tau.size(); ++cut) {
                SplitInput in{V(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(cut)),
                              V(tau.begin() + static_cast<std::ptrdiff_t>(cut), tau.end()), n};
                for (const auto& p : patterns) {
                    const Pattern pat(p);
                    CHECK(split_protocol(in, pat) == find_first_occurrence(tau, pat).has_value());
                }
            }
        });
    }
}
