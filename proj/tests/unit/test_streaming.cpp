#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "naive.hpp"
#include "ppm/oracle.hpp"
#include "ppm/streaming/detector312.hpp"
#include "ppm/streaming/dispatch.hpp"
#include "ppm/streaming/invariants312.hpp"
#include "ppm/streaming/monotone.hpp"
#include "ppm/streaming/strip_detector.hpp"
#include "ppm/workloads.hpp"

using namespace ppm;
using V = std::vector<Value>;

namespace {

StreamInstance perm(V values) {
    const auto n = static_cast<Value>(values.size());
    return {n, StreamMode::Permutation, std::move(values)};
}

Value ceil_div(Value a, Value b) { return (a + b - 1) / b; }

}  // namespace

TEST_CASE("window width") {
    CHECK(window_width_312(1) == 1);
    CHECK(window_width_312(2) == 1);
    CHECK(window_width_312(16) == 8);
    CHECK(window_width_312(18) == 8);
    CHECK(window_width_312(1024) == 101);
    for (Value n = 3; n < 5000; n += 7) {
        const Value k = window_width_312(n);
        const double t = static_cast<double>(n) * std::log2(static_cast<double>(n));
        CHECK(static_cast<double>(k * k) <= t);
        CHECK(static_cast<double>((k + 1) * (k + 1)) > t);
    }
}

TEST_CASE("sliding window bits") {
    SlidingWindowBits w(3);
    w.set(5);
    w.set(4);
    CHECK(w.count() == 2);
    w.slide(5, 7);  // window (4, 7]
    CHECK(w.count() == 1);
    CHECK(w.test(5));
    CHECK_FALSE(w.test(4));
    w.slide(7, 20);
    CHECK(w.count() == 0);
}

TEST_CASE("Detector312 pair rule on 3 1 2") {
    Detector312 d(3);
    CHECK_FALSE(d.push(3).accepted());
    CHECK_FALSE(d.push(1).accepted());
    const auto r = d.push(2);
    REQUIRE(r.accepted());
    REQUIRE(r.occurrence);
    CHECK(r.occurrence->positions == std::vector<Index>{1, 2, 3});
    CHECK(r.occurrence->values == V{3, 1, 2});
    CHECK(d.accepting_rule() == Detector312::Rule::PairInD);
}

TEST_CASE("Detector312 fixed width keeps filled windows") {
    {
        Detector312 d(10, 3);
        CHECK_FALSE(d.push(8).accepted());
        CHECK_FALSE(d.push(10).accepted());
        CHECK_FALSE(d.push(9).accepted());
        CHECK(d.window_members() == V{8, 9, 10});
        CHECK(d.pair_count() == 0);
    }
    {
        Detector312 d(20, 4);
        for (Value v : {17, 19, 20}) CHECK_FALSE(d.push(v).accepted());
        CHECK_FALSE(d.push(18).accepted());
        CHECK(d.window_members() == V{17, 18, 19, 20});
    }
    CHECK_THROWS_AS(Detector312(10, 0), std::invalid_argument);
}

TEST_CASE("Detector312 window gap names a future value") {
    Detector312 d(18);
    REQUIRE(d.width() == 8);
    CHECK_FALSE(d.push(18).accepted());
    CHECK_FALSE(d.push(5).accepted());  // 5 <= 18 - 8: stored as a pair
    CHECK(d.pairs() == std::vector<std::pair<Value, Value>>{{18, 5}});
    const auto r = d.push(8);
    REQUIRE(r.accepted());
    CHECK(r.occurrence->values == V{18, 5, 8});
    CHECK(r.occurrence->positions == std::vector<Index>{1, 2, 3});

    Detector312 g(18);
    g.push(18);
    const auto r2 = g.push(15);
    REQUIRE(r2.accepted());
    CHECK(g.accepting_rule() == Detector312::Rule::GapInWindow);
    CHECK(r2.occurrence->has_future());
    CHECK(r2.occurrence->values == V{18, 15, 17});
}

TEST_CASE("strip size and threshold") {
    CHECK(strip_size(1) == 1);
    CHECK(strip_size(15) == 3);
    CHECK(strip_size(16) == 4);
    StripDetector d(16);
    for (Value v : {7, 12, 13, 1}) CHECK_FALSE(d.push(v).accepted());
    CHECK(d.threshold() == 7);
    CHECK(d.records().size() == 1);
    CHECK(d.buffer().empty());
    CHECK_FALSE(d.push(5).accepted());
    CHECK(d.push(9).accepted());
}

TEST_CASE("strip helpers") {
    const std::vector<Point> pts{{1, 3}, {2, 6}, {3, 11}, {4, 14}};
    CHECK(strip::is_gap_pair({1, 3}, {2, 6}, pts));
    CHECK_FALSE(strip::is_gap_pair({2, 6}, {1, 3}, pts));
    const std::vector<Point> tight{{1, 3}, {2, 5}, {3, 4}};
    CHECK_FALSE(strip::is_gap_pair({1, 3}, {2, 5}, tight));
    CHECK(strip::contains_213(std::vector<Point>{{1, 2}, {2, 1}, {3, 3}}));
    CHECK_FALSE(strip::contains_213(std::vector<Point>{{1, 1}, {2, 3}, {3, 2}}));
    CHECK(strip::lowest_decreasing_start(pts) == std::nullopt);
    CHECK(strip::lowest_decreasing_start(std::vector<Point>{{1, 7}, {2, 12}, {3, 13}, {4, 1}}) == 7);

    const auto rec = strip::summarize(pts);
    REQUIRE(rec.ell);
    CHECK(rec.ell->y == 3);
    CHECK(rec.high->y == 14);
    CHECK(rec.counter == 2);
    CHECK(rec.ell_prime.y == 3);
    CHECK(rec.counter_prime == 3);
}

TEST_CASE("231 decided at the end of input") {
    const auto inst = perm({5, 3, 4, 1, 2});
    CHECK(detect(inst, Pattern::parse("231")).verdict);
    CHECK(contains_bruteforce(inst, Pattern::parse("231")));
}

TEST_CASE("detector contract errors") {
    Detector312 d(5);
    CHECK_THROWS_AS(d.push(0), std::invalid_argument);
    CHECK_THROWS_AS(d.push(6), std::invalid_argument);
    d.push(2);
    CHECK_THROWS_AS(d.push(2), std::invalid_argument);
    CHECK_THROWS_AS(d.finish(), std::logic_error);

    Detector312 e(3);
    e.push(3);
    e.push(1);
    e.push(2);
    CHECK_THROWS_AS(e.push(1), std::logic_error);
    CHECK(e.finish().verdict);
    CHECK_THROWS_AS(e.finish(), std::logic_error);

    MonotoneDetector m(2, 5, StreamMode::DistinctSequence);
    m.push(4);
    CHECK_FALSE(m.finish().verdict);
    CHECK_THROWS_AS(m.push(5), std::logic_error);
}

TEST_CASE("dispatch picks detectors by pattern") {
    auto name = [](const char* p, Value n = 10, StreamMode mode = StreamMode::Permutation) {
        return make_detector(Pattern::parse(p), n, mode)->name();
    };
    CHECK(name("123") == "monotone");
    CHECK(name("1") == "monotone");
    CHECK(name("321") == "complement(monotone)");
    CHECK(name("312") == "312");
    CHECK(name("132") == "complement(312)");
    CHECK(name("213") == "213");
    CHECK(name("231") == "complement(213)");
    CHECK(name("2413") == "baseline");
    CHECK(name("312", 10, StreamMode::DistinctSequence) == "baseline");
    CHECK(name("54321", 4) == "reject");

    CHECK_FALSE(make_detector(Pattern::parse("2413"), 10, StreamMode::Permutation)->warning().empty());
    CHECK_FALSE(make_detector(Pattern::parse("312"), 10, StreamMode::DistinctSequence)->warning().empty());
    CHECK(make_detector(Pattern::parse("312"), 10, StreamMode::Permutation)->warning().empty());

    CHECK_THROWS_AS(make_detector(Pattern::parse("312"), 10, StreamMode::Permutation, Algorithm::Monotone),
                    DispatchError);
    CHECK_THROWS_AS(make_detector(Pattern::parse("213"), 10, StreamMode::Permutation, Algorithm::Detector312),
                    DispatchError);
    CHECK_THROWS_AS(make_detector(Pattern::parse("213"), 10, StreamMode::DistinctSequence, Algorithm::Strip),
                    DispatchError);
    CHECK(make_detector(Pattern::parse("12"), 10, StreamMode::Permutation, Algorithm::Baseline)->name() == "baseline");

    CHECK(parse_algorithm("strip") == Algorithm::Strip);
    CHECK_THROWS_AS(parse_algorithm("fast"), std::invalid_argument);
}

TEST_CASE("every detector agrees with the oracle on all permutations, n <= 7") {
    const auto patterns = naive::all_patterns(1, 4);
    for (Value n = 1; n <= 7; ++n) {
        for_each_permutation(n, [&](const V& tau) {
            const auto inst = perm(tau);
            for (const auto& p : patterns) {
                if (n > 6 && p.size() > 3) continue;
                const Pattern pat(p);
                const bool expected = find_first_occurrence(tau, pat).has_value();
                const auto report = detect(inst, pat);
                CHECK(report.verdict == expected);
                if (report.occurrence) {
                    const auto& occ = *report.occurrence;
                    CHECK(is_order_isomorphic(occ.values, p));
                    for (std::size_t j = 0; j < occ.positions.size(); ++j) {
                        if (occ.positions[j] == Occurrence::kFuturePosition) continue;
                        CHECK(tau[occ.positions[j] - 1] == occ.values[j]);
                    }
                }
            }
        });
    }
}

TEST_CASE("detectors agree with the oracle on random permutations") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const Value n = 20 + trial % 180;
        V tau;
        switch (trial % 4) {
            case 0: tau = random_permutation(n, rng); break;
            case 1: tau = random_312_avoider(n, rng); break;
            case 2: tau = random_213_avoider(n, rng); break;
            default: tau = complement(random_213_avoider(n, rng), n); break;
        }
        const auto inst = perm(tau);
        for (const char* p : {"312", "132", "213", "231", "123", "321"}) {
            const Pattern pat = Pattern::parse(p);
            CHECK(detect(inst, pat).verdict == find_first_occurrence(tau, pat).has_value());
        }
    }
}

TEST_CASE("future witnesses arrive later and complete the pattern") {
    std::mt19937_64 rng(11);
    int futures = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Value n = 5 + trial % 60;
        const auto tau = random_permutation(n, rng);
        Detector312 d(n);
        const auto report = run_detector(d, tau);
        if (!report.occurrence || !report.occurrence->has_future()) continue;
        ++futures;
        const auto& occ = *report.occurrence;
        const auto it = std::find(tau.begin(), tau.end(), occ.values[2]);
        REQUIRE(it != tau.end());
        CHECK(static_cast<Index>(it - tau.begin()) + 1 > occ.positions[1]);
        CHECK(is_order_isomorphic(occ.values, V{3, 1, 2}));
    }
    CHECK(futures > 0);
}

TEST_CASE("Detector312 invariants hold on every prefix") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Value n = 2 + trial % 150;
        const auto tau = trial % 3 == 0 ? random_permutation(n, rng) : random_312_avoider(n, rng);
        const debug::FullInputInvariants full(tau);
        Detector312 d(n);
        for (std::size_t i = 0; i < tau.size(); ++i) {
            if (d.push(tau[i]).accepted()) break;
            const auto prefix_issue =
                debug::check_prefix_invariants(d, std::span<const Value>(tau.data(), i + 1));
            const auto full_issue = full.check(d, i + 1);
            REQUIRE_MESSAGE(!prefix_issue, *prefix_issue);
            REQUIRE_MESSAGE(!full_issue, *full_issue);
        }
    }
}

TEST_CASE("space stays within the structural bounds") {
    std::mt19937_64 rng(5);
    for (Value n : {64, 100, 257, 1024, 4096}) {
        const auto tau312 = random_312_avoider(n, rng);
        Detector312 d(n);
        const auto r = run_detector(d, tau312);
        CHECK_FALSE(r.verdict);
        const Value k = window_width_312(n);
        CHECK(r.peak_cells <= static_cast<std::size_t>(1 + k + ceil_div(n, k)));

        const auto tau213 = random_213_avoider(n, rng);
        StripDetector s(n);
        const auto rs = run_detector(s, tau213);
        CHECK_FALSE(rs.verdict);
        const Value w = strip_size(n);
        CHECK(s.records().size() <= static_cast<std::size_t>(ceil_div(n, w)));
        CHECK(rs.structure_peaks.at("buffer") <= static_cast<std::size_t>(w));
    }
}

TEST_CASE("monotone detector tracks the longest increasing subsequence") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const Value n = 1 + trial % 50;
        const auto tau = random_permutation(n, rng);
        const auto lis = naive::lis_quadratic(tau);
        for (std::size_t k = 1; k <= 8; ++k) {
            MonotoneDetector d(k, n, StreamMode::Permutation);
            const auto r = run_detector(d, tau);
            CHECK(r.verdict == (lis >= k));
            CHECK(r.peak_cells <= k);
        }
    }
    MonotoneState st(3);
    for (Value v : {5, 2, 4, 3}) monotone_step(st, v);
    CHECK(st.x == V{2, 3, MonotoneState::kUnset});
    monotone_step(st, 9);
    CHECK(st.accepted);

    MonotoneState fresh(3);
    monotone_step(fresh, 5);
    CHECK(fresh.x == V{5, MonotoneState::kUnset, MonotoneState::kUnset});
    MonotoneState mid(3);
    mid.x = {2, 7, MonotoneState::kUnset};
    monotone_step(mid, 4);
    CHECK(mid.x == V{2, 4, MonotoneState::kUnset});
    monotone_step(mid, 9);
    CHECK(mid.x == V{2, 4, 9});
    CHECK(mid.accepted);
}

TEST_CASE("complement adapter maps occurrences back") {
    ComplementAdapter d(std::make_unique<Detector312>(3));
    d.push(1);
    d.push(3);
    const auto r = d.push(2);
    REQUIRE(r.accepted());
    CHECK(r.occurrence->values == V{1, 3, 2});
    CHECK(d.name() == "complement(312)");

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Value n = 3 + trial % 40;
        const auto tau = random_permutation(n, rng);
        ComplementAdapter c(std::make_unique<Detector312>(n));
        CHECK(run_detector(c, tau).verdict == find_first_occurrence(tau, Pattern::parse("132")).has_value());
    }
}

TEST_CASE("baseline and sequence mode") {
    const StreamInstance seq{12, StreamMode::DistinctSequence, {9, 2, 11, 4, 7}};
    for (const auto& p : naive::all_patterns(1, 4)) {
        const Pattern pat(p);
        CHECK(detect(seq, pat).verdict == find_first_occurrence(seq.elements, pat).has_value());
    }
    const auto r = baseline_detect(perm({2, 4, 1, 3}), Pattern::parse("2413"));
    CHECK(r.verdict);
    CHECK(r.peak_cells == 4);
}

TEST_CASE("small detector traces") {
    MonotoneDetector m(2, 5, StreamMode::Permutation);
    CHECK_FALSE(m.push(1).accepted());
    CHECK(m.push(2).accepted());

    MonotoneDetector m4(4, 4, StreamMode::Permutation);
    CHECK_FALSE(run_detector(m4, V{4, 3, 2, 1}).verdict);

    auto single = make_detector(Pattern::parse("1"), 5, StreamMode::Permutation);
    CHECK(single->push(3).accepted());

    const Value n = 30;
    V increasing(static_cast<std::size_t>(n));
    for (Value i = 0; i < n; ++i) increasing[static_cast<std::size_t>(i)] = i + 1;
    auto d231 = make_detector(Pattern::parse("231"), n, StreamMode::Permutation);
    for (Value v : increasing) CHECK_FALSE(d231->push(v).accepted());
    CHECK_FALSE(d231->finish().verdict);

    Detector312 d312(n);
    const auto r = run_detector(d312, increasing);
    CHECK_FALSE(r.verdict);
    CHECK(r.structure_peaks.at("D") == 0);

    CHECK(make_detector(Pattern::parse("132"), 50, StreamMode::Permutation)->name() == "complement(312)");
    auto mono = make_detector(Pattern::parse("123"), 10, StreamMode::Permutation);
    CHECK(dynamic_cast<MonotoneDetector&>(*mono).state().x.size() == 3);
    CHECK(make_detector(Pattern::parse("4231"), 20, StreamMode::Permutation)->name() == "baseline");

    CHECK(detect(perm({2, 1, 4, 3}), Pattern::parse("2143")).verdict);
    CHECK_FALSE(detect(perm({1, 2, 3, 4}), Pattern::parse("2143")).verdict);
}

TEST_CASE("strip record updates") {
    StripRecord rec;
    rec.ell = Point{1, 3};
    rec.high = Point{2, 9};
    rec.counter = 2;
    rec.observe({10, 6});
    CHECK(rec.counter == 3);
    rec.observe({11, 12});
    CHECK(rec.counter == 3);

    StripRecord low;
    low.ell_prime = Point{1, 4};
    low.high_prime = Point{2, 8};
    low.counter_prime = 1;
    low.observe({5, 11});
    CHECK(low.counter_prime == 2);
    CHECK(low.high_prime->y == 11);
    low.observe({6, 2});
    CHECK(low.counter_prime == 2);

    StripDetector d(16);
    for (Value v : {1, 2, 3}) d.push(v);
    CHECK(d.threshold() == 16);
    StripDetector inside(16);
    inside.push(2);
    inside.push(1);
    inside.push(3);
    CHECK_FALSE(inside.accepted());
    CHECK(inside.push(16).accepted());  // strip closes on (2,1,3,16)
}

TEST_CASE("strip state invariants along random runs") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        const Value n = 4 + trial % 120;
        const auto tau = trial % 2 ? random_213_avoider(n, rng) : random_permutation(n, rng);
        StripDetector d(n);
        Value last_threshold = d.threshold();
        for (Value v : tau) {
            if (d.push(v).accepted()) break;
            CHECK(d.threshold() <= last_threshold);
            last_threshold = d.threshold();
            CHECK(static_cast<Value>(d.buffer().size()) < d.strip_width());
            for (const auto& rec : d.records()) {
                if (rec.ell) {
                    CHECK(rec.ell->y < rec.high->y);
                    CHECK(rec.counter >= 0);
                }
                CHECK(rec.counter_prime <= n);
            }
        }
    }
}

TEST_CASE("peak breakdown sums to the peak") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const Value n = 10 + trial * 5;
        const auto tau = random_permutation(n, rng);
        for (const char* p : {"312", "213", "1234", "2413"}) {
            const auto r = detect(perm(tau), Pattern::parse(p));
            std::size_t sum = 0;
            for (const auto& [name, cells] : r.cells_at_peak) sum += cells;
            CHECK(sum == r.peak_cells);
        }
    }
}

TEST_CASE("complemented inputs flip the pattern") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const Value n = 3 + trial % 80;
        const auto tau = random_permutation(n, rng);
        const auto tau_c = complement(tau, n);
        for (const auto& p : naive::all_patterns(1, 3)) {
            const Pattern pat(p);
            const Pattern pat_c(complement(p, static_cast<Value>(p.size())));
            CHECK(detect(perm(tau), pat).verdict == detect(perm(tau_c), pat_c).verdict);
        }
    }
}
