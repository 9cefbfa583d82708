#pragma once

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

enum class Owner { Alice, Bob };

std::string_view to_string(Owner owner);

/// A contiguous block of the stream produced by one party; 1-based, inclusive.
struct Segment {
    Owner owner = Owner::Alice;
    Index start = 0;
    Index end = 0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// A Disjointness instance (S, T over [n_sets]) encoded as a stream that
/// contains `pattern` iff S and T intersect.
struct DisjInstance {
    Value n_sets = 0;
    std::vector<Value> S;
    std::vector<Value> T;
    Pattern pattern;
    StreamInstance stream;
    std::vector<Segment> segments;

    /// "segment alice 1 8" style lines for the stream file comments.
    std::vector<std::string> segment_comments() const;
    /// Number of Alice -> Bob alternations (1 for f1 g1, 2 for f1 g1 f2).
    std::size_t rounds() const;
};

/// Sets are given as value lists; duplicates or values outside [n_sets] throw.
/// 312 on distinct sequences over [3 n_sets]: f1 = (3i, 3i-2) for i in S
/// ascending, g1 = 3i-1 for i in T descending.
DisjInstance gen_seq312(std::span<const Value> S, std::span<const Value> T, Value n_sets);

/// pattern in {4231, 4213, 4132, 4123}; a permutation of [4 n_sets].
DisjInstance gen_pi4_front(const Pattern& pattern, std::span<const Value> S, std::span<const Value> T, Value n_sets);

/// 4312 on a permutation of [3 n_sets + 1], segments Alice, Bob, Alice.
DisjInstance gen_4312(std::span<const Value> S, std::span<const Value> T, Value n_sets);

/// pattern in {3142, 2143}; a permutation of [4 n_sets], segments Alice, Bob, Alice.
DisjInstance gen_3142_2143(const Pattern& pattern, std::span<const Value> S, std::span<const Value> T,
                           Value n_sets);

/// Dispatches on pattern to the generator above that builds it.
DisjInstance gen_disj(const Pattern& pattern, std::span<const Value> S, std::span<const Value> T, Value n_sets);

/// Patterns gen_disj can build.
std::vector<Pattern> disj_patterns();

/// Lower-bound pair for 12...k. alpha(rho) lists the odd values of [n] not in
/// rho in decreasing order, then rho. With a second sequence sigma, an even
/// suffix beta distinguishes them: exactly one of alpha(rho) beta and
/// alpha(sigma) beta contains 12...k.
struct MonotoneLowerBound {
    std::vector<Value> accepting_rho;  // after normalization: r_i < s_i at the first difference
    StreamInstance alpha;              // alpha(rho) alone, odd values only
    std::optional<StreamInstance> accepting;  // alpha(rho) beta
    std::optional<StreamInstance> rejecting;  // alpha(sigma) beta
    std::vector<Value> beta;
    bool swapped = false;  // true when the caller's sigma became the accepting side
};

/// rho (and sigma) must be increasing odd values in [n] starting at 1 with
/// length k - 2; n must be even. Throws std::invalid_argument on shape
/// violations, including rho == sigma.
MonotoneLowerBound gen_monotone_lb(std::size_t k, Value n, std::span<const Value> rho,
                                   std::optional<std::span<const Value>> sigma = std::nullopt);

/// tau over [n] -> tau' over [2n]: each value doubled in order, then 1, 3, ...,
/// 2n - 1. For a pattern px whose last two entries descend, tau contains p
/// iff tau' contains px.
StreamInstance extend_stream(const StreamInstance& inst);

/// The same transform one value at a time.
class StreamExtender {
public:
    explicit StreamExtender(Value n) : n_(n) {}

    Value push(Value v) const { return 2 * v; }
    std::vector<Value> finish() const;
    Value extended_universe() const { return 2 * n_; }

private:
    Value n_;
};

/// Uniform random subset of [n] (each element with probability 1/2), sorted.
std::vector<Value> random_subset(Value n, std::mt19937_64& rng);

}  // namespace ppm
