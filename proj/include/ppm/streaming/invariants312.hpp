#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/streaming/detector312.hpp"

namespace ppm::debug {

// Debug harness for Detector312. The harness, not the detector, retains the
// prefix read so far; each check returns a description of the first
// violation, or nullopt.

/// Invariants that follow from the prefix alone: h is the prefix maximum;
/// A is exactly the prefix values above h - k; every pair (a, b) in D has
/// a - b >= k with a read before b; pair intervals are pairwise disjoint;
/// |A| <= k and |D| <= ceil(n / k).
std::optional<std::string> check_prefix_invariants(const Detector312& d, std::span<const Value> prefix);

/// Invariants that refer to the whole input permutation.
class FullInputInvariants {
public:
    explicit FullInputInvariants(std::span<const Value> input);

    /// No decreasing pair (a, b) of the prefix with a > b > h - k extends to
    /// a 312 later in the input, and every decreasing pair of the prefix that
    /// does extend lies inside a single interval of D.
    std::optional<std::string> check(const Detector312& d, std::size_t prefix_length) const;

private:
    std::vector<Value> input_;
    std::vector<Value> max_before_;    // largest value strictly before position i (0 if none)
    std::vector<bool> extends_;        // (max_before_[i], input_[i]) extends to a 312
};

}  // namespace ppm::debug
