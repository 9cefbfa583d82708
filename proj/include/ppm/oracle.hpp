#pragma once

#include <optional>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppm/core.hpp"

namespace ppm {

using BigCount = boost::multiprecision::cpp_int;

// Exhaustive reference semantics. Cost is O(n^k) in the worst case, so these
// are meant for desk-scale inputs and for cross-checking the detectors.

/// Lexicographically smallest occurrence (by position tuple), if any.
std::optional<Occurrence> find_first_occurrence(std::span<const Value> seq, const Pattern& pattern);

/// Validates `inst`, then searches it.
std::optional<Occurrence> contains_bruteforce(const StreamInstance& inst, const Pattern& pattern);

BigCount count_occurrences(std::span<const Value> seq, const Pattern& pattern);
BigCount count_occurrences(const StreamInstance& inst, const Pattern& pattern);

/// Length of a longest increasing subsequence (patience sorting).
std::size_t longest_increasing_subsequence(std::span<const Value> seq);

/// One-way two-party split: Alice holds the prefix, Bob the suffix of a
/// permutation of [n].
struct SplitInput {
    std::vector<Value> prefix;
    std::vector<Value> suffix;
    Value n = 0;
};

/// Alice's single message: the pattern occurs within the prefix, or all but
/// its last entry occur there and the last can be any value Bob holds.
bool split_alice_bit(const SplitInput& input, const Pattern& pattern);

/// Bob's decision given Alice's bit: accept on her bit, on an occurrence in
/// the suffix, or on one whose first entry can be any value Alice holds.
bool split_bob_accepts(const SplitInput& input, const Pattern& pattern, bool alice_bit);

/// Runs the protocol. Throws for patterns longer than 3 or invalid input.
bool split_protocol(const SplitInput& input, const Pattern& pattern);

}  // namespace ppm
