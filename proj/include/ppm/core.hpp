#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppm {

// Values and positions are 1-based throughout; a stream over [n] holds values 1..n.
using Value = std::int64_t;
using Index = std::size_t;

enum class PatternKind { Increasing, Decreasing, NonMonotone3, Other };

std::string_view to_string(PatternKind kind);

/// A pattern permutation of [k] together with its shape class.
class Pattern {
public:
    /// Throws std::invalid_argument unless `values` is a permutation of [k], k >= 1.
    explicit Pattern(std::vector<Value> values);

    /// Parses "4231" (compact digits, k <= 9) or "1,2,10,3,...".
    static Pattern parse(std::string_view text);

    std::span<const Value> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    Value operator[](std::size_t i) const { return values_[i]; }
    PatternKind kind() const { return kind_; }
    bool is_monotone() const {
        return kind_ == PatternKind::Increasing || kind_ == PatternKind::Decreasing;
    }

    /// Compact digit string for k <= 9, comma separated otherwise.
    std::string to_string() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    std::vector<Value> values_;
    PatternKind kind_;
};

Pattern classify_pattern(std::span<const Value> values);

enum class StreamMode { Permutation, DistinctSequence };

std::string_view to_string(StreamMode mode);
StreamMode parse_stream_mode(std::string_view text);

struct StreamInstance {
    Value n = 0;
    StreamMode mode = StreamMode::Permutation;
    std::vector<Value> elements;

    friend bool operator==(const StreamInstance&, const StreamInstance&) = default;
};

struct Validation {
    bool ok = true;
    std::string reason;

    explicit operator bool() const { return ok; }
};

/// Checks the StreamInstance invariants; never throws.
Validation validate_stream(const StreamInstance& inst);

/// Throws std::invalid_argument carrying the diagnostic when `inst` is invalid.
void require_valid_stream(const StreamInstance& inst);

struct Point {
    Index x = 0;
    Value y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Positions into the stream (1-based) and the values found there. A detector
/// that deduces a later value from the permutation promise marks the final
/// position as kFuturePosition.
struct Occurrence {
    static constexpr Index kFuturePosition = 0;

    std::vector<Index> positions;
    std::vector<Value> values;

    bool has_future() const {
        return !positions.empty() && positions.back() == kFuturePosition;
    }

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Throws std::invalid_argument if either sequence has a repeated entry.
bool is_order_isomorphic(std::span<const Value> a, std::span<const Value> b);

/// Maps every entry i to n + 1 - i. Throws if an entry lies outside [n] or repeats.
std::vector<Value> complement(std::span<const Value> s, Value n);

std::vector<Value> reverse(std::span<const Value> s);

/// Replaces each value by its rank (1 = smallest). Entries must be distinct.
std::vector<Value> rank_normalize(std::span<const Value> s);

/// Parses "1,3,5" (empty string gives an empty list).
std::vector<Value> parse_value_list(std::string_view text);
std::string format_value_list(std::span<const Value> values, std::string_view sep = ",");

}  // namespace ppm
