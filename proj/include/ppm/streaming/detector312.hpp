#pragma once

#include <map>
#include <utility>

#include "ppm/streaming/detector.hpp"

namespace ppm {

/// max(1, floor(sqrt(n * log2 n))): the width of the high-value window.
Value window_width_312(Value n);

/// Membership bits for the values in the window (h - width, h]. Value v lives
/// in slot v mod width, which is unique inside any window of that width.
class SlidingWindowBits {
public:
    explicit SlidingWindowBits(Value width) : width_(width), bits_(static_cast<std::size_t>(width), false) {}

    Value width() const { return width_; }
    std::size_t count() const { return count_; }

    bool test(Value v) const { return bits_[slot(v)]; }
    void set(Value v);

    /// Moves the window top from `old_top` to `new_top` > old_top, clearing
    /// every value that falls out.
    void slide(Value old_top, Value new_top);

private:
    std::size_t slot(Value v) const { return static_cast<std::size_t>(v % width_); }

    Value width_;
    std::vector<bool> bits_;
    std::size_t count_ = 0;
};

/// One-pass 312 detector in O(sqrt(n log n)) space for permutations of [n].
///
/// State: the highest value h, the window set A of values seen in
/// (h - k, h], and a set D of decreasing pairs (a, b) with a - b >= k whose
/// value intervals [b, a] are pairwise disjoint. Acceptance via the window
/// may name a value that has not been read yet; the permutation promise
/// guarantees it arrives later, and the occurrence marks it as future.
class Detector312 final : public Detector {
public:
    enum class Rule { None, PairInD, GapInWindow };

    struct PairEntry {
        Value a = 0;
        Index a_pos = 0;
        Index b_pos = 0;
    };

    explicit Detector312(Value n);
    /// Fixed window width instead of the default; width >= 1.
    Detector312(Value n, Value width);

    std::string name() const override { return "312"; }
    SpaceSample space() const override;

    Value high() const { return h_; }
    Value width() const { return k_; }
    /// Window members in increasing order.
    std::vector<Value> window_members() const;
    bool in_window_set(Value v) const;
    /// D as (a, b) pairs ordered by b.
    std::vector<std::pair<Value, Value>> pairs() const;
    std::size_t pair_count() const { return d_.size(); }
    std::size_t window_count() const { return a_.count(); }
    /// Which rule accepted, if any.
    Rule accepting_rule() const { return rule_; }

protected:
    StepResult on_push(Value v) override;

private:
    Value k_;
    Value h_ = 0;
    Index h_pos_ = 0;
    SlidingWindowBits a_;
    std::map<Value, PairEntry> d_;  // keyed by the low value b
    Rule rule_ = Rule::None;
};

}  // namespace ppm
