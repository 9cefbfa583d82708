#pragma once

#include <optional>
#include <span>

#include "ppm/streaming/detector.hpp"

namespace ppm {

/// Per-strip summary kept after the strip's points are discarded.
///
/// (ell, high, counter) watch for an earlier value falling between the lowest
/// left end and the highest right end of the strip's gap pairs;
/// (ell_prime, high_prime, counter_prime) watch the same for the strip's
/// lowest point and the highest point seen to its right.
struct StripRecord {
    std::optional<Point> ell;
    std::optional<Point> high;
    Value counter = 0;  // meaningful only when ell is set
    Point ell_prime;
    std::optional<Point> high_prime;
    Value counter_prime = 0;

    static constexpr std::size_t kCells = 6;

    /// Feeds a point read after this strip closed.
    void observe(const Point& p);
    /// End-of-input acceptance test for this strip.
    bool accepts() const;
};

namespace strip {

/// 213 inside one strip (O(s^2)).
bool contains_213(std::span<const Point> pts);

/// Lowest value that starts a decreasing pair inside the strip.
std::optional<Value> lowest_decreasing_start(std::span<const Point> pts);

/// (p, q) is a gap pair: p before q, p.y < q.y, and some value strictly
/// between them lies outside the strip. Decidable from the strip alone under
/// the permutation promise: it holds iff fewer than q.y - p.y - 1 strip
/// values lie strictly between.
bool is_gap_pair(const Point& p, const Point& q, std::span<const Point> pts);

/// Builds the record for a completed, non-empty strip.
StripRecord summarize(std::span<const Point> pts);

}  // namespace strip

/// floor(sqrt(n)), at least 1.
Value strip_size(Value n);

/// One-pass 213 detector in O(sqrt(n) log n) space for permutations of [n]
/// (231 goes through the complement adapter). Verdict only: acceptance at the
/// end of input is deduced from counts, so no occurrence is reported.
///
/// The input is cut into strips of floor(sqrt n) points. An occurrence is
/// caught by one of four checks depending on how it spreads over strips:
/// inside one strip (brute force at strip close); first two in one strip
/// (threshold L); last two in one strip (gap-pair counter); all in different
/// strips (lowest-point counter).
class StripDetector final : public Detector {
public:
    explicit StripDetector(Value n);

    std::string name() const override { return "213"; }
    SpaceSample space() const override;

    Value strip_width() const { return strip_size_; }
    Value threshold() const { return L_; }
    const std::vector<Point>& buffer() const { return buffer_; }
    const std::vector<StripRecord>& records() const { return records_; }

protected:
    StepResult on_push(Value v) override;
    StepResult on_finish() override;

private:
    StepResult close_strip();

    Value strip_size_;
    std::vector<Point> buffer_;
    Value L_;
    std::vector<StripRecord> records_;
};

}  // namespace ppm
