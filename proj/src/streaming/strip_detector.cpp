#include "ppm/streaming/strip_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppm {

void StripRecord::observe(const Point& p) {
    if (ell && ell->y < p.y && p.y < high->y) ++counter;
    if (ell_prime.y < p.y) {
        ++counter_prime;
        if (!high_prime || high_prime->y < p.y) high_prime = p;
    }
}

bool StripRecord::accepts() const {
    if (ell && counter < high->y - ell->y - 1) return true;
    return high_prime && counter_prime < high_prime->y - ell_prime.y;
}

namespace strip {

bool contains_213(std::span<const Point> pts) {
    // For each middle point q, take the smallest earlier value above q.y and
    // look for any later value above it.
    const std::size_t s = pts.size();
    std::vector<Value> suffix_max(s + 1, std::numeric_limits<Value>::min());
    for (std::size_t i = s; i-- > 0;) suffix_max[i] = std::max(suffix_max[i + 1], pts[i].y);
    for (std::size_t j = 1; j + 1 < s; ++j) {
        Value smallest_above = std::numeric_limits<Value>::max();
        for (std::size_t i = 0; i < j; ++i) {
            if (pts[i].y > pts[j].y) smallest_above = std::min(smallest_above, pts[i].y);
        }
        if (smallest_above != std::numeric_limits<Value>::max() && suffix_max[j + 1] > smallest_above) {
            return true;
        }
    }
    return false;
}

std::optional<Value> lowest_decreasing_start(std::span<const Point> pts) {
    std::optional<Value> best;
    Value suffix_min = std::numeric_limits<Value>::max();
    for (std::size_t i = pts.size(); i-- > 0;) {
        if (suffix_min < pts[i].y && (!best || pts[i].y < *best)) best = pts[i].y;
        suffix_min = std::min(suffix_min, pts[i].y);
    }
    return best;
}

bool is_gap_pair(const Point& p, const Point& q, std::span<const Point> pts) {
    if (!(p.x < q.x && p.y < q.y)) return false;
    Value inside = 0;
    for (const Point& r : pts) inside += (p.y < r.y && r.y < q.y);
    return inside < q.y - p.y - 1;
}

StripRecord summarize(std::span<const Point> pts) {
    StripRecord rec;
    const std::size_t s = pts.size();

    // Rank of each point among the strip's values; (p, q) with p.y < q.y is a
    // gap pair iff the value distance exceeds the rank distance.
    std::vector<std::size_t> order(s);
    for (std::size_t i = 0; i < s; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a].y < pts[b].y; });
    std::vector<Value> rank(s);
    for (std::size_t r = 0; r < s; ++r) rank[order[r]] = static_cast<Value>(r);

    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            const Point& p = pts[i];
            const Point& q = pts[j];
            if (p.y > q.y || q.y - p.y <= rank[j] - rank[i]) continue;
            if (!rec.ell || p.y < rec.ell->y) rec.ell = p;
            if (!rec.high || q.y > rec.high->y) rec.high = q;
        }
    }
    if (rec.ell) {
        for (const Point& r : pts) rec.counter += (rec.ell->y < r.y && r.y < rec.high->y);
    }

    std::size_t low = 0;
    for (std::size_t i = 1; i < s; ++i) {
        if (pts[i].y < pts[low].y) low = i;
    }
    rec.ell_prime = pts[low];
    for (std::size_t i = low + 1; i < s; ++i) {
        ++rec.counter_prime;
        if (!rec.high_prime || pts[i].y > rec.high_prime->y) rec.high_prime = pts[i];
    }
    return rec;
}

}  // namespace strip

Value strip_size(Value n) {
    auto s = static_cast<Value>(std::sqrt(static_cast<long double>(n)));
    while ((s + 1) * (s + 1) <= n) ++s;
    while (s > 1 && s * s > n) --s;
    return std::max<Value>(1, s);
}

StripDetector::StripDetector(Value n) : Detector(n, StreamMode::Permutation), strip_size_(strip_size(n)), L_(n) {
    buffer_.reserve(static_cast<std::size_t>(strip_size_));
}

StepResult StripDetector::on_push(Value v) {
    const Point p{pushes(), v};
    // A decreasing pair with a lower start than v already closed.
    if (v > L_) return StepResult::accept();
    for (StripRecord& rec : records_) rec.observe(p);
    buffer_.push_back(p);
    if (static_cast<Value>(buffer_.size()) == strip_size_) return close_strip();
    return StepResult::cont();
}

StepResult StripDetector::close_strip() {
    if (strip::contains_213(buffer_)) return StepResult::accept();
    if (auto start = strip::lowest_decreasing_start(buffer_); start && *start < L_) L_ = *start;
    records_.push_back(strip::summarize(buffer_));
    buffer_.clear();
    return StepResult::cont();
}

StepResult StripDetector::on_finish() {
    if (!buffer_.empty()) {
        if (auto r = close_strip(); r.accepted()) return r;
    }
    for (const StripRecord& rec : records_) {
        if (rec.accepts()) return StepResult::accept();
    }
    return StepResult::cont();
}

SpaceSample StripDetector::space() const {
    SpaceSample s;
    s.add("buffer", buffer_.size());
    s.add("strips", records_.size() * StripRecord::kCells);
    s.add("counters", 2);  // L and the position counter
    s.bits = (2 * buffer_.size() + records_.size() * 10 + 2) * cell_bits(universe());
    return s;
}

}  // namespace ppm
