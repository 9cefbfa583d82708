#include "ppm/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace ppm {

namespace {

void require_distinct(std::span<const Value> s, const char* what) {
    std::unordered_set<Value> seen;
    seen.reserve(s.size());
    for (Value v : s) {
        if (!seen.insert(v).second) {
            throw std::invalid_argument(std::string(what) + ": duplicate entry " + std::to_string(v));
        }
    }
}

PatternKind kind_of(std::span<const Value> values) {
    const auto k = static_cast<Value>(values.size());
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        increasing = increasing && values[i] == static_cast<Value>(i) + 1;
        decreasing = decreasing && values[i] == k - static_cast<Value>(i);
    }
    if (increasing) return PatternKind::Increasing;
    if (decreasing) return PatternKind::Decreasing;
    if (k == 3) return PatternKind::NonMonotone3;
    return PatternKind::Other;
}

}  // namespace

std::string_view to_string(PatternKind kind) {
    switch (kind) {
        case PatternKind::Increasing: return "increasing";
        case PatternKind::Decreasing: return "decreasing";
        case PatternKind::NonMonotone3: return "non-monotone-3";
        case PatternKind::Other: return "other";
    }
    return "?";
}

Pattern::Pattern(std::vector<Value> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("pattern: empty");
    std::vector<bool> hit(values_.size() + 1, false);
    for (Value v : values_) {
        if (v < 1 || v > static_cast<Value>(values_.size()) || hit[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("pattern: not a permutation of [" +
                                        std::to_string(values_.size()) + "]");
        }
        hit[static_cast<std::size_t>(v)] = true;
    }
    kind_ = kind_of(values_);
}

Pattern Pattern::parse(std::string_view text) {
    std::vector<Value> values;
    if (text.find(',') != std::string_view::npos) {
        values = parse_value_list(text);
    } else {
        for (char c : text) {
            if (c < '1' || c > '9') {
                throw std::invalid_argument("pattern: bad digit in '" + std::string(text) + "'");
            }
            values.push_back(c - '0');
        }
    }
    return Pattern(std::move(values));
}

std::string Pattern::to_string() const {
    if (values_.size() <= 9) {
        std::string out;
        for (Value v : values_) out.push_back(static_cast<char>('0' + v));
        return out;
    }
    return format_value_list(values_);
}

Pattern classify_pattern(std::span<const Value> values) {
    return Pattern(std::vector<Value>(values.begin(), values.end()));
}

std::string_view to_string(StreamMode mode) {
    return mode == StreamMode::Permutation ? "perm" : "seq";
}

StreamMode parse_stream_mode(std::string_view text) {
    if (text == "perm") return StreamMode::Permutation;
    if (text == "seq") return StreamMode::DistinctSequence;
    throw std::invalid_argument("stream mode must be 'perm' or 'seq', got '" + std::string(text) + "'");
}

Validation validate_stream(const StreamInstance& inst) {
    if (inst.n < 1) return {false, "universe size n must be positive"};
    std::vector<bool> seen(static_cast<std::size_t>(inst.n) + 1, false);
    for (std::size_t i = 0; i < inst.elements.size(); ++i) {
        const Value v = inst.elements[i];
        if (v < 1 || v > inst.n) {
            return {false, "value " + std::to_string(v) + " at position " + std::to_string(i + 1) +
                               " outside [1," + std::to_string(inst.n) + "]"};
        }
        if (seen[static_cast<std::size_t>(v)]) {
            return {false, "duplicate value " + std::to_string(v) + " at position " + std::to_string(i + 1)};
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    if (inst.mode == StreamMode::Permutation && inst.elements.size() != static_cast<std::size_t>(inst.n)) {
        return {false, "permutation of [" + std::to_string(inst.n) + "] needs " + std::to_string(inst.n) +
                           " elements, got " + std::to_string(inst.elements.size())};
    }
    return {};
}

void require_valid_stream(const StreamInstance& inst) {
    if (auto v = validate_stream(inst); !v) throw std::invalid_argument("invalid stream: " + v.reason);
}

bool is_order_isomorphic(std::span<const Value> a, std::span<const Value> b) {
    require_distinct(a, "is_order_isomorphic");
    require_distinct(b, "is_order_isomorphic");
    if (a.size() != b.size()) return false;
    // With distinct entries, equal rank vectors is the same as agreeing on every pair.
    return rank_normalize(a) == rank_normalize(b);
}

std::vector<Value> complement(std::span<const Value> s, Value n) {
    require_distinct(s, "complement");
    std::vector<Value> out;
    out.reserve(s.size());
    for (Value v : s) {
        if (v < 1 || v > n) {
            throw std::invalid_argument("complement: entry " + std::to_string(v) + " outside [1," +
                                        std::to_string(n) + "]");
        }
        out.push_back(n + 1 - v);
    }
    return out;
}

std::vector<Value> reverse(std::span<const Value> s) { return {s.rbegin(), s.rend()}; }

std::vector<Value> rank_normalize(std::span<const Value> s) {
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return s[i] < s[j]; });
    std::vector<Value> ranks(s.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && s[order[r]] == s[order[r - 1]]) {
            throw std::invalid_argument("rank_normalize: duplicate entry " + std::to_string(s[order[r]]));
        }
        ranks[order[r]] = static_cast<Value>(r) + 1;
    }
    return ranks;
}

std::vector<Value> parse_value_list(std::string_view text) {
    std::vector<Value> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(pos, end - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item.empty()) {
            if (end == text.size() && out.empty() && pos == 0) break;
            throw std::invalid_argument("empty item in list '" + std::string(text) + "'");
        }
        Value v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw std::invalid_argument("not an integer: '" + std::string(item) + "'");
        }
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

std::string format_value_list(std::span<const Value> values, std::string_view sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << sep;
        os << values[i];
    }
    return os.str();
}

}  // namespace ppm
