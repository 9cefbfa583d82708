#include "ppm/oracle.hpp"

#include <algorithm>
#include <limits>

namespace ppm {

namespace {

constexpr Value kNoLow = std::numeric_limits<Value>::min();
constexpr Value kNoHigh = std::numeric_limits<Value>::max();

// Backtracking matcher. At depth j the chosen entries fix an open value
// interval (low, high) for the next entry; positions are tried left to right,
// so the first full match found is the lexicographically smallest one.
class Matcher {
public:
    Matcher(std::span<const Value> seq, const Pattern& pattern)
        : seq_(seq), pattern_(pattern), chosen_(pattern.size()), positions_(pattern.size()) {}

    bool find(std::size_t depth = 0, std::size_t start = 0) {
        const std::size_t k = pattern_.size();
        if (depth == k) return true;
        const auto [low, high] = bounds(depth);
        for (std::size_t i = start; i + (k - depth) <= seq_.size(); ++i) {
            const Value v = seq_[i];
            if (v <= low || v >= high) continue;
            chosen_[depth] = v;
            positions_[depth] = i;
            if (find(depth + 1, i + 1)) return true;
        }
        return false;
    }

    BigCount count(std::size_t depth = 0, std::size_t start = 0) {
        const std::size_t k = pattern_.size();
        const auto [low, high] = bounds(depth);
        if (depth + 1 == k) {
            std::uint64_t leaves = 0;
            for (std::size_t i = start; i < seq_.size(); ++i) leaves += (seq_[i] > low && seq_[i] < high);
            return BigCount(leaves);
        }
        BigCount total = 0;
        for (std::size_t i = start; i + (k - depth) <= seq_.size(); ++i) {
            const Value v = seq_[i];
            if (v <= low || v >= high) continue;
            chosen_[depth] = v;
            total += count(depth + 1, i + 1);
        }
        return total;
    }

    Occurrence occurrence() const {
        Occurrence occ;
        for (std::size_t j = 0; j < pattern_.size(); ++j) {
            occ.positions.push_back(positions_[j] + 1);
            occ.values.push_back(chosen_[j]);
        }
        return occ;
    }

private:
    std::pair<Value, Value> bounds(std::size_t depth) const {
        Value low = kNoLow;
        Value high = kNoHigh;
        for (std::size_t l = 0; l < depth; ++l) {
            if (pattern_[l] < pattern_[depth]) {
                low = std::max(low, chosen_[l]);
            } else {
                high = std::min(high, chosen_[l]);
            }
        }
        return {low, high};
    }

    std::span<const Value> seq_;
    const Pattern& pattern_;
    std::vector<Value> chosen_;
    std::vector<std::size_t> positions_;
};

bool prefix_completable(std::span<const Value> head, std::span<const Value> tail_values, const Pattern& pattern) {
    // An occurrence of pattern[0..k-2] in `head` whose last entry can be filled
    // by some value of `tail_values` (all of which come later in the stream).
    const std::size_t k = pattern.size();
    if (k == 1) return !tail_values.empty();
    // Enumerate occurrences of the k-1 prefix and test whether the open interval
    // required for the last entry contains a tail value.
    std::vector<Value> sorted_tail(tail_values.begin(), tail_values.end());
    std::sort(sorted_tail.begin(), sorted_tail.end());
    std::vector<Value> chosen(k - 1);
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> bool {
        if (depth == k - 1) {
            Value low = kNoLow;
            Value high = kNoHigh;
            for (std::size_t l = 0; l + 1 < k; ++l) {
                if (pattern[l] < pattern[k - 1]) low = std::max(low, chosen[l]);
                else high = std::min(high, chosen[l]);
            }
            auto it = std::upper_bound(sorted_tail.begin(), sorted_tail.end(), low);
            return it != sorted_tail.end() && *it < high;
        }
        Value low = kNoLow;
        Value high = kNoHigh;
        for (std::size_t l = 0; l < depth; ++l) {
            if (pattern[l] < pattern[depth]) low = std::max(low, chosen[l]);
            else high = std::min(high, chosen[l]);
        }
        for (std::size_t i = start; i < head.size(); ++i) {
            if (head[i] <= low || head[i] >= high) continue;
            chosen[depth] = head[i];
            if (self(self, depth + 1, i + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

std::vector<Value> values_missing_from(std::span<const Value> part, Value n) {
    std::vector<bool> present(static_cast<std::size_t>(n) + 1, false);
    for (Value v : part) present[static_cast<std::size_t>(v)] = true;
    std::vector<Value> missing;
    for (Value v = 1; v <= n; ++v) {
        if (!present[static_cast<std::size_t>(v)]) missing.push_back(v);
    }
    return missing;
}

void require_split(const SplitInput& input, const Pattern& pattern) {
    if (pattern.size() > 3) {
        throw std::invalid_argument("split_protocol: the one-bit protocol needs |pattern| <= 3");
    }
    StreamInstance whole{input.n, StreamMode::Permutation, input.prefix};
    whole.elements.insert(whole.elements.end(), input.suffix.begin(), input.suffix.end());
    require_valid_stream(whole);
}

}  // namespace

std::optional<Occurrence> find_first_occurrence(std::span<const Value> seq, const Pattern& pattern) {
    Matcher m(seq, pattern);
    if (!m.find()) return std::nullopt;
    return m.occurrence();
}

std::optional<Occurrence> contains_bruteforce(const StreamInstance& inst, const Pattern& pattern) {
    require_valid_stream(inst);
    return find_first_occurrence(inst.elements, pattern);
}

BigCount count_occurrences(std::span<const Value> seq, const Pattern& pattern) {
    if (seq.size() < pattern.size()) return 0;
    Matcher m(seq, pattern);
    return m.count();
}

BigCount count_occurrences(const StreamInstance& inst, const Pattern& pattern) {
    require_valid_stream(inst);
    return count_occurrences(std::span<const Value>(inst.elements), pattern);
}

std::size_t longest_increasing_subsequence(std::span<const Value> seq) {
    std::vector<Value> tails;
    for (Value v : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end()) tails.push_back(v);
        else *it = v;
    }
    return tails.size();
}

bool split_alice_bit(const SplitInput& input, const Pattern& pattern) {
    if (find_first_occurrence(input.prefix, pattern)) return true;
    // Alice knows Val(suffix) as the complement of her own values.
    const auto bob_values = values_missing_from(input.prefix, input.n);
    return prefix_completable(input.prefix, bob_values, pattern);
}

bool split_bob_accepts(const SplitInput& input, const Pattern& pattern, bool alice_bit) {
    if (alice_bit) return true;
    if (find_first_occurrence(input.suffix, pattern)) return true;
    // Occurrences with only the first entry in the prefix: reverse the stream
    // and pattern so the missing entry becomes the last one.
    const auto alice_values = values_missing_from(input.suffix, input.n);
    const auto reversed_suffix = reverse(input.suffix);
    const Pattern reversed_pattern(reverse(pattern.values()));
    return prefix_completable(reversed_suffix, alice_values, reversed_pattern);
}

bool split_protocol(const SplitInput& input, const Pattern& pattern) {
    require_split(input, pattern);
    return split_bob_accepts(input, pattern, split_alice_bit(input, pattern));
}

}  // namespace ppm
