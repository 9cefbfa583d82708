#include "ppm/streaming/invariants312.hpp"

#include <algorithm>
#include <set>

namespace ppm::debug {

std::optional<std::string> check_prefix_invariants(const Detector312& d, std::span<const Value> prefix) {
    const Value k = d.width();
    const Value n = d.universe();
    if (prefix.empty()) return std::nullopt;

    const Value max_value = *std::max_element(prefix.begin(), prefix.end());
    if (d.high() != max_value) {
        return "(i) h=" + std::to_string(d.high()) + " but prefix maximum is " + std::to_string(max_value);
    }

    std::vector<Value> expected;
    for (Value v : prefix) {
        if (v > d.high() - k) expected.push_back(v);
    }
    std::sort(expected.begin(), expected.end());
    if (d.window_members() != expected) return std::string("(ii) window set differs from prefix values above h-k");

    std::vector<Index> pos(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < prefix.size(); ++i) pos[static_cast<std::size_t>(prefix[i])] = i + 1;

    const auto pairs = d.pairs();
    for (const auto& [a, b] : pairs) {
        if (a - b < k) return "(iv) pair (" + std::to_string(a) + "," + std::to_string(b) + ") closer than k";
        const Index pa = pos[static_cast<std::size_t>(a)];
        const Index pb = pos[static_cast<std::size_t>(b)];
        if (pa == 0 || pb == 0 || pa >= pb) {
            return "(iv) pair (" + std::to_string(a) + "," + std::to_string(b) + ") is not a decreasing pair of the prefix";
        }
    }
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i - 1].first >= pairs[i].second) return std::string("(v) pair intervals overlap");
    }

    if (static_cast<Value>(d.window_count()) > k) return std::string("|A| exceeds k");
    if (static_cast<Value>(pairs.size()) > (n + k - 1) / k) return std::string("|D| exceeds ceil(n/k)");
    return std::nullopt;
}

FullInputInvariants::FullInputInvariants(std::span<const Value> input)
    : input_(input.begin(), input.end()), max_before_(input.size(), 0), extends_(input.size(), false) {
    Value running = 0;
    for (std::size_t i = 0; i < input_.size(); ++i) {
        max_before_[i] = running;
        running = std::max(running, input_[i]);
    }
    // Smallest later value above input_[i]; the pair extends iff it is below the
    // largest earlier value.
    std::set<Value> later;
    for (std::size_t i = input_.size(); i-- > 0;) {
        auto it = later.upper_bound(input_[i]);
        extends_[i] = it != later.end() && *it < max_before_[i];
        later.insert(input_[i]);
    }
}

std::optional<std::string> FullInputInvariants::check(const Detector312& d, std::size_t prefix_length) const {
    const auto pairs = d.pairs();  // ordered by b
    for (std::size_t i = 0; i < prefix_length; ++i) {
        if (!extends_[i]) continue;
        const Value b = input_[i];
        const Value a = max_before_[i];
        if (b > d.high() - d.width()) {
            return "(iii) pair (" + std::to_string(a) + "," + std::to_string(b) + ") inside the window extends to 312";
        }
        auto it = std::upper_bound(pairs.begin(), pairs.end(), b,
                                   [](Value value, const auto& pr) { return value < pr.second; });
        if (it == pairs.begin() || std::prev(it)->first < a) {
            return "(vi) pair (" + std::to_string(a) + "," + std::to_string(b) + ") extends to 312 but no pair of D covers it";
        }
    }
    return std::nullopt;
}

}  // namespace ppm::debug
