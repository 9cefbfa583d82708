#include "ppm/workloads.hpp"

#include <algorithm>
#include <numeric>

namespace ppm {

std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t trial) {
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<Value> random_permutation(Value n, std::mt19937_64& rng) {
    std::vector<Value> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), Value{1});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

namespace {

// Fills out[..] with an avoider of the values [lo, lo + len) using the split
// around the minimum. `low_first` puts the block of values just above the
// minimum before it (312-avoiders) or after it (213-avoiders).
void build_avoider(Value lo, Value len, bool low_first, std::mt19937_64& rng, std::vector<Value>& out) {
    struct Task {
        Value lo;
        Value len;
        bool emit_min;
        Value min_value;
    };
    std::vector<Task> stack{{lo, len, false, 0}};
    while (!stack.empty()) {
        Task t = stack.back();
        stack.pop_back();
        if (t.emit_min) {
            out.push_back(t.min_value);
            continue;
        }
        if (t.len == 0) continue;
        std::uniform_int_distribution<Value> split(0, t.len - 1);
        const Value left = split(rng);
        const Value right = t.len - 1 - left;
        // Values above the minimum: t.lo + 1 .. t.lo + len - 1.
        Task left_task;
        Task right_task;
        if (low_first) {
            left_task = {t.lo + 1, left, false, 0};
            right_task = {t.lo + 1 + left, right, false, 0};
        } else {
            left_task = {t.lo + 1 + right, left, false, 0};
            right_task = {t.lo + 1, right, false, 0};
        }
        // Processed in order: left block, minimum, right block.
        stack.push_back(right_task);
        stack.push_back({0, 0, true, t.lo});
        stack.push_back(left_task);
    }
}

}  // namespace

std::vector<Value> random_312_avoider(Value n, std::mt19937_64& rng) {
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(n));
    build_avoider(1, n, true, rng, out);
    return out;
}

std::vector<Value> random_213_avoider(Value n, std::mt19937_64& rng) {
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(n));
    build_avoider(1, n, false, rng, out);
    return out;
}

std::vector<std::vector<Value>> all_subsets(Value n) {
    std::vector<std::vector<Value>> out;
    const std::uint64_t count = std::uint64_t{1} << n;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<Value> s;
        for (Value i = 0; i < n; ++i) {
            if (mask >> i & 1u) s.push_back(i + 1);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ppm
