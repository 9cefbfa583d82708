#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

/// Independent per-trial seed derived from a run seed (splitmix64 mix).
std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t trial);

std::vector<Value> random_permutation(Value n, std::mt19937_64& rng);

/// Random permutation avoiding 312: 1 splits it into a 312-avoider of the
/// low values followed by one of the high values (tau = alpha 1 beta with
/// alpha < beta). Not uniform over avoiders.
std::vector<Value> random_312_avoider(Value n, std::mt19937_64& rng);

/// Random permutation avoiding 213 (tau = alpha 1 beta with alpha > beta).
std::vector<Value> random_213_avoider(Value n, std::mt19937_64& rng);

/// Calls f on every permutation of [n] in lexicographic order.
template <typename F>
void for_each_permutation(Value n, F&& f) {
    std::vector<Value> p(static_cast<std::size_t>(n));
    for (Value i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    do {
        f(static_cast<const std::vector<Value>&>(p));
    } while (std::next_permutation(p.begin(), p.end()));
}

/// All 2^n subsets of [n], as sorted lists, indexed by bitmask.
std::vector<std::vector<Value>> all_subsets(Value n);

}  // namespace ppm
