#pragma once

#include "ppm/streaming/detector.hpp"

namespace ppm {

/// Early-stopping longest-increasing-subsequence state for the pattern 12...k.
/// x[i] (0-based) is the smallest value seen so far that ends an increasing
/// subsequence of length exactly i + 1, or kUnset.
struct MonotoneState {
    static constexpr Value kUnset = 0;

    std::size_t k = 0;
    std::vector<Value> x;
    bool accepted = false;

    explicit MonotoneState(std::size_t length) : k(length), x(length, kUnset) {}

    std::size_t filled() const;
};

void monotone_step(MonotoneState& state, Value v);

/// Detects the increasing pattern of length k; decreasing patterns go through
/// the complement adapter.
class MonotoneDetector final : public Detector {
public:
    MonotoneDetector(std::size_t k, Value n, StreamMode mode);

    std::string name() const override { return "monotone"; }
    SpaceSample space() const override;
    const MonotoneState& state() const { return state_; }

protected:
    StepResult on_push(Value v) override;

private:
    MonotoneState state_;
};

}  // namespace ppm
