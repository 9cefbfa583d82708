#include "ppm/streaming/monotone.hpp"

#include <stdexcept>

namespace ppm {

std::size_t MonotoneState::filled() const {
    std::size_t count = 0;
    while (count < k && x[count] != kUnset) ++count;
    return count;
}

void monotone_step(MonotoneState& state, Value v) {
    // Set entries are strictly increasing, so v lands in exactly one slot: the
    // first one that is unset or holds a larger value.
    for (std::size_t i = 0; i < state.k; ++i) {
        if (state.x[i] == MonotoneState::kUnset || v < state.x[i]) {
            state.x[i] = v;
            if (i + 1 == state.k) state.accepted = true;
            return;
        }
    }
}

MonotoneDetector::MonotoneDetector(std::size_t k, Value n, StreamMode mode)
    : Detector(n, mode), state_(k) {
    if (k == 0) throw std::invalid_argument("monotone detector: k must be positive");
}

StepResult MonotoneDetector::on_push(Value v) {
    monotone_step(state_, v);
    return state_.accepted ? StepResult::accept() : StepResult::cont();
}

SpaceSample MonotoneDetector::space() const {
    SpaceSample s;
    s.add("x-array", state_.filled());
    s.bits = state_.k * cell_bits(universe());
    return s;
}

}  // namespace ppm
