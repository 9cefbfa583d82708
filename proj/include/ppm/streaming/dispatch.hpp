#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>

#include "ppm/streaming/adapters.hpp"
#include "ppm/streaming/detector.hpp"

namespace ppm {

enum class Algorithm { Auto, Monotone, Detector312, Strip, Baseline };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

/// An explicitly requested algorithm cannot serve the pattern or stream mode.
class DispatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Picks the detector for a pattern:
///   12..k, k..21          -> MonotoneDetector (decreasing via complement)
///   312 / 132             -> Detector312 / complement(Detector312)
///   213 / 231             -> StripDetector / complement(StripDetector)
///   anything else         -> baseline, with a warning that linear space is
///                            unavoidable for it
/// Size-3 non-monotone patterns on distinct-sequence input also fall back to
/// the baseline. Patterns longer than n reject without reading.
std::unique_ptr<Detector> make_detector(const Pattern& pattern, Value n, StreamMode mode,
                                        Algorithm algorithm = Algorithm::Auto);

/// Pushes until acceptance or the end of `values`, then finishes.
DetectorReport run_detector(Detector& detector, std::span<const Value> values);

/// Validates the stream and runs the dispatched detector on it.
DetectorReport detect(const StreamInstance& inst, const Pattern& pattern, Algorithm algorithm = Algorithm::Auto);

/// Full-storage reference detector.
DetectorReport baseline_detect(const StreamInstance& inst, const Pattern& pattern);

}  // namespace ppm
