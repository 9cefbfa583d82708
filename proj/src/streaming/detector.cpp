#include "ppm/streaming/detector.hpp"

#include <bit>
#include <stdexcept>

namespace ppm {

std::size_t cell_bits(Value n) {
    return static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(n < 1 ? 1 : n)));
}

Detector::Detector(Value n, StreamMode mode) : n_(n), mode_(mode) {
    if (n < 1) throw std::invalid_argument("detector: universe size must be positive");
    seen_.assign(static_cast<std::size_t>(n) + 1, false);
}

StepResult Detector::push(Value v) {
    if (finished_) throw std::logic_error("detector: push after finish");
    if (accepted_) throw std::logic_error("detector: push after acceptance");
    if (v < 1 || v > n_) {
        throw std::invalid_argument("detector: value " + std::to_string(v) + " outside [1," +
                                    std::to_string(n_) + "]");
    }
    if (seen_[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("detector: duplicate value " + std::to_string(v));
    }
    seen_[static_cast<std::size_t>(v)] = true;
    ++pushes_;
    StepResult result = on_push(v);
    sample_space();
    StepResult copy = result;
    record(std::move(result));
    return copy;
}

DetectorReport Detector::finish() {
    if (finished_) throw std::logic_error("detector: finish called twice");
    if (!accepted_ && pushes_ > 0) {
        if (mode_ == StreamMode::Permutation && pushes_ != static_cast<Index>(n_)) {
            throw std::logic_error("detector: finish after " + std::to_string(pushes_) + " of " +
                                   std::to_string(n_) + " permutation values");
        }
        StepResult result = on_finish();
        sample_space();
        record(std::move(result));
    }
    finished_ = true;

    DetectorReport report;
    report.verdict = accepted_;
    report.occurrence = occurrence_;
    report.peak_cells = peak_cells_;
    report.peak_bits = peak_bits_;
    report.structure_peaks.insert(structure_peaks_.begin(), structure_peaks_.end());
    report.cells_at_peak = cells_at_peak_;
    report.pushes = pushes_;
    return report;
}

void Detector::sample_space() {
    const SpaceSample s = space();
    for (std::size_t i = 0; i < s.used; ++i) {
        auto it = structure_peaks_.find(s.parts[i].name);
        if (it == structure_peaks_.end()) {
            structure_peaks_.emplace(std::string(s.parts[i].name), s.parts[i].cells);
        } else if (s.parts[i].cells > it->second) {
            it->second = s.parts[i].cells;
        }
    }
    const std::size_t cells = s.cells();
    if (cells > peak_cells_ || cells_at_peak_.empty()) {
        peak_cells_ = std::max(peak_cells_, cells);
        cells_at_peak_.clear();
        for (std::size_t i = 0; i < s.used; ++i) cells_at_peak_[std::string(s.parts[i].name)] = s.parts[i].cells;
    }
    peak_bits_ = std::max(peak_bits_, s.bits);
}

void Detector::record(StepResult&& result) {
    if (result.accepted()) {
        accepted_ = true;
        occurrence_ = std::move(result.occurrence);
    }
}

}  // namespace ppm
