#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

enum class StepStatus { Continue, Accepted };

struct StepResult {
    StepStatus status = StepStatus::Continue;
    std::optional<Occurrence> occurrence;

    bool accepted() const { return status == StepStatus::Accepted; }

    static StepResult cont() { return {}; }
    static StepResult accept(std::optional<Occurrence> occ = std::nullopt) {
        return {StepStatus::Accepted, std::move(occ)};
    }
};

// Space is accounted in cells: one stored value, point, or pair entry, each
// Θ(log n) bits. Bit estimates add the widths of any bit arrays.
struct StructureSize {
    std::string_view name;
    std::size_t cells = 0;
};

struct SpaceSample {
    std::array<StructureSize, 4> parts{};
    std::size_t used = 0;
    std::size_t bits = 0;

    void add(std::string_view name, std::size_t cells) { parts[used++] = {name, cells}; }
    std::size_t cells() const {
        std::size_t total = 0;
        for (std::size_t i = 0; i < used; ++i) total += parts[i].cells;
        return total;
    }
};

struct DetectorReport {
    bool verdict = false;
    std::optional<Occurrence> occurrence;
    std::size_t peak_cells = 0;
    std::size_t peak_bits = 0;
    std::map<std::string, std::size_t> structure_peaks;  // per-structure maximum over the run
    std::map<std::string, std::size_t> cells_at_peak;    // breakdown at the step peak_cells was reached
    std::size_t pushes = 0;
};

/// Bits needed for one cell holding a value or position in [n].
std::size_t cell_bits(Value n);

/// One-pass detector contract: push values one at a time, then finish.
///
/// The base class guards the stream (range, duplicates, call order) and tracks
/// space peaks. The duplicate guard keeps an n-bit seen-set that is not part
/// of any algorithm and is excluded from the accounting.
class Detector {
public:
    Detector(Value n, StreamMode mode);
    virtual ~Detector() = default;

    Detector(const Detector&) = delete;
    Detector& operator=(const Detector&) = delete;

    /// Throws std::invalid_argument for an out-of-range or repeated value and
    /// std::logic_error after acceptance or finish.
    StepResult push(Value v);

    /// Runs end-of-input checks. In permutation mode a non-accepting detector
    /// must have seen all n values (or none).
    DetectorReport finish();

    virtual std::string name() const = 0;
    virtual SpaceSample space() const = 0;

    Value universe() const { return n_; }
    StreamMode mode() const { return mode_; }
    Index pushes() const { return pushes_; }
    bool accepted() const { return accepted_; }
    bool finished() const { return finished_; }

    const std::string& warning() const { return warning_; }
    void set_warning(std::string text) { warning_ = std::move(text); }

protected:
    virtual StepResult on_push(Value v) = 0;
    virtual StepResult on_finish() { return StepResult::cont(); }

private:
    void sample_space();
    void record(StepResult&& result);

    Value n_;
    StreamMode mode_;
    std::vector<bool> seen_;
    Index pushes_ = 0;
    bool accepted_ = false;
    bool finished_ = false;
    std::optional<Occurrence> occurrence_;
    std::string warning_;
    std::size_t peak_cells_ = 0;
    std::size_t peak_bits_ = 0;
    std::map<std::string, std::size_t, std::less<>> structure_peaks_;
    std::map<std::string, std::size_t> cells_at_peak_;
};

}  // namespace ppm
