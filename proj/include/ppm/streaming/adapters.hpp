#pragma once

#include <memory>

#include "ppm/streaming/detector.hpp"

namespace ppm {

/// Runs `inner` on the complemented stream v -> n + 1 - v. A detector for a
/// pattern then detects its complement; reported occurrence values are mapped
/// back to the original stream.
class ComplementAdapter final : public Detector {
public:
    explicit ComplementAdapter(std::unique_ptr<Detector> inner);

    std::string name() const override { return "complement(" + inner_->name() + ")"; }
    SpaceSample space() const override { return inner_->space(); }
    const Detector& inner() const { return *inner_; }

protected:
    StepResult on_push(Value v) override;
    StepResult on_finish() override;

private:
    StepResult map_back(StepResult r) const;

    std::unique_ptr<Detector> inner_;
};

/// Stores the entire stream and answers with the exhaustive oracle at finish.
class BaselineDetector final : public Detector {
public:
    BaselineDetector(std::vector<Value> pattern, Value n, StreamMode mode);

    std::string name() const override { return "baseline"; }
    SpaceSample space() const override;

protected:
    StepResult on_push(Value v) override;
    StepResult on_finish() override;

private:
    std::vector<Value> pattern_;
    std::vector<Value> stored_;
};

/// Pattern longer than the universe: no occurrence can fit.
class RejectingDetector final : public Detector {
public:
    RejectingDetector(Value n, StreamMode mode) : Detector(n, mode) {}

    std::string name() const override { return "reject"; }
    SpaceSample space() const override { return {}; }

protected:
    StepResult on_push(Value) override { return StepResult::cont(); }
};

}  // namespace ppm
