#include "ppm/streaming/adapters.hpp"

#include "ppm/oracle.hpp"

namespace ppm {

ComplementAdapter::ComplementAdapter(std::unique_ptr<Detector> inner)
    : Detector(inner->universe(), inner->mode()), inner_(std::move(inner)) {}

StepResult ComplementAdapter::on_push(Value v) { return map_back(inner_->push(universe() + 1 - v)); }

StepResult ComplementAdapter::on_finish() {
    DetectorReport r = inner_->finish();
    if (!r.verdict) return StepResult::cont();
    return map_back(StepResult::accept(std::move(r.occurrence)));
}

StepResult ComplementAdapter::map_back(StepResult r) const {
    if (r.occurrence) {
        for (Value& v : r.occurrence->values) v = universe() + 1 - v;
    }
    return r;
}

BaselineDetector::BaselineDetector(std::vector<Value> pattern, Value n, StreamMode mode)
    : Detector(n, mode), pattern_(std::move(pattern)) {}

StepResult BaselineDetector::on_push(Value v) {
    stored_.push_back(v);
    return StepResult::cont();
}

StepResult BaselineDetector::on_finish() {
    if (auto occ = find_first_occurrence(stored_, Pattern(pattern_))) return StepResult::accept(std::move(occ));
    return StepResult::cont();
}

SpaceSample BaselineDetector::space() const {
    SpaceSample s;
    s.add("buffer", stored_.size());
    s.bits = stored_.size() * cell_bits(universe());
    return s;
}

}  // namespace ppm
