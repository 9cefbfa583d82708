#include "ppm/streaming/dispatch.hpp"

#include <string>

#include "ppm/streaming/detector312.hpp"
#include "ppm/streaming/monotone.hpp"
#include "ppm/streaming/strip_detector.hpp"

namespace ppm {

namespace {

bool is_pattern(const Pattern& p, std::initializer_list<Value> values) {
    return std::equal(p.values().begin(), p.values().end(), values.begin(), values.end());
}

std::unique_ptr<Detector> complemented(std::unique_ptr<Detector> inner) {
    return std::make_unique<ComplementAdapter>(std::move(inner));
}

std::unique_ptr<Detector> make_monotone(const Pattern& pattern, Value n, StreamMode mode) {
    auto d = std::make_unique<MonotoneDetector>(pattern.size(), n, mode);
    if (pattern.kind() == PatternKind::Decreasing && pattern.size() > 1) return complemented(std::move(d));
    return d;
}

std::unique_ptr<Detector> make_312(const Pattern& pattern, Value n) {
    auto d = std::make_unique<Detector312>(n);
    if (is_pattern(pattern, {1, 3, 2})) return complemented(std::move(d));
    return d;
}

std::unique_ptr<Detector> make_strip(const Pattern& pattern, Value n) {
    auto d = std::make_unique<StripDetector>(n);
    if (is_pattern(pattern, {2, 3, 1})) return complemented(std::move(d));
    return d;
}

std::unique_ptr<Detector> make_baseline(const Pattern& pattern, Value n, StreamMode mode) {
    return std::make_unique<BaselineDetector>(std::vector<Value>(pattern.values().begin(), pattern.values().end()),
                                              n, mode);
}

bool in_312_family(const Pattern& p) { return is_pattern(p, {3, 1, 2}) || is_pattern(p, {1, 3, 2}); }
bool in_strip_family(const Pattern& p) { return is_pattern(p, {2, 1, 3}) || is_pattern(p, {2, 3, 1}); }

}  // namespace

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Auto: return "auto";
        case Algorithm::Monotone: return "monotone";
        case Algorithm::Detector312: return "312";
        case Algorithm::Strip: return "strip";
        case Algorithm::Baseline: return "baseline";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view text) {
    for (Algorithm a : {Algorithm::Auto, Algorithm::Monotone, Algorithm::Detector312, Algorithm::Strip,
                        Algorithm::Baseline}) {
        if (text == to_string(a)) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

std::unique_ptr<Detector> make_detector(const Pattern& pattern, Value n, StreamMode mode, Algorithm algorithm) {
    const bool permutation = mode == StreamMode::Permutation;
    switch (algorithm) {
        case Algorithm::Monotone:
            if (!pattern.is_monotone()) throw DispatchError("monotone detector needs 12..k or k..21");
            return make_monotone(pattern, n, mode);
        case Algorithm::Detector312:
            if (!in_312_family(pattern)) throw DispatchError("312 detector serves only 312 and 132");
            if (!permutation) throw DispatchError("312 detector needs permutation input (mode=perm)");
            return make_312(pattern, n);
        case Algorithm::Strip:
            if (!in_strip_family(pattern)) throw DispatchError("strip detector serves only 213 and 231");
            if (!permutation) throw DispatchError("strip detector needs permutation input (mode=perm)");
            return make_strip(pattern, n);
        case Algorithm::Baseline:
            return make_baseline(pattern, n, mode);
        case Algorithm::Auto:
            break;
    }

    if (static_cast<Value>(pattern.size()) > n) return std::make_unique<RejectingDetector>(n, mode);
    if (pattern.is_monotone()) return make_monotone(pattern, n, mode);
    if (permutation && in_312_family(pattern)) return make_312(pattern, n);
    if (permutation && in_strip_family(pattern)) return make_strip(pattern, n);

    auto d = make_baseline(pattern, n, mode);
    if (pattern.size() >= 4 && permutation) {
        d->set_warning("non-monotone pattern of length >= 4: linear space is necessary, storing the whole stream");
    } else if (!permutation) {
        d->set_warning("non-monotone pattern on distinct-sequence input: linear space is necessary, "
                       "storing the whole stream");
    }
    return d;
}

DetectorReport run_detector(Detector& detector, std::span<const Value> values) {
    for (Value v : values) {
        if (detector.push(v).accepted()) break;
    }
    return detector.finish();
}

DetectorReport detect(const StreamInstance& inst, const Pattern& pattern, Algorithm algorithm) {
    require_valid_stream(inst);
    auto d = make_detector(pattern, inst.n, inst.mode, algorithm);
    return run_detector(*d, inst.elements);
}

DetectorReport baseline_detect(const StreamInstance& inst, const Pattern& pattern) {
    return detect(inst, pattern, Algorithm::Baseline);
}

}  // namespace ppm
