#include "ppm/streaming/detector312.hpp"

#include <cmath>
#include <stdexcept>

namespace ppm {

Value window_width_312(Value n) {
    if (n <= 2) return 1;
    const long double target = static_cast<long double>(n) * std::log2(static_cast<long double>(n));
    auto k = static_cast<Value>(std::sqrt(target));
    while (static_cast<long double>(k + 1) * (k + 1) <= target) ++k;
    while (k > 1 && static_cast<long double>(k) * k > target) --k;
    return std::max<Value>(1, k);
}

void SlidingWindowBits::set(Value v) {
    auto ref = bits_[slot(v)];
    if (!ref) {
        ref = true;
        ++count_;
    }
}

void SlidingWindowBits::slide(Value old_top, Value new_top) {
    // Values in (old_top - width, new_top - width] leave the window.
    const Value first = std::max<Value>(1, old_top - width_ + 1);
    const Value last = std::min(old_top, new_top - width_);
    for (Value u = first; u <= last; ++u) {
        auto ref = bits_[slot(u)];
        if (ref) {
            ref = false;
            --count_;
        }
    }
}

Detector312::Detector312(Value n)
    : Detector312(n, window_width_312(n)) {}

Detector312::Detector312(Value n, Value width)
    : Detector(n, StreamMode::Permutation), k_(width), a_(width >= 1 ? width : 1) {
    if (width < 1) throw std::invalid_argument("window width must be at least 1");
}

StepResult Detector312::on_push(Value v) {
    const Index pos = pushes();

    // A stored pair (a, b) with a > v > b. Intervals are disjoint, so only the
    // pair with the largest b below v can contain v.
    if (auto it = d_.lower_bound(v); it != d_.begin()) {
        --it;
        if (it->second.a > v) {
            rule_ = Rule::PairInD;
            return StepResult::accept(Occurrence{{it->second.a_pos, it->second.b_pos, pos},
                                                 {it->second.a, it->first, v}});
        }
    }

    if (v > h_) {
        // Window follows the new top: keep (v - k, v].
        a_.slide(h_, v);
        a_.set(v);
        h_ = v;
        h_pos_ = pos;
    } else if (v > h_ - k_) {
        // Any unseen value c with v < c < h completes (h, v, c); c must come later.
        for (Value c = h_ - 1; c > v; --c) {
            if (!a_.test(c)) {
                rule_ = Rule::GapInWindow;
                return StepResult::accept(
                    Occurrence{{h_pos_, pos, Occurrence::kFuturePosition}, {h_, v, c}});
            }
        }
        a_.set(v);
    } else {
        d_.erase(d_.upper_bound(v), d_.end());
        d_.emplace(v, PairEntry{h_, h_pos_, pos});
    }
    return StepResult::cont();
}

std::vector<Value> Detector312::window_members() const {
    std::vector<Value> out;
    for (Value u = std::max<Value>(1, h_ - k_ + 1); u <= h_; ++u) {
        if (a_.test(u)) out.push_back(u);
    }
    return out;
}

bool Detector312::in_window_set(Value v) const { return v > h_ - k_ && v <= h_ && v >= 1 && a_.test(v); }

std::vector<std::pair<Value, Value>> Detector312::pairs() const {
    std::vector<std::pair<Value, Value>> out;
    out.reserve(d_.size());
    for (const auto& [b, e] : d_) out.emplace_back(e.a, b);
    return out;
}

SpaceSample Detector312::space() const {
    SpaceSample s;
    s.add("h", h_ > 0 ? 1 : 0);
    s.add("A", a_.count());
    s.add("D", d_.size());
    // h with its position, four numbers per pair, and the window bit array.
    s.bits = (2 + 4 * d_.size()) * cell_bits(universe()) + static_cast<std::size_t>(k_);
    return s;
}

}  // namespace ppm
