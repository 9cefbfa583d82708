#include "ppm/hardgen.hpp"

#include <algorithm>
#include <set>

namespace ppm {

namespace {

std::vector<bool> membership(std::span<const Value> set, Value n_sets, const char* name) {
    std::vector<bool> in(static_cast<std::size_t>(n_sets) + 1, false);
    for (Value v : set) {
        if (v < 1 || v > n_sets) {
            throw std::invalid_argument(std::string(name) + ": element " + std::to_string(v) + " outside [1," +
                                        std::to_string(n_sets) + "]");
        }
        if (in[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument(std::string(name) + ": repeated element " + std::to_string(v));
        }
        in[static_cast<std::size_t>(v)] = true;
    }
    return in;
}

std::vector<Value> sorted(std::span<const Value> s) {
    std::vector<Value> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

void require_sets(Value n_sets) {
    if (n_sets < 1) throw std::invalid_argument("n_sets must be positive");
}

// Appends a segment covering everything emitted since the previous one.
void close_segment(DisjInstance& inst, Owner owner) {
    const Index start = inst.segments.empty() ? 1 : inst.segments.back().end + 1;
    inst.segments.push_back({owner, start, inst.stream.elements.size()});
}

bool is_pattern(const Pattern& p, std::initializer_list<Value> values) {
    return std::equal(p.values().begin(), p.values().end(), values.begin(), values.end());
}

}  // namespace

std::string_view to_string(Owner owner) { return owner == Owner::Alice ? "alice" : "bob"; }

std::vector<std::string> DisjInstance::segment_comments() const {
    std::vector<std::string> out;
    for (const Segment& s : segments) {
        out.push_back("segment " + std::string(to_string(s.owner)) + " " + std::to_string(s.start) + " " +
                      std::to_string(s.end));
    }
    return out;
}

std::size_t DisjInstance::rounds() const {
    std::size_t alice_blocks = 0;
    for (const Segment& s : segments) alice_blocks += s.owner == Owner::Alice;
    return alice_blocks;
}

DisjInstance gen_seq312(std::span<const Value> S, std::span<const Value> T, Value n_sets) {
    require_sets(n_sets);
    const auto in_s = membership(S, n_sets, "S");
    const auto in_t = membership(T, n_sets, "T");
    DisjInstance inst{n_sets, sorted(S), sorted(T), Pattern({3, 1, 2}),
                      StreamInstance{3 * n_sets, StreamMode::DistinctSequence, {}}, {}};
    auto& out = inst.stream.elements;
    for (Value i = 1; i <= n_sets; ++i) {
        if (in_s[static_cast<std::size_t>(i)]) {
            out.push_back(3 * i);
            out.push_back(3 * i - 2);
        }
    }
    close_segment(inst, Owner::Alice);
    for (Value i = n_sets; i >= 1; --i) {
        if (in_t[static_cast<std::size_t>(i)]) out.push_back(3 * i - 1);
    }
    close_segment(inst, Owner::Bob);
    return inst;
}

DisjInstance gen_pi4_front(const Pattern& pattern, std::span<const Value> S, std::span<const Value> T,
                           Value n_sets) {
    const bool identity_keyed = is_pattern(pattern, {4, 2, 3, 1});
    if (!identity_keyed && !is_pattern(pattern, {4, 2, 1, 3}) && !is_pattern(pattern, {4, 1, 3, 2}) &&
        !is_pattern(pattern, {4, 1, 2, 3})) {
        throw std::invalid_argument("gen_pi4_front: pattern must be one of 4231, 4213, 4132, 4123");
    }
    require_sets(n_sets);
    const auto in_s = membership(S, n_sets, "S");
    const auto in_t = membership(T, n_sets, "T");
    DisjInstance inst{n_sets, sorted(S), sorted(T), pattern,
                      StreamInstance{4 * n_sets, StreamMode::Permutation, {}}, {}};
    auto& out = inst.stream.elements;
    auto emit_pair = [&](Value block, Value first, Value second, bool keep_order) {
        const Value base = 4 * (block - 1);
        out.push_back(base + (keep_order ? first : second));
        out.push_back(base + (keep_order ? second : first));
    };
    for (Value i = 1; i <= n_sets; ++i) {
        emit_pair(i, pattern[0], pattern[1], in_s[static_cast<std::size_t>(i)]);
    }
    close_segment(inst, Owner::Alice);
    for (Value i = 1; i <= n_sets; ++i) {
        const Value block = identity_keyed ? i : n_sets + 1 - i;
        emit_pair(block, pattern[2], pattern[3], in_t[static_cast<std::size_t>(block)]);
    }
    close_segment(inst, Owner::Bob);
    return inst;
}

DisjInstance gen_4312(std::span<const Value> S, std::span<const Value> T, Value n_sets) {
    require_sets(n_sets);
    const auto in_s = membership(S, n_sets, "S");
    const auto in_t = membership(T, n_sets, "T");
    DisjInstance inst{n_sets, sorted(S), sorted(T), Pattern({4, 3, 1, 2}),
                      StreamInstance{3 * n_sets + 1, StreamMode::Permutation, {}}, {}};
    auto& out = inst.stream.elements;
    for (Value i = 1; i <= n_sets; ++i) {
        if (!in_s[static_cast<std::size_t>(i)]) out.push_back(3 * (i - 1) + 2);
    }
    out.push_back(3 * n_sets + 1);
    close_segment(inst, Owner::Alice);
    for (Value i = 1; i <= n_sets; ++i) {
        const Value hi = 3 * (i - 1) + 3;
        const Value lo = 3 * (i - 1) + 1;
        const bool in = in_t[static_cast<std::size_t>(i)];
        out.push_back(in ? hi : lo);
        out.push_back(in ? lo : hi);
    }
    close_segment(inst, Owner::Bob);
    for (Value i = n_sets; i >= 1; --i) {
        if (in_s[static_cast<std::size_t>(i)]) out.push_back(3 * (i - 1) + 2);
    }
    close_segment(inst, Owner::Alice);
    return inst;
}

DisjInstance gen_3142_2143(const Pattern& pattern, std::span<const Value> S, std::span<const Value> T,
                           Value n_sets) {
    if (!is_pattern(pattern, {3, 1, 4, 2}) && !is_pattern(pattern, {2, 1, 4, 3})) {
        throw std::invalid_argument("gen_3142_2143: pattern must be 3142 or 2143");
    }
    require_sets(n_sets);
    const auto in_s = membership(S, n_sets, "S");
    const auto in_t = membership(T, n_sets, "T");
    DisjInstance inst{n_sets, sorted(S), sorted(T), pattern,
                      StreamInstance{4 * n_sets, StreamMode::Permutation, {}}, {}};
    auto& out = inst.stream.elements;
    const Value first = pattern[0];
    const Value last = pattern[3];
    for (Value i = 1; i <= n_sets; ++i) {
        out.push_back(4 * (i - 1) + (in_s[static_cast<std::size_t>(i)] ? first : last));
    }
    close_segment(inst, Owner::Alice);
    // Blocks are visited top-down; block j reads (1, 4) upward iff j is in T.
    for (Value i = 1; i <= n_sets; ++i) {
        const Value block = n_sets + 1 - i;
        const Value base = 4 * (block - 1);
        const bool in = in_t[static_cast<std::size_t>(block)];
        out.push_back(base + (in ? 1 : 4));
        out.push_back(base + (in ? 4 : 1));
    }
    close_segment(inst, Owner::Bob);
    for (Value i = 1; i <= n_sets; ++i) {
        out.push_back(4 * (i - 1) + (in_s[static_cast<std::size_t>(i)] ? last : first));
    }
    close_segment(inst, Owner::Alice);
    return inst;
}

DisjInstance gen_disj(const Pattern& pattern, std::span<const Value> S, std::span<const Value> T, Value n_sets) {
    if (is_pattern(pattern, {3, 1, 2})) return gen_seq312(S, T, n_sets);
    if (is_pattern(pattern, {4, 3, 1, 2})) return gen_4312(S, T, n_sets);
    if (is_pattern(pattern, {3, 1, 4, 2}) || is_pattern(pattern, {2, 1, 4, 3})) {
        return gen_3142_2143(pattern, S, T, n_sets);
    }
    return gen_pi4_front(pattern, S, T, n_sets);
}

std::vector<Pattern> disj_patterns() {
    std::vector<Pattern> out;
    for (const char* p : {"312", "4231", "4213", "4132", "4123", "4312", "3142", "2143"}) out.push_back(Pattern::parse(p));
    return out;
}

namespace {

void require_lb_sequence(std::span<const Value> seq, std::size_t k, Value n, const char* name) {
    if (seq.size() + 2 != k) {
        throw std::invalid_argument(std::string(name) + ": needs k - 2 = " + std::to_string(k - 2) + " entries");
    }
    if (seq.front() != 1) throw std::invalid_argument(std::string(name) + ": must start with 1");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] % 2 == 0 || seq[i] < 1 || seq[i] > n) {
            throw std::invalid_argument(std::string(name) + ": entries must be odd values in [n]");
        }
        if (i > 0 && seq[i] <= seq[i - 1]) throw std::invalid_argument(std::string(name) + ": must be increasing");
    }
}

StreamInstance alpha_of(std::span<const Value> seq, Value n) {
    std::set<Value> members(seq.begin(), seq.end());
    StreamInstance out{n, StreamMode::DistinctSequence, {}};
    for (Value v = (n % 2 == 0 ? n - 1 : n); v >= 1; v -= 2) {
        if (!members.contains(v)) out.elements.push_back(v);
    }
    out.elements.insert(out.elements.end(), seq.begin(), seq.end());
    return out;
}

}  // namespace

MonotoneLowerBound gen_monotone_lb(std::size_t k, Value n, std::span<const Value> rho,
                                   std::optional<std::span<const Value>> sigma) {
    if (k < 3) throw std::invalid_argument("gen_monotone_lb: k must be at least 3");
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("gen_monotone_lb: n must be even");
    require_lb_sequence(rho, k, n, "rho");

    MonotoneLowerBound out;
    out.accepting_rho.assign(rho.begin(), rho.end());
    out.alpha = alpha_of(rho, n);
    if (!sigma) return out;

    require_lb_sequence(*sigma, k, n, "sigma");
    std::vector<Value> r(rho.begin(), rho.end());
    std::vector<Value> s(sigma->begin(), sigma->end());
    if (r == s) throw std::invalid_argument("gen_monotone_lb: rho and sigma must differ");

    std::size_t first_diff = 0;
    while (r[first_diff] == s[first_diff]) ++first_diff;
    if (r[first_diff] > s[first_diff]) {
        std::swap(r, s);
        out.swapped = true;
    }
    // 1-based index i of the first difference.
    const auto i = static_cast<Value>(first_diff) + 1;
    const auto kk = static_cast<Value>(k);
    const Value ri = r[first_diff];
    if (ri + 2 * (kk - i) - 1 > n) {
        throw std::invalid_argument("gen_monotone_lb: n too small for the distinguishing suffix");
    }
    for (Value v = n; v >= ri + 2 * (kk - i) + 1; v -= 2) out.beta.push_back(v);
    for (Value v = ri + 1; v <= ri + 2 * (kk - i) - 1; v += 2) out.beta.push_back(v);
    for (Value v = ri - 1; v >= 2; v -= 2) out.beta.push_back(v);

    out.accepting_rho = r;
    out.alpha = alpha_of(r, n);
    StreamInstance acc{n, StreamMode::Permutation, out.alpha.elements};
    acc.elements.insert(acc.elements.end(), out.beta.begin(), out.beta.end());
    StreamInstance rej{n, StreamMode::Permutation, alpha_of(s, n).elements};
    rej.elements.insert(rej.elements.end(), out.beta.begin(), out.beta.end());
    out.accepting = std::move(acc);
    out.rejecting = std::move(rej);
    return out;
}

StreamInstance extend_stream(const StreamInstance& inst) {
    require_valid_stream(inst);
    StreamExtender ext(inst.n);
    StreamInstance out{ext.extended_universe(), inst.mode, {}};
    out.elements.reserve(inst.elements.size() + static_cast<std::size_t>(inst.n));
    for (Value v : inst.elements) out.elements.push_back(ext.push(v));
    for (Value v : ext.finish()) out.elements.push_back(v);
    return out;
}

std::vector<Value> StreamExtender::finish() const {
    std::vector<Value> odds;
    odds.reserve(static_cast<std::size_t>(n_));
    for (Value v = 1; v <= 2 * n_ - 1; v += 2) odds.push_back(v);
    return odds;
}

std::vector<Value> random_subset(Value n, std::mt19937_64& rng) {
    std::vector<Value> out;
    for (Value i = 1; i <= n; ++i) {
        if (rng() & 1u) out.push_back(i);
    }
    return out;
}

}  // namespace ppm
