#include "ppm/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "ppm/hardgen.hpp"
#include "ppm/oracle.hpp"
#include "ppm/stream_io.hpp"
#include "ppm/streaming/detector312.hpp"
#include "ppm/streaming/strip_detector.hpp"
#include "ppm/workloads.hpp"

namespace ppm::cli {

namespace {

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json header(std::string_view command) { return Json{{"schema", kSchemaVersion}, {"command", command}}; }

DetectorFactory default_factory() {
    return [](const Pattern& p, Value n, StreamMode mode, Algorithm a) { return make_detector(p, n, mode, a); };
}

Json count_json(const BigCount& c) {
    if (c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
    return c.str();
}

/// Runs body(i) for i in [0, count) on `threads` workers. body returns true on
/// a failure; indices above the smallest failure seen so far are skipped, so
/// the smallest failing index is always evaluated. Returns it, or count.
template <typename Body>
std::uint64_t parallel_search(std::uint64_t count, unsigned threads, Body&& body) {
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> first_failure{count};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count || i > first_failure.load()) return;
            bool failed = false;
            try {
                failed = body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                first_failure.store(0);
                return;
            }
            if (failed) {
                std::uint64_t seen = first_failure.load();
                while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
                }
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(count, 1024))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return first_failure.load();
}

/// Runs body(i) for every i in [0, count).
template <typename Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
    parallel_search(count, threads, [&](std::uint64_t i) {
        body(i);
        return false;
    });
}

std::vector<Value> unrank_permutation(Value n, std::uint64_t rank) {
    std::vector<Value> pool(static_cast<std::size_t>(n));
    for (Value i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * i;
    std::vector<Value> out;
    out.reserve(pool.size());
    for (Value left = n; left > 0; --left) {
        const std::uint64_t block = fact[static_cast<std::size_t>(left) - 1];
        const auto idx = static_cast<std::ptrdiff_t>(rank / block);
        rank %= block;
        out.push_back(pool[static_cast<std::size_t>(idx)]);
        pool.erase(pool.begin() + idx);
    }
    return out;
}

/// Empty when the occurrence is a genuine witness in `seq`.
std::string occurrence_problem(const Occurrence& occ, std::span<const Value> seq, const Pattern& pattern) {
    if (occ.values.size() != pattern.size() || occ.positions.size() != pattern.size()) return "wrong length";
    if (!is_order_isomorphic(occ.values, pattern.values())) return "values not order-isomorphic to the pattern";
    Index last = 0;
    for (std::size_t j = 0; j < occ.positions.size(); ++j) {
        Index pos = occ.positions[j];
        if (pos == Occurrence::kFuturePosition) {
            const auto it = std::find(seq.begin(), seq.end(), occ.values[j]);
            if (it == seq.end()) return "future value never arrives";
            pos = static_cast<Index>(it - seq.begin()) + 1;
        } else if (pos > seq.size() || seq[pos - 1] != occ.values[j]) {
            return "position does not hold the reported value";
        }
        if (pos <= last) return "positions out of order";
        last = pos;
    }
    return {};
}

std::vector<Value> parse_set(const std::string& text) {
    auto v = parse_value_list(text);
    std::sort(v.begin(), v.end());
    return v;
}

bool sets_intersect(std::span<const Value> s, std::span<const Value> t) {
    return std::any_of(s.begin(), s.end(), [&](Value v) { return std::find(t.begin(), t.end(), v) != t.end(); });
}

std::size_t intersection_size(std::span<const Value> s, std::span<const Value> t) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](Value v) { return std::find(t.begin(), t.end(), v) != t.end(); }));
}

/// Pattern targeted by a Disjointness construction name.
Pattern disj_pattern(const std::string& construction) {
    if (construction == "seq312") return Pattern::parse("312");
    if (construction == "4312" || construction == "3142" || construction == "2143") return Pattern::parse(construction);
    if (construction.rfind("front4:", 0) == 0) {
        const Pattern p = Pattern::parse(construction.substr(7));
        const auto s = p.to_string();
        if (s != "4231" && s != "4213" && s != "4132" && s != "4123") {
            throw std::invalid_argument("front4 takes 4231, 4213, 4132 or 4123");
        }
        return p;
    }
    throw std::invalid_argument("unknown construction '" + construction + "'");
}

bool counts_match_intersection(const Pattern& p) {
    const auto s = p.to_string();
    return s == "4231" || s == "4213" || s == "4132" || s == "4123";
}

Json segments_json(const DisjInstance& inst) {
    Json out = Json::array();
    for (const auto& seg : inst.segments) {
        out.push_back(Json{{"owner", to_string(seg.owner)}, {"start", seg.start}, {"end", seg.end}});
    }
    return out;
}

std::string comment_value(const std::vector<std::string>& comments, std::string_view key) {
    for (const auto& c : comments) {
        if (c.size() > key.size() && c.compare(0, key.size(), key) == 0 && c[key.size()] == ' ') {
            return c.substr(key.size() + 1);
        }
    }
    return {};
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag && *flag > 0) return *flag;
    if (const char* env = std::getenv("PPM_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

StreamInstance load_stream(const StreamSource& source) {
    StreamInstance inst;
    if (source.path && source.values) throw std::invalid_argument("give either --input or --stream, not both");
    if (source.path) {
        inst = read_stream_file(*source.path).stream;
    } else if (source.values) {
        inst.mode = source.mode;
        inst.elements = parse_value_list(*source.values);
        if (source.n) {
            inst.n = *source.n;
        } else if (source.mode == StreamMode::Permutation) {
            inst.n = static_cast<Value>(inst.elements.size());
        } else {
            inst.n = inst.elements.empty() ? 1 : *std::max_element(inst.elements.begin(), inst.elements.end());
        }
    } else {
        throw std::invalid_argument("no stream: give --input <file> or --stream <values>");
    }
    require_valid_stream(inst);
    return inst;
}

CommandResult cmd_detect(const DetectOptions& options) {
    const Stopwatch clock;
    const StreamInstance inst = load_stream(options.source);
    const auto factory = options.factory ? options.factory : default_factory();
    auto detector = factory(options.pattern, inst.n, inst.mode, options.algorithm);
    const DetectorReport report = run_detector(*detector, inst.elements);

    CommandResult result;
    Json& j = result.report;
    j = header("detect");
    j["pattern"] = options.pattern.to_string();
    j["algorithm"] = to_string(options.algorithm);
    j["detector"] = detector->name();
    j["warning"] = detector->warning().empty() ? Json(nullptr) : Json(detector->warning());
    j["instance"] = instance_json(inst);
    j["result"] = to_json(report);
    if (options.check) {
        const auto oracle = find_first_occurrence(inst.elements, options.pattern);
        std::string problem;
        if (report.occurrence) problem = occurrence_problem(*report.occurrence, inst.elements, options.pattern);
        const bool agree = report.verdict == oracle.has_value() && problem.empty();
        j["check"] = Json{{"oracle_verdict", oracle.has_value()},
                          {"oracle_occurrence", oracle ? to_json(*oracle) : Json(nullptr)},
                          {"occurrence_problem", problem.empty() ? Json(nullptr) : Json(problem)},
                          {"agree", agree}};
        if (!agree) result.exit_code = kExitDisagreement;
    }
    j["wall_ms"] = clock.ms();
    return result;
}

CommandResult cmd_oracle(const OracleOptions& options) {
    const Stopwatch clock;
    const StreamInstance inst = load_stream(options.source);
    const auto occ = find_first_occurrence(inst.elements, options.pattern);
    CommandResult result;
    Json& j = result.report;
    j = header("oracle");
    j["pattern"] = options.pattern.to_string();
    j["instance"] = instance_json(inst);
    j["verdict"] = occ.has_value();
    j["occurrence"] = occ ? to_json(*occ) : Json(nullptr);
    if (options.count) j["count"] = count_json(count_occurrences(inst, options.pattern));
    j["wall_ms"] = clock.ms();
    return result;
}

GenResult cmd_gen(const GenOptions& options) {
    const Stopwatch clock;
    GenResult out;
    Json& j = out.result.report;
    j = header("gen");
    j["construction"] = options.construction;

    if (options.construction == "monotone-lb") {
        if (!options.k || !options.n || !options.rho) throw std::invalid_argument("monotone-lb needs --k, --n and --rho");
        const auto rho = parse_value_list(*options.rho);
        std::optional<std::vector<Value>> sigma;
        if (options.sigma) sigma = parse_value_list(*options.sigma);
        const auto lb = gen_monotone_lb(*options.k, *options.n, rho,
                                        sigma ? std::optional<std::span<const Value>>(*sigma) : std::nullopt);
        std::string which = options.which;
        if (which == "auto") which = sigma ? "accepting" : "alpha";
        if (which == "alpha") {
            out.stream = lb.alpha;
        } else if ((which == "accepting" || which == "rejecting") && sigma) {
            out.stream = which == "accepting" ? *lb.accepting : *lb.rejecting;
        } else {
            throw std::invalid_argument("--which must be alpha, or accepting/rejecting with --sigma");
        }
        out.comments = {"construction monotone-lb", "k " + std::to_string(*options.k),
                        "rho " + format_value_list(rho), "side " + which};
        if (sigma) {
            out.comments.push_back("sigma " + format_value_list(*sigma));
            out.comments.push_back("accepting_rho " + format_value_list(lb.accepting_rho));
        }
        j["parameters"] = Json{{"k", *options.k},
                               {"n", *options.n},
                               {"rho", rho},
                               {"sigma", sigma ? Json(*sigma) : Json(nullptr)},
                               {"side", which},
                               {"swapped", lb.swapped},
                               {"beta", lb.beta}};
    } else if (options.construction == "extend") {
        if (!options.input) throw std::invalid_argument("extend needs --input <stream file>");
        const auto in = read_stream_file(*options.input);
        require_valid_stream(in.stream);
        out.stream = extend_stream(in.stream);
        out.comments = {"construction extend", "source_n " + std::to_string(in.stream.n)};
        j["parameters"] = Json{{"source_n", in.stream.n}};
    } else {
        const Pattern pattern = disj_pattern(options.construction);
        std::mt19937_64 rng(options.seed.value_or(0));
        std::vector<Value> s;
        std::vector<Value> t;
        if (options.s) s = parse_set(*options.s);
        if (options.t) t = parse_set(*options.t);
        Value n_sets = options.n_sets.value_or(0);
        if (n_sets == 0) {
            for (Value v : s) n_sets = std::max(n_sets, v);
            for (Value v : t) n_sets = std::max(n_sets, v);
        }
        if ((!options.s || !options.t) && !options.seed) {
            throw std::invalid_argument("give --s and --t, or --seed to draw them");
        }
        if (n_sets < 1) throw std::invalid_argument("--nsets must be positive");
        if (!options.s) s = random_subset(n_sets, rng);
        if (!options.t) t = random_subset(n_sets, rng);
        const DisjInstance inst = gen_disj(pattern, s, t, n_sets);
        out.stream = inst.stream;
        out.comments = {"construction " + options.construction, "pattern " + pattern.to_string(),
                        "nsets " + std::to_string(n_sets), "S " + format_value_list(s), "T " + format_value_list(t)};
        for (auto& c : inst.segment_comments()) out.comments.push_back(std::move(c));
        j["pattern"] = pattern.to_string();
        j["parameters"] = Json{{"n_sets", n_sets}, {"S", s}, {"T", t}, {"intersect", sets_intersect(s, t)}};
        j["segments"] = segments_json(inst);
        j["rounds"] = inst.rounds();
    }

    if (options.output) write_stream_file(*options.output, out.stream, out.comments);
    j["instance"] = instance_json(out.stream);
    j["stream"] = out.stream.elements;
    j["output"] = options.output ? Json(*options.output) : Json(nullptr);
    j["wall_ms"] = clock.ms();
    return out;
}

namespace {

struct TrialOutcome {
    std::string kind;  // empty when the trial agrees
    bool detector_verdict = false;
    bool expected = false;
    StreamInstance stream;
    std::vector<Value> S;
    std::vector<Value> T;
};

TrialOutcome check_pattern_trial(const DetectorFactory& factory, const Pattern& pattern, Algorithm algorithm,
                                 StreamInstance stream) {
    TrialOutcome o;
    auto detector = factory(pattern, stream.n, stream.mode, algorithm);
    const DetectorReport report = run_detector(*detector, stream.elements);
    const auto oracle = find_first_occurrence(stream.elements, pattern);
    o.detector_verdict = report.verdict;
    o.expected = oracle.has_value();
    if (report.verdict != o.expected) {
        o.kind = "verdict";
    } else if (report.occurrence) {
        if (auto problem = occurrence_problem(*report.occurrence, stream.elements, pattern); !problem.empty()) {
            o.kind = "occurrence: " + problem;
        }
    }
    o.stream = std::move(stream);
    return o;
}

TrialOutcome check_construction_trial(const DetectorFactory& factory, const Pattern& pattern, Algorithm algorithm,
                                      std::vector<Value> s, std::vector<Value> t, Value n_sets) {
    const DisjInstance inst = gen_disj(pattern, s, t, n_sets);
    TrialOutcome o = check_pattern_trial(factory, pattern, algorithm, inst.stream);
    const bool intersect = sets_intersect(s, t);
    if (o.kind.empty() && o.expected != intersect) o.kind = "iff";
    if (o.kind.empty() && counts_match_intersection(pattern) &&
        count_occurrences(inst.stream, pattern) != intersection_size(s, t)) {
        o.kind = "count";
    }
    o.expected = intersect;
    o.S = std::move(s);
    o.T = std::move(t);
    return o;
}

std::vector<std::string> replay_comments(const FuzzOptions& options, const Pattern& pattern, std::uint64_t trial,
                                         const TrialOutcome& o) {
    std::vector<std::string> c{"replay", "pattern " + pattern.to_string(),
                               "algorithm " + std::string(to_string(options.algorithm)),
                               "seed " + std::to_string(options.seed), "trial " + std::to_string(trial),
                               "kind " + o.kind};
    if (options.construction) {
        c.push_back("construction " + *options.construction);
        c.push_back("nsets " + std::to_string(options.n_sets));
        c.push_back("S " + format_value_list(o.S));
        c.push_back("T " + format_value_list(o.T));
    }
    return c;
}

CommandResult fuzz_replay(const FuzzOptions& options, const DetectorFactory& factory) {
    const Stopwatch clock;
    const StreamFile file = read_stream_file(*options.replay_in);
    require_valid_stream(file.stream);
    const std::string saved = comment_value(file.comments, "pattern");
    if (!options.pattern && saved.empty()) throw std::invalid_argument("replay file names no pattern; give --pattern");
    const Pattern pattern = options.pattern ? *options.pattern : Pattern::parse(saved);
    Algorithm algorithm = options.algorithm;
    if (const auto a = comment_value(file.comments, "algorithm"); !a.empty() && algorithm == Algorithm::Auto) {
        algorithm = parse_algorithm(a);
    }
    TrialOutcome o = check_pattern_trial(factory, pattern, algorithm, file.stream);
    const std::string s = comment_value(file.comments, "S");
    const std::string t = comment_value(file.comments, "T");
    bool have_sets = false;
    for (const auto& c : file.comments) have_sets |= c == "S" || c.rfind("S ", 0) == 0;
    if (o.kind.empty() && have_sets && o.expected != sets_intersect(parse_set(s), parse_set(t))) o.kind = "iff";

    CommandResult result;
    Json& j = result.report;
    j = header("fuzz");
    j["mode"] = "replay";
    j["replay"] = *options.replay_in;
    j["pattern"] = pattern.to_string();
    j["instance"] = instance_json(file.stream);
    j["detector_verdict"] = o.detector_verdict;
    j["oracle_verdict"] = o.expected;
    j["disagreement"] = o.kind.empty() ? Json(nullptr) : Json(o.kind);
    j["agree"] = o.kind.empty();
    if (!o.kind.empty()) result.exit_code = kExitDisagreement;
    j["wall_ms"] = clock.ms();
    return result;
}

}  // namespace

CommandResult cmd_fuzz(const FuzzOptions& options) {
    const auto factory = options.factory ? options.factory : default_factory();
    if (options.replay_in) return fuzz_replay(options, factory);

    const Stopwatch clock;
    const unsigned threads = resolve_threads(options.threads);
    if (options.pattern && options.construction) throw std::invalid_argument("give --pattern or --construction, not both");
    if (!options.pattern && !options.construction) throw std::invalid_argument("fuzz needs --pattern or --construction");

    const Pattern pattern = options.construction ? disj_pattern(*options.construction) : *options.pattern;
    std::uint64_t total = options.trials;
    if (options.trials < 1 && !options.exhaustive) throw std::invalid_argument("--trials must be at least 1");

    std::vector<std::vector<Value>> subsets;
    if (options.construction) {
        if (options.n_sets < 1) throw std::invalid_argument("--nsets must be positive");
        if (options.exhaustive) {
            // 4^n_sets instances, each checked by an O(len^k) scan.
            if (options.n_sets > 6 && !options.allow_large) {
                throw std::invalid_argument("exhaustive over " + std::to_string(options.n_sets) +
                                            " sets means 4^" + std::to_string(options.n_sets) +
                                            " instances; pass --allow-large to run it anyway");
            }
            if (options.n_sets > 20) throw std::invalid_argument("--nsets too large for exhaustive enumeration");
            subsets = all_subsets(options.n_sets);
            total = std::uint64_t{1} << (2 * options.n_sets);
        }
    } else {
        if (options.n < 1) throw std::invalid_argument("--n must be positive");
        if (options.exhaustive) {
            // n! permutations, each checked by an O(n^k) scan.
            if (options.n > 9 && !options.allow_large) {
                throw std::invalid_argument("exhaustive over n=" + std::to_string(options.n) + " means " +
                                            std::to_string(options.n) +
                                            "! permutations; pass --allow-large to run it anyway");
            }
            if (options.n > 20) throw std::invalid_argument("--n too large for exhaustive enumeration");
            total = 1;
            for (Value i = 2; i <= options.n; ++i) total *= static_cast<std::uint64_t>(i);
        }
    }

    auto run_trial = [&](std::uint64_t i) -> TrialOutcome {
        if (options.construction) {
            std::vector<Value> s;
            std::vector<Value> t;
            if (options.exhaustive) {
                const std::uint64_t mask = (std::uint64_t{1} << options.n_sets) - 1;
                s = subsets[static_cast<std::size_t>(i >> options.n_sets)];
                t = subsets[static_cast<std::size_t>(i & mask)];
            } else {
                std::mt19937_64 rng(trial_seed(options.seed, i));
                s = random_subset(options.n_sets, rng);
                t = random_subset(options.n_sets, rng);
            }
            return check_construction_trial(factory, pattern, options.algorithm, std::move(s), std::move(t),
                                            options.n_sets);
        }
        std::vector<Value> tau;
        if (options.exhaustive) {
            tau = unrank_permutation(options.n, i);
        } else {
            std::mt19937_64 rng(trial_seed(options.seed, i));
            tau = random_permutation(options.n, rng);
        }
        return check_pattern_trial(factory, pattern, options.algorithm,
                                   StreamInstance{options.n, StreamMode::Permutation, std::move(tau)});
    };

    const std::uint64_t first_failure =
        parallel_search(total, threads, [&](std::uint64_t i) { return !run_trial(i).kind.empty(); });

    CommandResult result;
    Json& j = result.report;
    j = header("fuzz");
    j["mode"] = options.exhaustive ? "exhaustive" : "random";
    j["pattern"] = pattern.to_string();
    j["algorithm"] = to_string(options.algorithm);
    if (options.construction) {
        j["construction"] = *options.construction;
        j["n_sets"] = options.n_sets;
    } else {
        j["n"] = options.n;
    }
    j["seed"] = options.seed;
    j["trials"] = total;
    j["checked"] = first_failure < total ? first_failure + 1 : total;
    j["disagreements"] = first_failure < total ? 1 : 0;
    j["agree"] = first_failure >= total;
    if (first_failure < total) {
        const TrialOutcome o = run_trial(first_failure);
        const std::string path = options.replay_out.value_or("ppm-replay.txt");
        write_stream_file(path, o.stream, replay_comments(options, pattern, first_failure, o));
        Json cex{{"trial", first_failure},
                 {"kind", o.kind},
                 {"detector_verdict", o.detector_verdict},
                 {"expected_verdict", o.expected},
                 {"instance", instance_json(o.stream)},
                 {"stream", o.stream.elements},
                 {"replay_file", path}};
        if (options.construction) {
            cex["S"] = o.S;
            cex["T"] = o.T;
        }
        j["counterexample"] = cex;
        result.exit_code = kExitDisagreement;
    } else {
        j["counterexample"] = nullptr;
    }
    j["wall_ms"] = clock.ms();
    return result;
}

namespace {

enum class Family { Window312, Strip, Monotone };

struct BenchRun {
    std::size_t peak_cells = 0;
    bool accepted = false;
    std::size_t window = 0;
    std::size_t pairs = 0;
    std::size_t buffer = 0;
    std::size_t strips = 0;
};

Family family_of(const Pattern& p) {
    if (p.is_monotone()) return Family::Monotone;
    const auto s = p.to_string();
    if (s == "312" || s == "132") return Family::Window312;
    if (s == "213" || s == "231") return Family::Strip;
    throw std::invalid_argument("bench supports 312, 132, 213, 231 and monotone patterns");
}

std::size_t peak_of(const DetectorReport& r, const std::string& name) {
    const auto it = r.structure_peaks.find(name);
    return it == r.structure_peaks.end() ? 0 : it->second;
}

/// A permutation of [n] on which the detector for `p` never accepts.
std::vector<Value> avoiding_permutation(const Pattern& p, Value n, std::mt19937_64& rng) {
    const auto s = p.to_string();
    if (s == "312") return random_312_avoider(n, rng);
    if (s == "132") return complement(random_312_avoider(n, rng), n);
    if (s == "213") return random_213_avoider(n, rng);
    if (s == "231") return complement(random_213_avoider(n, rng), n);
    // Random interleaving of k - 1 decreasing runs over consecutive value
    // blocks: every increasing subsequence has length below k.
    const auto runs = static_cast<Value>(std::max<std::size_t>(1, p.size() - 1));
    std::vector<Value> next_in_run(static_cast<std::size_t>(runs));
    std::vector<Value> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Value r = 0; r < runs; ++r) {
        const Value lo = r * n / runs + 1;
        const Value hi = (r + 1) * n / runs;
        next_in_run[static_cast<std::size_t>(r)] = hi;
        for (Value v = lo; v <= hi; ++v) labels.push_back(r);
    }
    std::shuffle(labels.begin(), labels.end(), rng);
    std::vector<Value> out;
    out.reserve(labels.size());
    for (Value r : labels) out.push_back(next_in_run[static_cast<std::size_t>(r)]--);
    if (p.kind() == PatternKind::Decreasing) out = complement(out, n);
    return out;
}

}  // namespace

CommandResult cmd_bench(const BenchOptions& options) {
    const Stopwatch clock;
    const Family family = family_of(options.pattern);
    if (options.sizes.empty()) throw std::invalid_argument("bench needs --n");
    if (options.trials < 1) throw std::invalid_argument("--trials must be at least 1");
    const unsigned threads = resolve_threads(options.threads);

    CommandResult result;
    Json& j = result.report;
    j = header("bench");
    j["pattern"] = options.pattern.to_string();
    j["seed"] = options.seed;
    j["trials"] = options.trials;
    const char* reference_name = family == Family::Window312 ? "sqrt(n log2 n)"
                                 : family == Family::Strip  ? "sqrt(n)"
                                                            : "k";
    j["reference"] = reference_name;
    Json rows = Json::array();
    double max_ratio = 0;

    for (Value n : options.sizes) {
        if (n < 1) throw std::invalid_argument("--n values must be positive");
        const double reference = family == Family::Window312
                                     ? std::sqrt(static_cast<double>(n) * std::log2(std::max<double>(2, n)))
                                 : family == Family::Strip ? std::sqrt(static_cast<double>(n))
                                                           : static_cast<double>(options.pattern.size());
        std::vector<BenchRun> runs(2 * options.trials);
        parallel_for(runs.size(), threads, [&](std::uint64_t i) {
            const bool adversarial = i >= options.trials;
            std::mt19937_64 rng(trial_seed(options.seed ^ (static_cast<std::uint64_t>(n) << 20), i));
            const auto tau = adversarial ? avoiding_permutation(options.pattern, n, rng) : random_permutation(n, rng);
            auto d = make_detector(options.pattern, n, StreamMode::Permutation);
            const DetectorReport r = run_detector(*d, tau);
            BenchRun& run = runs[i];
            run.peak_cells = r.peak_cells;
            run.accepted = r.verdict;
            run.window = peak_of(r, "A");
            run.pairs = peak_of(r, "D");
            run.buffer = peak_of(r, "buffer");
            run.strips = peak_of(r, "strips") / StripRecord::kCells;
        });

        auto summarize = [&](std::size_t from, std::size_t to) {
            std::size_t peak = 0;
            std::size_t accepted = 0;
            double mean = 0;
            BenchRun most;
            for (std::size_t i = from; i < to; ++i) {
                peak = std::max(peak, runs[i].peak_cells);
                mean += static_cast<double>(runs[i].peak_cells);
                accepted += runs[i].accepted;
                most.window = std::max(most.window, runs[i].window);
                most.pairs = std::max(most.pairs, runs[i].pairs);
                most.buffer = std::max(most.buffer, runs[i].buffer);
                most.strips = std::max(most.strips, runs[i].strips);
            }
            mean /= static_cast<double>(to - from);
            const double ratio = static_cast<double>(peak) / reference;
            max_ratio = std::max(max_ratio, ratio);
            Json s{{"peak_cells", peak}, {"mean_cells", mean}, {"ratio", ratio}, {"accepted", accepted}};
            if (family == Family::Window312) {
                s["max_window"] = most.window;
                s["max_pairs"] = most.pairs;
            } else if (family == Family::Strip) {
                s["max_buffer"] = most.buffer;
                s["strips"] = most.strips;
            }
            return s;
        };
        Json row{{"n", n}, {"reference", reference}};
        if (family == Family::Window312) row["k"] = window_width_312(n);
        if (family == Family::Strip) row["strip_size"] = strip_size(n);
        row["random"] = summarize(0, options.trials);
        row["adversarial"] = summarize(options.trials, runs.size());
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["max_ratio"] = max_ratio;
    j["wall_ms"] = clock.ms();
    return result;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Streaming permutation pattern detection"};
    app.name("ppm");
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

    std::string pattern_text;
    std::string algorithm_text = "auto";
    std::string mode_text = "perm";
    StreamSource source;
    Value inline_n = 0;

    auto add_stream_flags = [&](CLI::App* sub) {
        sub->add_option("--input", source.path, "Stream file");
        sub->add_option("--stream", source.values, "Inline values, comma separated");
        sub->add_option("--n", inline_n, "Universe size for --stream");
        sub->add_option("--mode", mode_text, "perm or seq, for --stream")->check(CLI::IsMember({"perm", "seq"}));
    };

    DetectOptions detect;
    auto* detect_cmd = app.add_subcommand("detect", "Run the streaming detector on a stream");
    detect_cmd->add_option("--pattern", pattern_text, "Pattern, e.g. 312 or 1,2,10,3")->required();
    add_stream_flags(detect_cmd);
    detect_cmd->add_option("--algorithm", algorithm_text, "auto, monotone, 312, strip or baseline");
    detect_cmd->add_flag("--check", detect.check, "Cross-check against the exhaustive oracle");

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive containment (and count) on a stream");
    oracle_cmd->add_option("--pattern", pattern_text, "Pattern")->required();
    add_stream_flags(oracle_cmd);
    oracle_cmd->add_flag("--count", oracle.count, "Also count occurrences");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a hardness instance as a stream file");
    gen_cmd->add_option("--construction", gen.construction,
                        "seq312, front4:<4231|4213|4132|4123>, 4312, 3142, 2143, monotone-lb or extend")
        ->required();
    gen_cmd->add_option("--s", gen.s, "Alice's set, comma separated");
    gen_cmd->add_option("--t", gen.t, "Bob's set, comma separated");
    gen_cmd->add_option("--nsets", gen.n_sets, "Set universe size");
    gen_cmd->add_option("--seed", gen.seed, "Draw missing sets at random");
    gen_cmd->add_option("--k", gen.k, "monotone-lb: pattern length");
    gen_cmd->add_option("--n", gen.n, "monotone-lb: even universe size");
    gen_cmd->add_option("--rho", gen.rho, "monotone-lb: odd increasing sequence");
    gen_cmd->add_option("--sigma", gen.sigma, "monotone-lb: competing sequence");
    gen_cmd->add_option("--which", gen.which, "monotone-lb: accepting, rejecting or alpha");
    gen_cmd->add_option("--input", gen.input, "extend: source stream file");
    gen_cmd->add_option("--output", gen.output, "Write the stream file here instead of stdout");

    FuzzOptions fuzz;
    std::string fuzz_construction;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Detector against oracle on random or exhaustive inputs");
    fuzz_cmd->add_option("--pattern", pattern_text, "Pattern");
    fuzz_cmd->add_option("--construction", fuzz_construction, "Disjointness construction instead of a pattern");
    fuzz_cmd->add_option("--n", fuzz.n, "Permutation size");
    fuzz_cmd->add_option("--nsets", fuzz.n_sets, "Set universe size for --construction");
    fuzz_cmd->add_option("--trials", fuzz.trials, "Random trials");
    fuzz_cmd->add_option("--seed", fuzz.seed, "Run seed");
    fuzz_cmd->add_flag("--exhaustive", fuzz.exhaustive, "Every permutation of [n], or every (S, T)");
    fuzz_cmd->add_flag("--allow-large", fuzz.allow_large, "Permit exhaustive runs beyond n=9 or nsets=6");
    fuzz_cmd->add_option("--threads", fuzz.threads, "Worker threads (default: PPM_THREADS, else all cores)");
    fuzz_cmd->add_option("--algorithm", algorithm_text, "Detector selection");
    fuzz_cmd->add_option("--replay-out", fuzz.replay_out, "Counterexample file (default ppm-replay.txt)");
    fuzz_cmd->add_option("--replay", fuzz.replay_in, "Re-check a saved counterexample");

    BenchOptions bench;
    std::vector<Value> bench_sizes;
    auto* bench_cmd = app.add_subcommand("bench", "Peak space on random and avoiding permutations");
    bench_cmd->add_option("--pattern", pattern_text, "Pattern")->required();
    bench_cmd->add_option("--n", bench_sizes, "Sizes, comma separated")->delimiter(',')->required();
    bench_cmd->add_option("--trials", bench.trials, "Runs per size and input kind");
    bench_cmd->add_option("--seed", bench.seed, "Run seed");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "ppm: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (source.values && inline_n > 0) source.n = inline_n;
        source.mode = parse_stream_mode(mode_text);
        const Algorithm algorithm = parse_algorithm(algorithm_text);
        CommandResult result;
        if (*detect_cmd) {
            detect.pattern = Pattern::parse(pattern_text);
            detect.source = source;
            detect.algorithm = algorithm;
            result = cmd_detect(detect);
        } else if (*oracle_cmd) {
            oracle.pattern = Pattern::parse(pattern_text);
            oracle.source = source;
            result = cmd_oracle(oracle);
        } else if (*gen_cmd) {
            GenResult g = cmd_gen(gen);
            if (!gen.output && format == "text") {
                write_stream(out, g.stream, g.comments);
                return kExitOk;
            }
            result = std::move(g.result);
        } else if (*fuzz_cmd) {
            if (!pattern_text.empty()) fuzz.pattern = Pattern::parse(pattern_text);
            if (!fuzz_construction.empty()) fuzz.construction = fuzz_construction;
            fuzz.algorithm = algorithm;
            result = cmd_fuzz(fuzz);
        } else {
            bench.pattern = Pattern::parse(pattern_text);
            bench.sizes = bench_sizes;
            result = cmd_bench(bench);
        }
        if (format == "json") {
            out << result.report.dump(2) << '\n';
        } else {
            out << render_text(result.report);
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        err << "ppm: error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace ppm::cli
