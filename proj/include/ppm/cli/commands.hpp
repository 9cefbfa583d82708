#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ppm/cli/report.hpp"
#include "ppm/streaming/dispatch.hpp"

namespace ppm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDisagreement = 1;
inline constexpr int kExitUsage = 2;

/// Builds the detector under test. Defaults to make_detector.
using DetectorFactory = std::function<std::unique_ptr<Detector>(const Pattern&, Value, StreamMode, Algorithm)>;

struct CommandResult {
    Json report;
    int exit_code = kExitOk;
};

/// Where a command reads its stream: a stream file, or an inline value list.
struct StreamSource {
    std::optional<std::string> path;
    std::optional<std::string> values;  // "3,1,2"
    std::optional<Value> n;             // inline only; defaults to the length (perm) or the maximum (seq)
    StreamMode mode = StreamMode::Permutation;
};

StreamInstance load_stream(const StreamSource& source);

struct DetectOptions {
    Pattern pattern = Pattern::parse("1");
    StreamSource source;
    Algorithm algorithm = Algorithm::Auto;
    bool check = false;
    DetectorFactory factory;
};

struct OracleOptions {
    Pattern pattern = Pattern::parse("1");
    StreamSource source;
    bool count = false;
};

struct GenOptions {
    std::string construction;  // seq312 | front4:<p> | 4312 | 3142 | 2143 | monotone-lb | extend
    std::optional<std::string> s;
    std::optional<std::string> t;
    std::optional<Value> n_sets;
    std::optional<std::uint64_t> seed;  // draws S and T when they are not given
    std::optional<std::size_t> k;
    std::optional<Value> n;
    std::optional<std::string> rho;
    std::optional<std::string> sigma;
    std::string which = "auto";  // monotone-lb: accepting | rejecting | alpha
    std::optional<std::string> input;
    std::optional<std::string> output;
};

struct GenResult {
    CommandResult result;
    StreamInstance stream;
    std::vector<std::string> comments;
};

struct FuzzOptions {
    std::optional<Pattern> pattern;
    std::optional<std::string> construction;  // as in GenOptions, Disjointness constructions only
    Value n = 0;
    Value n_sets = 0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    bool allow_large = false;
    std::optional<unsigned> threads;
    Algorithm algorithm = Algorithm::Auto;
    std::optional<std::string> replay_out;  // where a counterexample is written
    std::optional<std::string> replay_in;   // re-run one saved counterexample
    DetectorFactory factory;
};

struct BenchOptions {
    Pattern pattern = Pattern::parse("312");
    std::vector<Value> sizes;
    std::uint64_t trials = 10;
    std::uint64_t seed = 1;
    std::optional<unsigned> threads;
};

CommandResult cmd_detect(const DetectOptions& options);
CommandResult cmd_oracle(const OracleOptions& options);
GenResult cmd_gen(const GenOptions& options);
CommandResult cmd_fuzz(const FuzzOptions& options);
CommandResult cmd_bench(const BenchOptions& options);

/// Flag, then the PPM_THREADS environment variable, then the hardware count.
unsigned resolve_threads(std::optional<unsigned> flag);

/// Full command line: parses, runs, prints. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppm::cli
