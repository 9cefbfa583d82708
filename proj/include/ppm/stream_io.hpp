#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

// Stream file format:
//
//   n=<int> mode=<perm|seq>
//   <whitespace separated decimal values>
//
// Lines starting with '#' are comments and may appear anywhere.

struct StreamFile {
    StreamInstance stream;
    std::vector<std::string> comments;  // comment text without the leading "# "
};

/// Throws std::invalid_argument on a malformed header or value. Does not
/// validate the stream invariants; call validate_stream for that.
StreamFile read_stream(std::istream& in);
StreamFile read_stream_file(const std::string& path);

void write_stream(std::ostream& out, const StreamInstance& inst,
                  std::span<const std::string> comments = {});
void write_stream_file(const std::string& path, const StreamInstance& inst,
                       std::span<const std::string> comments = {});

}  // namespace ppm
