#include "ppm/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ppm {

namespace {

Value parse_int(std::string_view token, std::string_view what) {
    Value v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("stream file: bad " + std::string(what) + " '" + std::string(token) + "'");
    }
    return v;
}

void parse_header(const std::string& line, StreamInstance& inst) {
    std::istringstream is(line);
    std::string tok;
    bool have_n = false;
    bool have_mode = false;
    while (is >> tok) {
        if (tok.rfind("n=", 0) == 0) {
            inst.n = parse_int(std::string_view(tok).substr(2), "n");
            have_n = true;
        } else if (tok.rfind("mode=", 0) == 0) {
            inst.mode = parse_stream_mode(std::string_view(tok).substr(5));
            have_mode = true;
        } else {
            throw std::invalid_argument("stream file: unexpected header token '" + tok + "'");
        }
    }
    if (!have_n || !have_mode) {
        throw std::invalid_argument("stream file: header must be 'n=<int> mode=<perm|seq>'");
    }
}

}  // namespace

StreamFile read_stream(std::istream& in) {
    StreamFile file;
    bool header_seen = false;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::string text = line.substr(first + 1);
            if (!text.empty() && text.front() == ' ') text.erase(0, 1);
            while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.pop_back();
            file.comments.push_back(std::move(text));
            continue;
        }
        if (!header_seen) {
            parse_header(line, file.stream);
            header_seen = true;
            continue;
        }
        std::istringstream is(line);
        std::string tok;
        while (is >> tok) file.stream.elements.push_back(parse_int(tok, "value"));
    }
    if (!header_seen) throw std::invalid_argument("stream file: missing header");
    return file;
}

StreamFile read_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stream file '" + path + "'");
    return read_stream(in);
}

void write_stream(std::ostream& out, const StreamInstance& inst, std::span<const std::string> comments) {
    out << "n=" << inst.n << " mode=" << to_string(inst.mode) << '\n';
    for (const auto& c : comments) out << "# " << c << '\n';
    constexpr std::size_t kPerLine = 32;
    for (std::size_t i = 0; i < inst.elements.size(); ++i) {
        out << inst.elements[i];
        out << ((i + 1) % kPerLine == 0 || i + 1 == inst.elements.size() ? '\n' : ' ');
    }
}

void write_stream_file(const std::string& path, const StreamInstance& inst,
                       std::span<const std::string> comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write stream file '" + path + "'");
    write_stream(out, inst, comments);
}

}  // namespace ppm
