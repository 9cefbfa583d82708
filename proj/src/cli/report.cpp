#include "ppm/cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace ppm::cli {

Json to_json(const Occurrence& occ) {
    Json positions = Json::array();
    for (Index p : occ.positions) {
        if (p == Occurrence::kFuturePosition) {
            positions.push_back(nullptr);
        } else {
            positions.push_back(p);
        }
    }
    return Json{{"positions", positions}, {"values", occ.values}, {"future", occ.has_future()}};
}

Json to_json(const DetectorReport& report) {
    Json j;
    j["verdict"] = report.verdict;
    j["occurrence"] = report.occurrence ? to_json(*report.occurrence) : Json(nullptr);
    j["pushes"] = report.pushes;
    j["peak_cells"] = report.peak_cells;
    j["peak_bits"] = report.peak_bits;
    j["structure_peaks"] = Json::object();
    for (const auto& [name, cells] : report.structure_peaks) j["structure_peaks"][name] = cells;
    j["cells_at_peak"] = Json::object();
    for (const auto& [name, cells] : report.cells_at_peak) j["cells_at_peak"][name] = cells;
    return j;
}

Json instance_json(const StreamInstance& inst) {
    return Json{{"n", inst.n}, {"mode", to_string(inst.mode)}, {"length", inst.elements.size()}};
}

Json without_wall_time(Json report) {
    if (report.is_object()) {
        report.erase("wall_ms");
        for (auto& [key, value] : report.items()) value = without_wall_time(value);
    } else if (report.is_array()) {
        for (auto& value : report) value = without_wall_time(value);
    }
    return report;
}

namespace {

std::string scalar_text(const Json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream s;
        s.precision(4);
        s << v.get<double>();
        return s.str();
    }
    if (v.is_array()) {
        std::string out;
        for (const auto& e : v) {
            if (!out.empty()) out += ',';
            out += e.is_structured() ? e.dump() : scalar_text(e);
        }
        return out.empty() ? "-" : out;
    }
    return v.dump();
}

bool scalar_array(const Json& v) {
    return v.is_array() && std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

void flatten(const Json& obj, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    for (const auto& [key, value] : obj.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            flatten(value, name, out);
        } else {
            out.emplace_back(name, scalar_text(value));
        }
    }
}

void render_table(const Json& rows, std::ostream& out) {
    std::vector<std::vector<std::pair<std::string, std::string>>> cells;
    for (const auto& row : rows) {
        cells.emplace_back();
        flatten(row, "", cells.back());
    }
    if (cells.empty()) return;
    const auto& header = cells.front();
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].first.size();
        for (const auto& r : cells) {
            if (c < r.size()) width[c] = std::max(width[c], r[c].second.size());
        }
    }
    auto line = [&](auto&& cell) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            const std::string text = cell(c);
            out << "  " << text << std::string(width[c] - text.size(), ' ');
        }
        out << '\n';
    };
    line([&](std::size_t c) { return header[c].first; });
    for (const auto& r : cells) line([&](std::size_t c) { return c < r.size() ? r[c].second : std::string(); });
}

void render(const Json& obj, int depth, std::ostream& out) {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& [key, value] : obj.items()) {
        if (key == "schema") continue;
        if (value.is_object()) {
            out << indent << key << ":\n";
            render(value, depth + 1, out);
        } else if (value.is_array() && !scalar_array(value)) {
            out << indent << key << ":\n";
            render_table(value, out);
        } else {
            out << indent << key << ": " << scalar_text(value) << '\n';
        }
    }
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    render(report, 0, out);
    return out.str();
}

}  // namespace ppm::cli
