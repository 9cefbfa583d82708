#pragma once

#include <string>

#include "json.hpp"
#include "ppm/core.hpp"
#include "ppm/streaming/detector.hpp"

namespace ppm::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Future positions serialize as null.
Json to_json(const Occurrence& occ);
Json to_json(const DetectorReport& report);
Json instance_json(const StreamInstance& inst);

/// Copy of `report` without its timing field, for byte comparisons.
Json without_wall_time(Json report);

/// Human-oriented rendering; the layout is not stable.
std::string render_text(const Json& report);

}  // namespace ppm::cli
