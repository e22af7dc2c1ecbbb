#pragma once

#include <string>

#include "json.hpp"

#include "config.hpp"

namespace nonparax::cli {

using Json = nlohmann::ordered_json;

// 17 significant digits, round-trip exact for binary64.
std::string format_double(double v);

// Writes to path via a temp file in the same directory plus rename, so
// readers never observe partial output. Throws IoError.
void atomic_write(const std::string& path, const std::string& content);

// Common sidecar scaffold: schema_version, command, build info, seed and the
// resolved parameter block.
Json metadata_base(const RunConfig& cfg);

void write_json(const std::string& path, const Json& j);

}  // namespace nonparax::cli
