#pragma once

#include <string>

#include <json.hpp>

namespace ckepler::json_io {

using ordered_json = nlohmann::ordered_json;

/// Serialize with insertion-ordered keys and %.15g floating-point formatting.
/// Parsing the output and re-dumping it reproduces the bytes exactly.
std::string dump(const ordered_json& j);

}  // namespace ckepler::json_io
