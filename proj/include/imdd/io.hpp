#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "imdd/core.hpp"
#include "imdd/optimizer.hpp"
#include "imdd/simulator.hpp"

namespace imdd::io {

/// {"name": ..., "basis": {"T": ..., "kinds": [...]}, "points": [[...], ...]}
nlohmann::json to_json(const Constellation& c);

/// Throws Errc::parse_error naming the offending field.
Constellation constellation_from_json(const nlohmann::json& j);

void write_constellation(const std::filesystem::path& path, const Constellation& c);
Constellation read_constellation(const std::filesystem::path& path);

/// A built-in registry name or a path to a constellation JSON file.
Constellation resolve_constellation(const std::string& name_or_path);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const SimReport& r);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace imdd::io
