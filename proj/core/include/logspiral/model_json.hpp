#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "logspiral/model.hpp"

namespace logspiral {

// Config schema: {"a": <number>, "mu": <number>, "g": [...], "theta": [...]},
// theta in radians. Unknown keys are rejected so typos surface early.
nlohmann::json to_json(const SpiralFamily& family);
SpiralFamily family_from_json(const nlohmann::json& j);

SpiralFamily load_family(const std::filesystem::path& path);
std::string dump_family(const SpiralFamily& family);

}  // namespace logspiral
