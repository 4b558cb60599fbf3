#include "logspiral/model_json.hpp"

#include <fstream>
#include <sstream>

#include "logspiral/errors.hpp"

namespace logspiral {

namespace {

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidArgument, std::string("missing key '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidArgument, std::string("missing key '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_array()) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number())
      throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const SpiralFamily& family) {
  const auto& p = family.params();
  return nlohmann::json{{"a", p.a}, {"mu", p.mu}, {"g", p.g}, {"theta", p.theta}};
}

SpiralFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "family config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "a" && key != "mu" && key != "g" && key != "theta")
      throw Error(ErrorCode::InvalidArgument, "unknown key '" + key + "'");
  }
  FamilyParams p;
  p.a = number_field(j, "a");
  p.mu = number_field(j, "mu");
  p.g = number_list(j, "g");
  p.theta = number_list(j, "theta");
  return SpiralFamily::validate(std::move(p));
}

SpiralFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, "malformed JSON in '" + path.string() + "': " + e.what());
  }
  return family_from_json(j);
}

std::string dump_family(const SpiralFamily& family) { return to_json(family).dump(); }

}  // namespace logspiral
