#pragma once

#include <string>

#include <json.hpp>

#include "wcpd/error.hpp"
#include "wcpd/simgen.hpp"

namespace wcpd::detail {

inline nlohmann::json dist_to_json(const DistSpec& d) {
  return {{"family", d.family == Family::normal ? "normal" : "laplace"},
          {"location", d.location},
          {"scale", d.scale}};
}

inline DistSpec dist_from_json(const nlohmann::json& j) {
  const auto family = j.at("family").get<std::string>();
  const double loc = j.value("location", 0.0);
  const double scale = j.value("scale", 1.0);
  if (family == "normal") return DistSpec::normal(loc, scale);
  if (family == "laplace") return DistSpec::laplace(loc, scale);
  throw DataError("unknown distribution family: " + family);
}

}  // namespace wcpd::detail
