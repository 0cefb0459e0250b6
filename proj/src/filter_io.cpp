#include "wcpd/filter_io.hpp"

#include <json.hpp>

#include "wcpd/error.hpp"
#include "wcpd/io.hpp"
#include "json_util.hpp"

namespace wcpd {

using nlohmann::json;
using detail::dist_from_json;
using detail::dist_to_json;

std::string serialize_filter(const MatchedFilter& filter) {
  filter.validate();
  json pairs = json::array();
  for (const auto& p : filter.change_pairs) {
    pairs.push_back({{"before", dist_to_json(p.before)}, {"after", dist_to_json(p.after)}});
  }
  json doc = {
      {"format", kFilterFormat},
      {"version", kFilterFormatVersion},
      {"beta", filter.beta},
      {"gamma", filter.gamma},
      {"ensemble_size", filter.ensemble_size},
      {"seed", filter.seed},
      {"clamped_taps", filter.clamped_taps},
      {"change_pairs", pairs},
      {"taps", filter.taps},
  };
  return doc.dump(2) + "\n";
}

MatchedFilter parse_filter(std::string_view text) {
  MatchedFilter f;
  try {
    const auto doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFilterFormat) throw DataError("not a matched filter file");
    const int version = doc.at("version").get<int>();
    if (version != kFilterFormatVersion) {
      throw DataError("unsupported filter file version " + std::to_string(version));
    }
    f.beta = doc.at("beta").get<std::size_t>();
    f.gamma = doc.at("gamma").get<double>();
    f.ensemble_size = doc.at("ensemble_size").get<std::size_t>();
    f.seed = doc.at("seed").get<std::uint64_t>();
    f.clamped_taps = doc.value("clamped_taps", std::size_t{0});
    for (const auto& p : doc.at("change_pairs")) {
      f.change_pairs.push_back({dist_from_json(p.at("before")), dist_from_json(p.at("after"))});
    }
    f.taps = doc.at("taps").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed filter file: ") + e.what());
  }
  f.source = FilterSource::loaded;
  f.validate();
  return f;
}

void save_filter(const MatchedFilter& filter, const std::filesystem::path& path) {
  write_text_file(path, serialize_filter(filter));
}

MatchedFilter load_filter(const std::filesystem::path& path) {
  return parse_filter(read_text_file(path));
}

}  // namespace wcpd
