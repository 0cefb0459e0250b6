#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wcpd/cpd.hpp"

namespace wcpd {

inline constexpr std::string_view kFilterFormat = "wcpd-matched-filter";
inline constexpr int kFilterFormatVersion = 1;

/// JSON document with format tag, version, beta, gamma, ensemble size, seed,
/// clamped tap count, change pairs and taps (shortest round-trip decimal).
std::string serialize_filter(const MatchedFilter& filter);

/// Parses and validates a filter document; the result has source `loaded`.
MatchedFilter parse_filter(std::string_view text);

void save_filter(const MatchedFilter& filter, const std::filesystem::path& path);
MatchedFilter load_filter(const std::filesystem::path& path);

}  // namespace wcpd
