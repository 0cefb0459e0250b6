#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcpd/cpd.hpp"
#include "wcpd/simgen.hpp"
#include "wcpd/time_series.hpp"
#include "wcpd/tssc.hpp"

namespace wcpd {

/// Which columns of a delimited file hold what. Empty value_columns selects
/// every column that is neither the time nor the label column.
struct ColumnMapping {
  std::string time_column;
  std::vector<std::string> value_columns;
  std::string label_column;
  char delimiter = ',';
};

std::string read_text_file(const std::filesystem::path& path);
/// Truncates and writes; throws DataError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Header-bearing delimited text to a series. `truth_path`, when given, names
/// a sidecar with one ground-truth change point index per line.
TimeSeries ingest_csv(const std::filesystem::path& path, const ColumnMapping& mapping,
                      const std::optional<std::filesystem::path>& truth_path = std::nullopt);
TimeSeries parse_csv(std::string_view text, const ColumnMapping& mapping);

std::vector<std::size_t> parse_indices(std::string_view text);
std::vector<std::size_t> read_indices(const std::filesystem::path& path);
std::string format_indices(std::span<const std::size_t> indices);

/// Columns x0..x{d-1} and, when present, label.
std::string format_series_csv(const TimeSeries& series);

/// t,sigma_raw,sigma_filtered; entries outside the valid range are written as
/// NA. Without a filtered trace the last column is NA throughout.
std::string format_trace_csv(const StatTrace& raw, const StatTrace* filtered);
/// Reads one column of a trace file back as a trace (valid where not NA).
StatTrace parse_trace_csv(std::string_view text, bool filtered_column);

/// segment_index,start,end,label
std::string format_segment_labels(const SegmentLabeling& labeling, std::size_t length);
/// t,label
std::string format_sample_labels(const SegmentLabeling& labeling, std::size_t length);
SegmentLabeling parse_segment_labels(std::string_view text, std::size_t k);

SeriesSpec parse_series_spec(std::string_view json_text);

/// Pipeline inputs. Values given on the command line override the file.
struct RunConfig {
  std::size_t beta = 50;
  double lambda = 0.462;
  std::size_t k = 2;
  std::size_t delta = 50;
  std::uint64_t seed = 0;
  std::optional<std::string> filter_path;
  std::optional<std::string> input_path;
  std::optional<std::string> truth_path;
  std::string output_dir = ".";
  ColumnMapping columns;
  bool difference = false;

  void validate() const;
};

RunConfig parse_run_config(std::string_view json_text);

}  // namespace wcpd
