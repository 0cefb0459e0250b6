#include "wcpd/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "json_util.hpp"
#include "wcpd/error.hpp"

namespace wcpd {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(delim, pos);
    out.push_back(trim(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto next = text.find('\n', pos);
    if (next == std::string_view::npos) next = text.size();
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  // from_chars rejects a leading '+'
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_value(double v) { return std::isfinite(v) ? fmt::format("{}", v) : std::string("NA"); }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("cannot write " + path.string());
}

TimeSeries parse_csv(std::string_view text, const ColumnMapping& mapping) {
  const auto lines = lines_of(text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw DataError("empty file");

  const auto header = split(lines[first], mapping.delimiter);
  auto find_column = [&](std::string_view name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError(fmt::format("column '{}' not in header", name));
    return static_cast<std::size_t>(it - header.begin());
  };

  std::optional<std::size_t> label_col;
  if (!mapping.label_column.empty()) label_col = find_column(mapping.label_column);
  std::optional<std::size_t> time_col;
  if (!mapping.time_column.empty()) time_col = find_column(mapping.time_column);

  std::vector<std::size_t> value_cols;
  if (mapping.value_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != label_col && c != time_col) value_cols.push_back(c);
    }
  } else {
    for (const auto& name : mapping.value_columns) value_cols.push_back(find_column(name));
  }
  if (value_cols.empty()) throw DataError("no value columns");

  std::vector<std::vector<double>> channels(value_cols.size());
  std::vector<int> labels;
  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto cells = split(lines[li], mapping.delimiter);
    const std::size_t line_no = li + 1;
    if (cells.size() != header.size()) {
      throw DataError(fmt::format("line {}: expected {} fields, found {}", line_no, header.size(), cells.size()));
    }
    for (std::size_t k = 0; k < value_cols.size(); ++k) {
      double v = 0.0;
      if (!parse_double(cells[value_cols[k]], v) || !std::isfinite(v)) {
        throw DataError(fmt::format("line {}: non-numeric value '{}'", line_no, cells[value_cols[k]]));
      }
      channels[k].push_back(v);
    }
    if (label_col) {
      int l = 0;
      if (!parse_int(cells[*label_col], l)) {
        throw DataError(fmt::format("line {}: non-integer label '{}'", line_no, cells[*label_col]));
      }
      labels.push_back(l);
    }
  }
  if (channels.front().empty()) throw DataError("empty series");
  return TimeSeries(std::move(channels), std::move(labels));
}

TimeSeries ingest_csv(const std::filesystem::path& path, const ColumnMapping& mapping,
                      const std::optional<std::filesystem::path>& truth_path) {
  auto series = parse_csv(read_text_file(path), mapping);
  if (truth_path) series.set_change_points(read_indices(*truth_path));
  return series;
}

std::vector<std::size_t> parse_indices(std::string_view text) {
  std::vector<std::size_t> out;
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto s = trim(lines[i]);
    if (s.empty()) continue;
    std::size_t v = 0;
    if (!parse_int(s, v)) throw DataError(fmt::format("line {}: not an index '{}'", i + 1, s));
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> read_indices(const std::filesystem::path& path) {
  return parse_indices(read_text_file(path));
}

std::string format_indices(std::span<const std::size_t> indices) {
  std::string out;
  for (std::size_t i : indices) out += fmt::format("{}\n", i);
  return out;
}

std::string format_series_csv(const TimeSeries& series) {
  std::string out;
  for (std::size_t k = 0; k < series.dimension(); ++k) out += fmt::format("{}x{}", k ? "," : "", k);
  if (series.has_labels()) out += ",label";
  out += '\n';
  for (std::size_t t = 0; t < series.length(); ++t) {
    for (std::size_t k = 0; k < series.dimension(); ++k) {
      out += fmt::format("{}{}", k ? "," : "", series.at(t, k));
    }
    if (series.has_labels()) out += fmt::format(",{}", series.labels()[t]);
    out += '\n';
  }
  return out;
}

std::string format_trace_csv(const StatTrace& raw, const StatTrace* filtered) {
  std::string out = "t,sigma_raw,sigma_filtered\n";
  for (std::size_t t = 0; t < raw.size(); ++t) {
    const double r = raw.is_valid(t) ? raw.values[t] : std::numeric_limits<double>::quiet_NaN();
    const double f = filtered && filtered->is_valid(t) ? filtered->values[t]
                                                       : std::numeric_limits<double>::quiet_NaN();
    out += fmt::format("{},{},{}\n", t, format_value(r), format_value(f));
  }
  return out;
}

StatTrace parse_trace_csv(std::string_view text, bool filtered_column) {
  const auto lines = lines_of(text);
  if (lines.empty() || trim(lines[0]) != "t,sigma_raw,sigma_filtered") throw DataError("not a trace file");
  StatTrace trace;
  trace.filtered = filtered_column;
  bool seen_valid = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 3) throw DataError(fmt::format("line {}: expected 3 fields", i + 1));
    const auto cell = cells[filtered_column ? 2 : 1];
    const std::size_t t = trace.values.size();
    double v = std::numeric_limits<double>::quiet_NaN();
    if (cell != "NA") {
      if (!parse_double(cell, v)) throw DataError(fmt::format("line {}: bad value '{}'", i + 1, cell));
      if (!seen_valid) trace.valid_begin = t;
      else if (trace.valid_end != t) throw DataError("trace has a gap in its valid range");
      seen_valid = true;
      trace.valid_end = t + 1;
    }
    trace.values.push_back(v);
  }
  if (!seen_valid) throw DataError("trace has no valid entries");
  trace.beta = trace.valid_begin;
  return trace;
}

std::string format_segment_labels(const SegmentLabeling& labeling, std::size_t length) {
  labeling.validate();
  std::string out = "segment_index,start,end,label\n";
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const std::size_t start = i == 0 ? 0 : labeling.change_points[i - 1];
    const std::size_t end = i < labeling.change_points.size() ? labeling.change_points[i] : length;
    out += fmt::format("{},{},{},{}\n", i, start, end, labeling.labels[i]);
  }
  return out;
}

std::string format_sample_labels(const SegmentLabeling& labeling, std::size_t length) {
  const auto labels = labeling.expand(length);
  std::string out = "t,label\n";
  for (std::size_t t = 0; t < length; ++t) out += fmt::format("{},{}\n", t, labels[t]);
  return out;
}

SegmentLabeling parse_segment_labels(std::string_view text, std::size_t k) {
  const auto lines = lines_of(text);
  if (lines.empty() || trim(lines[0]) != "segment_index,start,end,label") {
    throw DataError("not a segment label file");
  }
  SegmentLabeling out;
  out.k = k;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split(lines[i], ',');
    std::size_t start = 0;
    int label = 0;
    if (cells.size() != 4 || !parse_int(cells[1], start) || !parse_int(cells[3], label)) {
      throw DataError(fmt::format("line {}: malformed segment row", i + 1));
    }
    if (!out.labels.empty()) out.change_points.push_back(start);
    out.labels.push_back(label);
  }
  out.validate();
  return out;
}

SeriesSpec parse_series_spec(std::string_view json_text) {
  SeriesSpec spec;
  try {
    const auto doc = json::parse(json_text);
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.dimension = doc.value("dimension", std::size_t{1});
    for (const auto& seg : doc.at("segments")) {
      const auto length = seg.at("length").get<std::int64_t>();
      if (length < 1) throw DataError("segment length must be at least 1");
      spec.segments.push_back({detail::dist_from_json(seg), static_cast<std::size_t>(length)});
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed series spec: ") + e.what());
  }
  if (spec.segments.empty()) throw DataError("series spec has no segments");
  if (spec.dimension < 1) throw DataError("series dimension must be positive");
  return spec;
}

void RunConfig::validate() const {
  if (beta < 2) throw DataError("beta must be at least 2");
  if (k < 1) throw DataError("K must be at least 1");
  if (!std::isfinite(lambda)) throw DataError("lambda must be finite");
}

RunConfig parse_run_config(std::string_view json_text) {
  RunConfig cfg;
  try {
    const auto doc = json::parse(json_text);
    auto get_count = [&](const char* key, std::size_t& out) {
      if (!doc.contains(key)) return;
      const auto v = doc.at(key).get<std::int64_t>();
      if (v < 0) throw DataError(fmt::format("config key '{}' must be nonnegative", key));
      out = static_cast<std::size_t>(v);
    };
    get_count("beta", cfg.beta);
    get_count("K", cfg.k);
    get_count("delta", cfg.delta);
    cfg.lambda = doc.value("lambda", cfg.lambda);
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("filter")) cfg.filter_path = doc.at("filter").get<std::string>();
    if (doc.contains("input")) cfg.input_path = doc.at("input").get<std::string>();
    if (doc.contains("truth")) cfg.truth_path = doc.at("truth").get<std::string>();
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
    cfg.difference = doc.value("difference", false);
    if (doc.contains("columns")) {
      const auto& c = doc.at("columns");
      cfg.columns.time_column = c.value("time", std::string{});
      cfg.columns.label_column = c.value("label", std::string{});
      cfg.columns.value_columns = c.value("values", std::vector<std::string>{});
    }
    const auto delim = doc.value("delimiter", std::string(","));
    if (delim == "\\t") {
      cfg.columns.delimiter = '\t';
    } else if (delim.size() == 1) {
      cfg.columns.delimiter = delim[0];
    } else {
      throw DataError("delimiter must be a single character");
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace wcpd
