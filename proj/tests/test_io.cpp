#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "wcpd/error.hpp"
#include "wcpd/filter_io.hpp"
#include "wcpd/io.hpp"

using namespace wcpd;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("wcpd_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const DataError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(ParseCsv, AccelerometerWithLabels) {
  const std::string text =
      "time,ax,ay,az,activity\n"
      "0.00,0.1,-0.2,9.8,1\n"
      "0.01,0.2,-0.1,9.7,1\n"
      "0.02,1.5,0.3,9.1,2\n";
  ColumnMapping m;
  m.time_column = "time";
  m.label_column = "activity";
  const auto s = parse_csv(text, m);
  EXPECT_EQ(s.dimension(), 3u);
  EXPECT_EQ(s.length(), 3u);
  EXPECT_EQ(s.labels(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(s.at(2, 0), 1.5);
  EXPECT_EQ(s.at(0, 2), 9.8);
}

TEST(ParseCsv, SingleColumn) {
  const auto s = parse_csv("x\n1\n2\n3\n", {});
  EXPECT_EQ(s.dimension(), 1u);
  EXPECT_EQ(s.length(), 3u);
  EXPECT_FALSE(s.has_labels());
}

TEST(ParseCsv, SelectedColumnsAndDelimiter) {
  ColumnMapping m;
  m.value_columns = {"c", "a"};
  m.delimiter = '\t';
  const auto s = parse_csv("a\tb\tc\n1\t2\t3\n4\t5\t6\r\n", m);
  EXPECT_EQ(s.dimension(), 2u);
  EXPECT_EQ(s.at(0, 0), 3.0);
  EXPECT_EQ(s.at(1, 1), 4.0);
}

TEST(ParseCsv, Errors) {
  EXPECT_EQ(error_of([] { parse_csv("x,y\n", {}); }), "empty series");
  EXPECT_EQ(error_of([] { parse_csv("", {}); }), "empty file");
  EXPECT_EQ(error_of([] { parse_csv("x,y\n1,2\n3\n", {}); }), "line 3: expected 2 fields, found 1");
  EXPECT_EQ(error_of([] { parse_csv("x\n1\nabc\n", {}); }), "line 3: non-numeric value 'abc'");
  EXPECT_EQ(error_of([] { parse_csv("x\n1\nnan\n", {}); }), "line 3: non-numeric value 'nan'");
  ColumnMapping m;
  m.label_column = "l";
  EXPECT_EQ(error_of([&] { parse_csv("x,l\n1,0.5\n", m); }), "line 2: non-integer label '0.5'");
  m.label_column = "missing";
  EXPECT_THROW(parse_csv("x\n1\n", m), DataError);
}

TEST(IngestCsv, WithTruthSidecar) {
  const auto dir = temp_dir("ingest");
  write_text_file(dir / "s.csv", "v\n1\n2\n3\n4\n5\n");
  write_text_file(dir / "s.truth", "2\n4\n");
  const auto s = ingest_csv(dir / "s.csv", {}, dir / "s.truth");
  EXPECT_EQ(s.change_points(), (std::vector<std::size_t>{2, 4}));
  write_text_file(dir / "bad.truth", "2\n9\n");
  EXPECT_THROW(ingest_csv(dir / "s.csv", {}, dir / "bad.truth"), DataError);
  EXPECT_THROW(ingest_csv(dir / "nope.csv", {}), DataError);
}

TEST(Indices, RoundTrip) {
  const std::vector<std::size_t> v{3, 17, 200};
  EXPECT_EQ(format_indices(v), "3\n17\n200\n");
  EXPECT_EQ(parse_indices(format_indices(v)), v);
  EXPECT_TRUE(parse_indices("").empty());
  EXPECT_EQ(parse_indices(" 5 \n\n7\r\n"), (std::vector<std::size_t>{5, 7}));
  EXPECT_THROW(parse_indices("5\n-1\n"), DataError);
  EXPECT_THROW(parse_indices("1.5\n"), DataError);
}

TEST(SeriesCsv, RoundTripsExactly) {
  TimeSeries s({std::vector<double>{0.1, -1e-300, 3.0}, std::vector<double>{1.0 / 3.0, 2.5e10, -0.0}}, {0, 1, 1});
  const auto text = format_series_csv(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x0,x1,label");
  ColumnMapping m;
  m.label_column = "label";
  const auto back = parse_csv(text, m);
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(back.at(t, k), s.at(t, k));
  EXPECT_EQ(back.labels(), s.labels());
}

TEST(TraceCsv, MarksInvalidRegionAndRoundTrips) {
  StatTrace raw;
  raw.values = {std::nan(""), 0.25, 1.0 / 3.0, std::nan("")};
  raw.valid_begin = 1;
  raw.valid_end = 3;
  raw.beta = 1;
  const auto text = format_trace_csv(raw, nullptr);
  EXPECT_EQ(text, "t,sigma_raw,sigma_filtered\n0,NA,NA\n1,0.25,NA\n2,0.3333333333333333,NA\n3,NA,NA\n");
  const auto back = parse_trace_csv(text, false);
  EXPECT_EQ(back.valid_begin, 1u);
  EXPECT_EQ(back.valid_end, 3u);
  EXPECT_EQ(back.values[2], 1.0 / 3.0);
  EXPECT_THROW(parse_trace_csv(text, true), DataError);
  EXPECT_THROW(parse_trace_csv("a,b\n", false), DataError);
}

TEST(SegmentLabels, FormatsAndParses) {
  const SegmentLabeling l{{4, 9}, {1, 0, 1}, 2};
  const auto seg = format_segment_labels(l, 12);
  EXPECT_EQ(seg, "segment_index,start,end,label\n0,0,4,1\n1,4,9,0\n2,9,12,1\n");
  const auto back = parse_segment_labels(seg, 2);
  EXPECT_EQ(back.change_points, l.change_points);
  EXPECT_EQ(back.labels, l.labels);
  const auto samples = format_sample_labels(l, 12);
  EXPECT_EQ(samples.substr(0, 20), "t,label\n0,1\n1,1\n2,1\n");
  EXPECT_THROW(parse_segment_labels(seg, 1), DataError);
}

TEST(SeriesSpecJson, Parses) {
  const auto spec = parse_series_spec(R"({"seed": 5, "dimension": 2, "segments": [
      {"family": "normal", "location": 0, "scale": 1, "length": 100},
      {"family": "laplace", "location": 1, "scale": 0.5, "length": 50}]})");
  EXPECT_EQ(spec.seed, 5u);
  EXPECT_EQ(spec.dimension, 2u);
  ASSERT_EQ(spec.segments.size(), 2u);
  EXPECT_EQ(spec.segments[1].dist, DistSpec::laplace(1, 0.5));
  EXPECT_EQ(spec.segments[1].length, 50u);
}

TEST(SeriesSpecJson, Errors) {
  EXPECT_EQ(error_of([] {
              parse_series_spec(R"({"segments": [{"family": "normal", "location": 0, "scale": 1, "length": 0}]})");
            }),
            "segment length must be at least 1");
  EXPECT_THROW(parse_series_spec(R"({"segments": []})"), DataError);
  EXPECT_THROW(parse_series_spec("{"), DataError);
  EXPECT_THROW(parse_series_spec(R"({"segments": [{"family": "cauchy", "location": 0, "scale": 1, "length": 3}]})"),
               DataError);
  EXPECT_THROW(parse_series_spec(R"({"segments": [{"family": "normal", "location": 0, "scale": -1, "length": 3}]})"),
               DataError);
}

TEST(RunConfigJson, ParsesEveryKey) {
  const auto cfg = parse_run_config(R"({"beta": 80, "K": 4, "delta": 30, "lambda": 0.7, "seed": 9,
      "filter": "f.json", "input": "in.csv", "truth": "in.truth", "output_dir": "out",
      "difference": true, "delimiter": "\\t",
      "columns": {"time": "t", "label": "y", "values": ["a", "b"]}})");
  EXPECT_EQ(cfg.beta, 80u);
  EXPECT_EQ(cfg.k, 4u);
  EXPECT_EQ(cfg.delta, 30u);
  EXPECT_EQ(cfg.lambda, 0.7);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.filter_path, "f.json");
  EXPECT_EQ(cfg.input_path, "in.csv");
  EXPECT_EQ(cfg.truth_path, "in.truth");
  EXPECT_EQ(cfg.output_dir, "out");
  EXPECT_TRUE(cfg.difference);
  EXPECT_EQ(cfg.columns.delimiter, '\t');
  EXPECT_EQ(cfg.columns.time_column, "t");
  EXPECT_EQ(cfg.columns.label_column, "y");
  EXPECT_EQ(cfg.columns.value_columns, (std::vector<std::string>{"a", "b"}));
}

TEST(RunConfigJson, DefaultsAndValidation) {
  const auto cfg = parse_run_config("{}");
  EXPECT_EQ(cfg.beta, 50u);
  EXPECT_EQ(cfg.lambda, 0.462);
  EXPECT_EQ(cfg.k, 2u);
  EXPECT_THROW(parse_run_config(R"({"beta": 1})"), DataError);
  EXPECT_THROW(parse_run_config(R"({"K": 0})"), DataError);
  EXPECT_THROW(parse_run_config(R"({"delta": -1})"), DataError);
  EXPECT_THROW(parse_run_config(R"({"beta": "x"})"), DataError);
  EXPECT_THROW(parse_run_config(R"({"delimiter": "ab"})"), DataError);
}

TEST(TimeSeriesType, Validation) {
  EXPECT_THROW(TimeSeries({}), DataError);
  EXPECT_THROW(TimeSeries({std::vector<double>{}}), DataError);
  EXPECT_THROW(TimeSeries({std::vector<double>{1, 2}, std::vector<double>{1}}), DataError);
  EXPECT_THROW(TimeSeries({std::vector<double>{1, std::nan("")}}), DataError);
  EXPECT_THROW(TimeSeries({std::vector<double>{1, 2}}, {0}), DataError);
  EXPECT_THROW(TimeSeries({std::vector<double>{1, 2, 3}}, {}, {0}), DataError);
  EXPECT_THROW(TimeSeries({std::vector<double>{1, 2, 3}}, {}, {2, 1}), DataError);
  const auto rows = TimeSeries::from_rows({{1, 2}, {3, 4}, {5, 6}});
  EXPECT_EQ(rows.dimension(), 2u);
  EXPECT_EQ(rows.at(2, 1), 6.0);
}

TEST(TimeSeriesType, FirstDifference) {
  TimeSeries s({std::vector<double>{1, 4, 9, 16}}, {0, 0, 1, 1}, {2});
  const auto d = first_difference(s);
  EXPECT_EQ(d.length(), 3u);
  EXPECT_EQ(d.at(0, 0), 3.0);
  EXPECT_EQ(d.at(2, 0), 7.0);
  EXPECT_EQ(d.labels(), (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(d.change_points(), (std::vector<std::size_t>{1}));
}

TEST(FilterFile, RoundTripsAtFullPrecision) {
  MatchedFilter f;
  f.beta = 2;
  f.taps = {0.1, 0.2, 1.0 / 3.0, 0.2, 1.0 - 0.1 - 0.2 - 1.0 / 3.0 - 0.2};
  f.gamma = 1.2345678901234567;
  f.ensemble_size = 200;
  f.seed = 18446744073709551615ull;
  f.clamped_taps = 3;
  f.change_pairs = default_change_pairs();
  const auto back = parse_filter(serialize_filter(f));
  EXPECT_EQ(back.taps, f.taps);
  EXPECT_EQ(back.beta, f.beta);
  EXPECT_EQ(back.gamma, f.gamma);
  EXPECT_EQ(back.ensemble_size, f.ensemble_size);
  EXPECT_EQ(back.seed, f.seed);
  EXPECT_EQ(back.clamped_taps, f.clamped_taps);
  EXPECT_EQ(back.change_pairs, f.change_pairs);
  EXPECT_EQ(back.source, FilterSource::loaded);

  const auto dir = temp_dir("filter");
  save_filter(f, dir / "f.json");
  EXPECT_EQ(load_filter(dir / "f.json").taps, f.taps);
  EXPECT_THROW(load_filter(dir / "missing.json"), DataError);
}

TEST(FilterFile, RejectsBadContent) {
  MatchedFilter f;
  f.beta = 1;
  f.taps = {0.25, 0.5, 0.25};
  auto text = serialize_filter(f);
  EXPECT_NO_THROW(parse_filter(text));
  auto broken = text;
  broken.replace(broken.find("0.5"), 3, "0.6");
  EXPECT_THROW(parse_filter(broken), DataError);  // unit area
  auto versioned = text;
  versioned.replace(versioned.find("\"version\": 1"), 12, "\"version\": 9");
  EXPECT_THROW(parse_filter(versioned), DataError);
  EXPECT_THROW(parse_filter("{}"), DataError);
  EXPECT_THROW(parse_filter("not json"), DataError);
}
