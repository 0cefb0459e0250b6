#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wcpd/time_series.hpp"

namespace wcpd {

enum class Family { normal, laplace };

/// A location-scale family member. For `normal` the scale is the standard
/// deviation; for `laplace` it is b in exp(-|x - mu| / b), so the variance is
/// 2 b^2 and L(0, 1/sqrt(2)) has unit variance.
struct DistSpec {
  Family family = Family::normal;
  double location = 0.0;
  double scale = 1.0;

  static DistSpec normal(double location, double scale);
  static DistSpec laplace(double location, double scale);

  bool operator==(const DistSpec&) const = default;
};

std::string to_string(const DistSpec& spec);

struct SegmentSpec {
  DistSpec dist;
  std::size_t length = 0;
};

struct SeriesSpec {
  std::vector<SegmentSpec> segments;
  std::size_t dimension = 1;
  std::uint64_t seed = 0;
};

/// n IID draws from `spec`, deterministic in `seed`.
std::vector<double> sample(const DistSpec& spec, std::size_t n, std::uint64_t seed);

/// Concatenated IID segments. Every (segment, dimension) pair draws from its
/// own stream derived from the spec seed. Change points are the cumulative
/// segment boundaries; labels are the index of the first segment with an equal
/// DistSpec, renumbered densely in order of first appearance.
TimeSeries generate(const SeriesSpec& spec);

}  // namespace wcpd
