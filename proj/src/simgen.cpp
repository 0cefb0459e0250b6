#include "wcpd/simgen.hpp"

#include <cmath>

#include <fmt/format.h>

#include "wcpd/error.hpp"
#include "wcpd/random.hpp"

namespace wcpd {

namespace {

void validate(const DistSpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale) || !std::isfinite(spec.location)) {
    throw DataError("distribution scale must be positive and finite");
  }
}

std::vector<double> draw(const DistSpec& spec, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  switch (spec.family) {
    case Family::normal:
      for (auto& x : out) x = spec.location + spec.scale * rng.normal();
      break;
    case Family::laplace:
      // inverse CDF
      for (auto& x : out) {
        const double u = rng.uniform_open();
        x = u < 0.5 ? spec.location + spec.scale * std::log(2.0 * u)
                    : spec.location - spec.scale * std::log(2.0 * (1.0 - u));
      }
      break;
  }
  return out;
}

}  // namespace

DistSpec DistSpec::normal(double location, double scale) {
  DistSpec s{Family::normal, location, scale};
  validate(s);
  return s;
}

DistSpec DistSpec::laplace(double location, double scale) {
  DistSpec s{Family::laplace, location, scale};
  validate(s);
  return s;
}

std::string to_string(const DistSpec& spec) {
  return fmt::format("{}({},{})", spec.family == Family::normal ? "N" : "L",
                     spec.location, spec.scale);
}

std::vector<double> sample(const DistSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  Rng rng(derive_seed(seed, {}));
  return draw(spec, n, rng);
}

TimeSeries generate(const SeriesSpec& spec) {
  if (spec.segments.empty()) throw DataError("series spec has no segments");
  if (spec.dimension == 0) throw DataError("series dimension must be positive");

  std::vector<std::vector<double>> channels(spec.dimension);
  std::vector<int> labels;
  std::vector<std::size_t> change_points;
  std::vector<DistSpec> distinct;

  for (std::size_t s = 0; s < spec.segments.size(); ++s) {
    const auto& seg = spec.segments[s];
    validate(seg.dist);
    if (seg.length == 0) throw DataError("segment length must be at least 1");
    if (s > 0) change_points.push_back(labels.size());

    int label = 0;
    while (static_cast<std::size_t>(label) < distinct.size() && !(distinct[label] == seg.dist)) ++label;
    if (static_cast<std::size_t>(label) == distinct.size()) distinct.push_back(seg.dist);
    labels.insert(labels.end(), seg.length, label);

    for (std::size_t k = 0; k < spec.dimension; ++k) {
      Rng rng(derive_seed(spec.seed, {s, k}));
      const auto values = draw(seg.dist, seg.length, rng);
      channels[k].insert(channels[k].end(), values.begin(), values.end());
    }
  }
  return TimeSeries(std::move(channels), std::move(labels), std::move(change_points));
}

}  // namespace wcpd
