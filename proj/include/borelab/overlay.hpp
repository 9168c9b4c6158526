#pragma once

// Comparison of a computed profile with a gauge record (scaled time against
// scaled elevation) taken at a fixed station.

#include <string>
#include <vector>

#include "borelab/io.hpp"

namespace borelab::overlay {

struct TimeSeries {
  std::vector<double> t;  ///< strictly increasing
  std::vector<double> eta;
};

/// First two columns of a CSV; requires >= 10 rows, finite values and
/// strictly increasing t. Errors name the offending line.
TimeSeries read_series_csv(const std::string& path);
TimeSeries parse_series_csv(const std::string& text, const std::string& source);

/// A traveling wave eta(xi) passing a gauge: t = -xi / c, reordered.
TimeSeries station_series(const std::vector<double>& xi, const std::vector<double>& eta,
                          double c);

/// Model value at t by linear interpolation, clamped to the end values.
double sample(const TimeSeries& s, double t);

struct Report {
  double shift = 0.0;  ///< model time + shift = data time
  double rms = 0.0;
  double crest_model = 0.0;
  double crest_data = 0.0;
  double crest_difference = 0.0;  ///< crest_data - crest_model
  std::size_t samples = 0;        ///< data rows inside the shifted model range
};

/// Aligns the leading fronts (half-crest crossings, refined by least squares
/// over the front window) and reports the misfit over the overlap.
Report compare(const TimeSeries& model, const TimeSeries& data);

}  // namespace borelab::overlay
