#include "borelab/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "borelab/error.hpp"

namespace borelab::overlay {
namespace {

// First upward crossing of `level`, linearly interpolated.
double rise_time(const TimeSeries& s, double level) {
  for (std::size_t i = 1; i < s.t.size(); ++i) {
    if (s.eta[i - 1] < level && s.eta[i] >= level) {
      const double w = (level - s.eta[i - 1]) / (s.eta[i] - s.eta[i - 1]);
      return s.t[i - 1] + w * (s.t[i] - s.t[i - 1]);
    }
  }
  throw NumericalFailure("overlay: series never rises through half its crest");
}

double crest(const TimeSeries& s) { return *std::max_element(s.eta.begin(), s.eta.end()); }

}  // namespace

TimeSeries parse_series_csv(const std::string& text, const std::string& source) {
  const io::CsvTable table = io::parse_csv(text, source, 2);
  if (table.rows.size() < 10) {
    std::ostringstream os;
    os << source << ": need at least 10 data rows, found " << table.rows.size();
    throw InvalidArgument(os.str());
  }
  TimeSeries s;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double t = table.rows[i][0];
    if (!s.t.empty() && !(t > s.t.back())) {
      std::ostringstream os;
      os << source << ":" << table.line_numbers[i] << ": time must be strictly increasing";
      throw InvalidArgument(os.str());
    }
    s.t.push_back(t);
    s.eta.push_back(table.rows[i][1]);
  }
  return s;
}

TimeSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_series_csv(buffer.str(), path);
}

TimeSeries station_series(const std::vector<double>& xi, const std::vector<double>& eta, double c) {
  if (!(c > 0.0)) throw InvalidArgument("overlay: speed must be positive");
  TimeSeries s;
  for (std::size_t k = xi.size(); k-- > 0;) {
    s.t.push_back(-xi[k] / c);
    s.eta.push_back(eta[k]);
  }
  return s;
}

double sample(const TimeSeries& s, double t) {
  if (t <= s.t.front()) return s.eta.front();
  if (t >= s.t.back()) return s.eta.back();
  const auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - s.t.begin());
  const double w = (t - s.t[i - 1]) / (s.t[i] - s.t[i - 1]);
  return s.eta[i - 1] + w * (s.eta[i] - s.eta[i - 1]);
}

Report compare(const TimeSeries& model, const TimeSeries& data) {
  if (model.t.size() < 2 || data.t.size() < 2) throw InvalidArgument("overlay: empty series");
  Report r;
  r.crest_model = crest(model);
  r.crest_data = crest(data);
  r.crest_difference = r.crest_data - r.crest_model;

  const double model_front = rise_time(model, 0.5 * r.crest_model);
  const double data_front = rise_time(data, 0.5 * r.crest_data);
  const double coarse = data_front - model_front;

  // Front window: from well ahead of the front to the first model crest.
  const auto peak = std::max_element(model.eta.begin(), model.eta.end());
  double rise = model.t[static_cast<std::size_t>(peak - model.eta.begin())] - model_front;
  if (!(rise > 0.0)) rise = 0.05 * (model.t.back() - model.t.front());
  const double lo = data_front - 1.5 * rise;
  const double hi = data_front + 1.5 * rise;
  auto sse = [&](double shift) {
    double sum = 0.0;
    for (std::size_t i = 0; i < data.t.size(); ++i) {
      if (data.t[i] < lo || data.t[i] > hi) continue;
      const double d = data.eta[i] - sample(model, data.t[i] - shift);
      sum += d * d;
    }
    return sum;
  };
  double a = coarse - rise;
  double b = coarse + rise;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = sse(x1);
  double f2 = sse(x2);
  for (int iter = 0; iter < 100 && b - a > 1e-12 * std::max(1.0, std::abs(coarse)); ++iter) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = sse(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = sse(x2);
    }
  }
  r.shift = 0.5 * (a + b);

  double sum = 0.0;
  for (std::size_t i = 0; i < data.t.size(); ++i) {
    const double tm = data.t[i] - r.shift;
    if (tm < model.t.front() || tm > model.t.back()) continue;
    const double d = data.eta[i] - sample(model, tm);
    sum += d * d;
    ++r.samples;
  }
  if (r.samples == 0) throw NumericalFailure("overlay: data and model do not overlap");
  r.rms = std::sqrt(sum / static_cast<double>(r.samples));
  return r;
}

}  // namespace borelab::overlay
