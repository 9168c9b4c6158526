#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "borelab/error.hpp"
#include "borelab/overlay.hpp"
#include "borelab/profile.hpp"

using namespace borelab;
using namespace borelab::overlay;

namespace {

TimeSeries model_for(double c) {
  const auto prof = tw::integrate_profile(wave::make_params(c, 1.0 / 3, 0.05));
  return station_series(prof.xi, prof.eta, c);
}

// Gauge record of the model, delayed by `shift`, on a uniform clock.
TimeSeries gauge(const TimeSeries& model, double shift, double sigma, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  TimeSeries d;
  for (double t = -40; t <= 300; t += 0.25) {
    d.t.push_back(t);
    d.eta.push_back(sample(model, t - shift) + (sigma > 0 ? noise(rng) : 0.0));
  }
  return d;
}

}  // namespace

TEST(Overlay, StationSeriesReversesOrder) {
  const auto s = station_series({-2, -1, 0, 1}, {4, 3, 2, 1}, 2.0);
  EXPECT_EQ(s.t, (std::vector<double>{-0.5, 0, 0.5, 1}));
  EXPECT_EQ(s.eta, (std::vector<double>{1, 2, 3, 4}));
  EXPECT_THROW(station_series({0, 1}, {0, 1}, 0.0), InvalidArgument);
}

TEST(Overlay, ShiftedModelAlignsExactly) {
  const auto m = model_for(1.104);
  const auto r = compare(m, gauge(m, 17.3, 0.0, 1));
  EXPECT_NEAR(r.shift, 17.3, 1e-3);
  EXPECT_LT(r.rms, 1e-4);
  EXPECT_NEAR(r.crest_difference, 0.0, 1e-3);
  EXPECT_GT(r.samples, 500u);
}

TEST(Overlay, NoiseLevelRecovered) {
  const auto m = model_for(1.104);
  const auto r = compare(m, gauge(m, -5.0, 0.01, 42));
  EXPECT_NEAR(r.rms / 0.01, 1.0, 0.1);
  EXPECT_NEAR(r.shift, -5.0, 0.1);
}

TEST(Overlay, MismatchedFroudeGivesLargeCrestDifference) {
  const auto model = model_for(1.081);
  const auto other = model_for(1.192);
  const auto r = compare(model, gauge(other, 0.0, 0.0, 1));
  EXPECT_GT(r.crest_difference, 0.1);
  EXPECT_GT(r.rms, 0.02);
}

TEST(Overlay, CsvValidation) {
  std::ostringstream ok;
  ok << "t,eta\n";
  for (int k = 0; k < 12; ++k) ok << k << "," << 0.1 * k << "\n";
  EXPECT_EQ(parse_series_csv(ok.str(), "g.csv").t.size(), 12u);
  EXPECT_THROW(parse_series_csv("t,eta\n0,1\n1,2\n", "g.csv"), InvalidArgument);
  std::ostringstream bad;
  for (int k = 0; k < 12; ++k) bad << (k == 6 ? 4 : k) << ",0\n";
  try {
    parse_series_csv(bad.str(), "g.csv");
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("g.csv:7"), std::string::npos) << e.what();
  }
}
