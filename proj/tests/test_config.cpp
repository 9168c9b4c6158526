#include <gtest/gtest.h>

#include <random>

#include "borelab/config.hpp"
#include "borelab/error.hpp"
#include "borelab/io.hpp"

using namespace borelab;
using namespace borelab::config;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "test.cfg");
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, Fig2PresetExpands) {
  const auto& p = find_preset("fig2").config;
  EXPECT_EQ(*p.c, 1.3);
  EXPECT_EQ(*p.delta, 0.2);
  EXPECT_EQ(*p.epsilon, 1.2);
  const auto w = wave_params(parse_config("preset = fig2\n"));
  EXPECT_EQ(w.c, 1.3);
  EXPECT_EQ(w.delta, 0.2);
  EXPECT_EQ(w.epsilon, 1.2);
}

TEST(Config, EveryPresetRoundTrips) {
  ASSERT_GE(presets().size(), 11u);
  for (const auto& p : presets()) {
    const std::string text = export_config(p.config);
    EXPECT_EQ(parse_config(text), p.config) << p.name;
    EXPECT_EQ(export_config(parse_config(text)), text) << p.name;
  }
}

TEST(Config, RandomConfigsRoundTrip) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::uniform_real_distribution<double> e(-300, 300);
  for (int k = 0; k < 200; ++k) {
    Config c;
    c.note = "random case " + std::to_string(k);
    c.c = 1 + std::abs(u(rng));
    c.delta = std::pow(10.0, e(rng) / 100);
    c.epsilon = std::abs(u(rng)) * 1e-7;
    c.profile.rtol = std::pow(10.0, e(rng) / 30);
    c.system = k % 3 == 0 ? pde::System::ShallowWater : pde::System::PeregrineDissipative;
    c.x_min = -std::abs(u(rng));
    c.dt = std::abs(u(rng)) / 7;
    c.boundary = k % 2 ? pde::Boundary::Periodic : pde::Boundary::Reflective;
    if (k % 2)
      c.ic = pde::Gaussian{u(rng), std::abs(u(rng))};
    else
      c.ic = pde::SmoothedRiemann{u(rng), std::abs(u(rng)), u(rng)};
    c.epsilons = {std::abs(u(rng)), 1.0 / 3, 1e-300};
    EXPECT_EQ(parse_config(export_config(c)), c) << export_config(c);
  }
}

TEST(Config, ShortestRoundTripDoubles) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Config, UnknownKeyNamesKeyAndLine) {
  const std::string msg = message_of("c = 1.3\n# comment\nepsilonn = 0.2\n");
  EXPECT_NE(msg.find("epsilonn"), std::string::npos) << msg;
  EXPECT_NE(msg.find("test.cfg:3"), std::string::npos) << msg;
}

TEST(Config, MalformedInputRejected) {
  EXPECT_NE(message_of("c 1.3\n"), "");
  EXPECT_NE(message_of("c = abc\n").find("'c'"), std::string::npos);
  EXPECT_NE(message_of("c = inf\n"), "");
  EXPECT_NE(message_of("boundary = sticky\n"), "");
  EXPECT_NE(message_of("ic = square\n"), "");
  EXPECT_NE(message_of("system = euler\n"), "");
  EXPECT_NE(message_of("c = 2\npreset = fig2\n").find("first"), std::string::npos);
  EXPECT_NE(message_of("preset = fig99\n"), "");
  EXPECT_NE(message_of("epsilons = 0.1, x\n"), "");
}

TEST(Config, MinimalFileUsesDefaults) {
  const auto c = parse_config("system = peregrine-dissipative\ndelta = 1\nepsilon = 0.1\n");
  const auto r = run_config(c);
  EXPECT_EQ(r.grid.n, 6400u);
  EXPECT_EQ(r.dt, 0.025);
  EXPECT_EQ(r.grid.boundary, pde::Boundary::Reflective);
  EXPECT_TRUE(std::holds_alternative<pde::SmoothedRiemann>(r.ic));
  EXPECT_THROW(run_config(parse_config("c = 2\n")), InvalidArgument);
  EXPECT_THROW(wave_params(parse_config("c = 2\n")), InvalidArgument);
}

TEST(Config, OverridesAfterPreset) {
  const auto c = parse_config("preset = sec4-riemann\nepsilon = 0.05\nramp_width = 4\n");
  EXPECT_EQ(*c.epsilon, 0.05);
  EXPECT_EQ(std::get<pde::SmoothedRiemann>(c.ic).ramp_width, 4.0);
  EXPECT_EQ(c.preset, "sec4-riemann");
  const auto r = run_config(c);
  EXPECT_EQ(r.snapshot_times.size(), 21u);
  EXPECT_EQ(r.snapshot_times.back(), 200.0);
}

TEST(Csv, ParsesHeaderAndReportsLines) {
  const auto t = io::parse_csv("t,eta\n0,1\n# note\n1,2\n", "d.csv", 2);
  EXPECT_EQ(t.header.size(), 2u);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.line_numbers[1], 4);
  try {
    io::parse_csv("t,eta\n0,1\n1,oops\n", "d.csv", 2);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("d.csv:3"), std::string::npos);
  }
  EXPECT_THROW(io::parse_csv("0\n", "d.csv", 2), InvalidArgument);
  EXPECT_THROW(io::parse_csv("0,nan\n", "d.csv", 2), InvalidArgument);
}

TEST(Csv, SeventeenDigits) {
  EXPECT_EQ(std::stod(io::format17(1.0 / 3)), 1.0 / 3);
  EXPECT_EQ(io::format17(0.5), "0.5");
}
