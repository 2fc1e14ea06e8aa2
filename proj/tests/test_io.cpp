#include <gtest/gtest.h>

#include "sfwm/io/config.hpp"
#include "sfwm/io/csv.hpp"

using namespace sfwm;
using namespace sfwm::io;

TEST(Config, DefaultsRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(parse_config(emit_config(c)), c);
}

TEST(Config, EditedValuesRoundTrip) {
  RunConfig c;
  c.fiber = {1.8162, 0.1, 0.3};
  c.pump.lambda1_um = 1.1;
  c.pump.symmetric_partner = true;
  c.pump.power1_w = 0.1 + 0.2;
  c.grids.contour_powers_w = {0, 200, 1e3};
  c.tolerances.jsa_method = "gaussian";
  c.sweep.radii_um = {1.8, 1.81};
  c.interference.lambda_ndp2_um = 0.8283;
  c.dispersion.mode_model = ModeModel::scalar_lp01;
  c.threads = 3;
  const auto text = emit_config(c);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_EQ(emit_config(parse_config(text)), text);
}

TEST(Config, PartialConfigUsesDefaults) {
  const auto c = parse_config(R"({"fiber": {"core_radius_um": 0.7}})");
  EXPECT_EQ(c.fiber.core_radius_um, 0.7);
  EXPECT_EQ(c.fiber.air_filling_fraction, RunConfig{}.fiber.air_filling_fraction);
  EXPECT_EQ(c.tolerances, RunConfig{}.tolerances);
}

TEST(Config, MalformedJsonReportsLocation) {
  try {
    parse_config("{\n  \"fiber\": {\"core_radius_um\": 0.7,}\n}", "bad.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json:2:"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownKeyNamed) {
  try {
    parse_config(R"({"fiber": {"core_radiu_um": 0.7}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("fiber.core_radiu_um"), std::string::npos) << e.what();
  }
}

TEST(Config, WrongTypeNamed) {
  try {
    parse_config(R"({"pump": {"power1_w": "five"}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("pump.power1_w"), std::string::npos) << e.what();
  }
}

TEST(Config, BadEnumRejected) {
  EXPECT_THROW(parse_config(R"({"dispersion": {"mode_model": "lp11"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"tolerances": {"jsa_method": "exact"}})"), ConfigError);
}

TEST(Json, SeventeenDigits) {
  json j = {{"x", 0.1}, {"n", 3}};
  const auto s = dump_json(j);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos) << s;
  EXPECT_NE(s.find("\"n\": 3"), std::string::npos);
  EXPECT_EQ(json::parse(s)["x"].get<double>(), 0.1);
}

TEST(Csv, NineDigits) {
  CsvWriter w({"a", "b"});
  w.row({1.0 / 3.0, 2e-30});
  EXPECT_EQ(w.str(), "a,b\n0.333333333,2e-30\n");
}

TEST(Errors, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorKind::numeric), 1);
  EXPECT_EQ(exit_code(ErrorKind::config), 2);
  EXPECT_EQ(exit_code(ErrorKind::domain), 3);
  EXPECT_EQ(DesignError("x").kind(), ErrorKind::numeric);
  EXPECT_EQ(DomainError("x").kind(), ErrorKind::domain);
}
