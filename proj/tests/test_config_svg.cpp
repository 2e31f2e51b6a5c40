// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "fc/config.hpp"
#include "fc/errors.hpp"
#include "fc/svg.hpp"

using namespace fc;

TEST(Config, ParsesTypedValues) {
  const Config c = Config::parse(R"(# sweep
model = hubbard
sizes = 4, 6 ,8
couplings = 0.5,1e1
optimize = true
seed = 18446744073709551615
t = -1.5
)");
  EXPECT_EQ(c.get_string("model", "x"), "hubbard");
  EXPECT_EQ(c.get_ints("sizes", {}), (std::vector<int>{4, 6, 8}));
  EXPECT_EQ(c.get_doubles("couplings", {}), (std::vector<double>{0.5, 10.0}));
  EXPECT_TRUE(c.get_bool("optimize", false));
  EXPECT_EQ(c.get_u64("seed", 0), 18446744073709551615ULL);
  EXPECT_EQ(c.get_double("t", 0.0), -1.5);
  EXPECT_EQ(c.get_int("missing", 7), 7);
}

TEST(Config, LaterAssignmentWins) {
  const Config c = Config::parse("L = 4\nL = 8\n");
  EXPECT_EQ(c.get_int("L", 0), 8);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    Config::parse("a = 1\nthis line is wrong\n", "run.cfg");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("run.cfg:2"), std::string::npos) << e.what();
  }
  const Config c = Config::parse("n = 4x\nflag = maybe\nkind = foo\n");
  EXPECT_THROW(c.get_int("n", 0), ConfigError);
  EXPECT_THROW(c.get_bool("flag", false), ConfigError);
  EXPECT_THROW(c.get_choice("kind", "bar", {"bar", "baz"}), ConfigError);
  EXPECT_THROW(c.require_known({"n", "flag"}), ConfigError);
}

TEST(Config, ResolvedListsConsultedKeysWithDefaults) {
  const Config c = Config::parse("b = 2\nunused = 1\n");
  c.get_int("b", 0);
  c.get_double("a", 0.25);
  EXPECT_EQ(c.resolved(), "a = 0.25\nb = 2\n");
}

TEST(Svg, RendersSeriesAndMetadata) {
  Plot p;
  p.title = "S vs U";
  p.x_label = "U/t";
  p.y_label = "S";
  p.metadata = "seed=1 -- end";
  p.series.push_back({"pos", {0, 1, 2}, {1.0, 0.5, std::nan("")}, false});
  p.series.push_back({"mom", {0, 1, 2}, {0.1, 0.6, 0.9}, true});
  const std::string svg = render_svg(p);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0U);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("pos"), std::string::npos);
  EXPECT_NE(svg.find("mom"), std::string::npos);
  const auto open = svg.find("<!--"), close = svg.find("-->");
  ASSERT_NE(open, std::string::npos);
  const std::string comment = svg.substr(open + 4, close - open - 4);
  EXPECT_NE(comment.find("seed=1"), std::string::npos);
  EXPECT_EQ(comment.find("--"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg, render_svg(p));
}

TEST(Svg, EmptyPlotStillValid) {
  const std::string svg = render_svg(Plot{});
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
