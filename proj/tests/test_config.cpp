#include <gtest/gtest.h>

#include "weyllab/config.hpp"
#include "weyllab/report.hpp"

using namespace weyllab;

TEST(Config, ParseAndSerializeRoundTrip) {
  const std::string text = "command = log-fit\nmodel = dirichlet\ns = 0.5\nL-list = 1e4:1e8:8\n";
  const ExperimentConfig c = ExperimentConfig::parse(text);
  EXPECT_EQ(c.command(), "log-fit");
  EXPECT_EQ(c.get("s"), "0.5");
  EXPECT_FALSE(c.get("x").has_value());
  EXPECT_EQ(c.serialize(), text);
  EXPECT_EQ(ExperimentConfig::parse(c.serialize()), c);
}

TEST(Config, CommentsBlankLinesAndWhitespace) {
  const ExperimentConfig c = ExperimentConfig::parse("# run\n\n  command=weyl \nsymbol =  poly: x1^2+x2^2\nL=25");
  EXPECT_EQ(c.serialize(), "command = weyl\nsymbol = poly: x1^2+x2^2\nL = 25\n");
}

TEST(Config, LaterEntriesOverride) {
  const ExperimentConfig c = ExperimentConfig::parse("L = 1\nL = 2\n");
  EXPECT_EQ(c.get("L"), "2");
  EXPECT_EQ(c.entries().size(), 1u);
}

TEST(Config, Errors) {
  EXPECT_THROW(ExperimentConfig::parse("command = nope\n"), Error);
  EXPECT_THROW(ExperimentConfig::parse("just words\n"), Error);
  EXPECT_THROW(ExperimentConfig::parse(" = 3\n"), Error);
  EXPECT_THROW(ExperimentConfig("nope"), Error);
}

TEST(Report, FitJsonFields) {
  const FitReport fit = make_fit("ln L", {1, 2, 3}, {2, 4, 6}, 2.0);
  const Json j = to_json(fit);
  EXPECT_DOUBLE_EQ(j["slope"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(j["rel_err"].get<double>(), 0.0);
  EXPECT_EQ(j["samples"].size(), 3u);
  const std::vector<std::string> keys{"slope", "intercept", "target", "rel_err", "max_abs_residual",
                                      "sample_count", "design", "samples"};
  std::size_t i = 0;
  for (const auto& [key, value] : j.items()) EXPECT_EQ(key, keys[i++]);
}

TEST(Report, G17FormatRoundTrips) {
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_g17(v)), v);
}
