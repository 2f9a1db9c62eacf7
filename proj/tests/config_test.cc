#include <gtest/gtest.h>

#include "serival/config.h"

namespace serival {
namespace {

TEST(Config, ParsesEveryKey) {
  const LabConfig c = parse_config(R"(# comment
field = F3
nvars = 1
prec = 10      # trailing comment
cutoff = 8
height = 2
mode = sampled
samples = 500
seed = 42
budget = 1000
workers = 2
tprec = 16
poly = Z^2 - T1^2
z = TN
seeds = t1*TN ; -t1*TN
i_first = 1
i_last = 7
prec_offset = 2
family.poly = Z^{p} - T1
family.p_last = 5
)",
                                   "test.cfg");
  EXPECT_EQ(c.scan.field, Field::prime(3));
  EXPECT_EQ(c.scan.nvars, 1);
  EXPECT_EQ(c.scan.prec, 10);
  EXPECT_EQ(c.scan.effective_cutoff(), 8);
  EXPECT_EQ(c.scan.height, 2);
  EXPECT_EQ(c.scan.mode, ScanMode::kSampled);
  EXPECT_EQ(c.scan.samples, 500);
  EXPECT_EQ(c.scan.seed, 42u);
  EXPECT_EQ(c.scan.budget, 1000u);
  EXPECT_EQ(c.scan.workers, 2);
  EXPECT_EQ(c.scan.tprec, 16);
  EXPECT_EQ(c.poly, "Z^2 - T1^2");
  EXPECT_EQ(c.z, "TN");
  EXPECT_EQ(c.seeds, (std::vector<std::string>{"t1*TN", "-t1*TN"}));
  EXPECT_EQ(c.i_first, 1);
  EXPECT_EQ(c.i_last, 7);
  EXPECT_EQ(c.prec_offset, 2);
  ASSERT_TRUE(c.family.has_value());
  EXPECT_EQ(c.family->poly, "Z^{p} - T1");
  EXPECT_EQ(c.family->p_last, 5);
}

TEST(Config, DefaultsToRationals) { EXPECT_TRUE(LabConfig{}.scan.field.is_rational()); }

void expect_error(const std::string& text, const std::string& message) {
  try {
    parse_config(text, "f.cfg");
    FAIL() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), message);
  }
}

TEST(Config, ErrorsCarryTheLine) {
  expect_error("prec = 4\nnonsense\n", "f.cfg:2: expected 'key = value'");
  expect_error("prec = 4\n\nprec = 5\n", "f.cfg:3: duplicate key 'prec'");
  expect_error("prec = four\n", "f.cfg:1: prec: not an integer: 'four'");
  expect_error("prec = 0\n", "f.cfg:1: prec: 0 out of range [1, 64]");
  expect_error("colour = red\n", "f.cfg:1: unknown key 'colour'");
  expect_error("mode = random\n", "f.cfg:1: mode: expected 'exhaustive' or 'sampled', got 'random'");
  expect_error("poly =\n", "f.cfg:1: poly: missing value");
  expect_error(" = 3\n", "f.cfg:1: missing key");
}

TEST(Config, OverridesApplyAfterTheFile) {
  LabConfig c = parse_config("prec = 4\n", "f.cfg");
  apply_setting(c, "prec", "6", "--prec");
  EXPECT_EQ(c.scan.prec, 6);
  EXPECT_THROW(apply_setting(c, "prec", "x", "--prec"), ConfigError);
}

TEST(Config, SeedsParseInTheConfiguredField) {
  LabConfig c = parse_config("seeds = t1*TN; -t1*TN\n", "f.cfg");
  EXPECT_EQ(parse_seeds(c).size(), 2u);
  c.seeds = {"t1*("};
  EXPECT_THROW(parse_seeds(c), ConfigError);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/serival.cfg"), ConfigError); }

}  // namespace
}  // namespace serival
