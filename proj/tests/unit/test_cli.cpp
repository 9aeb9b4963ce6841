//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "modof/cli/config.h"
#include "modof/net/train.h"
#include "test_util.h"

namespace modof::cli {
namespace {

int run(const std::string &args) {
  const std::string cmd =
      std::string(MODOF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lines(const std::string &path,
                 const std::vector<std::string> &lines) {
  std::ofstream out(path);
  for (const auto &l: lines)
    out << l << '\n';
}

TEST(ConfigTest, ParsesKnownKeys) {
  const Config c = Config::parse(
      "# comment\nhidden = 32\nz_dim=8\ndelta = 0.6\nseed = 5\n\n", Config{});
  EXPECT_EQ(c.hp.hidden, 32);
  EXPECT_EQ(c.hp.z_dim, 8);
  EXPECT_DOUBLE_EQ(c.pipe.delta, 0.6);
  EXPECT_EQ(c.seed, 5u);
}

TEST(ConfigTest, RejectsUnknownAndMalformed) {
  EXPECT_THROW(Config::parse("hiddne = 3\n", Config{}), ConfigError);
  EXPECT_THROW(Config::parse("hidden = abc\n", Config{}), ConfigError);
  EXPECT_THROW(Config::parse("hidden\n", Config{}), ConfigError);
  try {
    Config::parse("hidden = 1\nbogus = 2\n", Config{});
    FAIL();
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(ConfigTest, LinesRoundTrip) {
  Config c;
  c.set("lr", "0.0025");
  c.set("m", "7");
  std::string text;
  for (const auto &l: c.lines())
    text += l + "\n";
  const Config back = Config::parse(text, Config{});
  EXPECT_EQ(back.lines(), c.lines());
  EXPECT_EQ(c.lines().size(), Config::keys().size());
}

TEST(CliTest, HelpSucceeds) { EXPECT_EQ(run("--help"), 0); }

TEST(CliTest, InputErrorsExitWithTwo) {
  testing::TempDir dir("cli-input");
  const std::string bad = dir.file("bad.smi");
  write_lines(bad, { "CCO", "C1CC" });
  EXPECT_EQ(run("score " + bad), 2);
  EXPECT_EQ(run("score " + dir.file("missing.smi")), 2);
  EXPECT_EQ(run("score " + bad + " --prop nonsense"), 2);
  const std::string cfg = dir.file("bad.cfg");
  write_lines(cfg, { "unknown_key = 1" });
  write_lines(dir.file("ok.smi"), { "CCO" });
  EXPECT_EQ(run("score " + dir.file("ok.smi") + " --config " + cfg), 2);
}

TEST(CliTest, VocabularyMismatchExitsWithThree) {
  testing::TempDir dir("cli-mismatch");
  const auto v1 = chem::NodeVocabulary::from_descriptors({ "CC", "CO" });
  const auto v2 = chem::NodeVocabulary::from_descriptors({ "CC", "CN" });
  net::HyperParams hp;
  hp.hidden = 4;
  hp.z_dim = 2;
  net::save_model(dir.file("m.ckpt"), net::Model(hp, v1.size()), v1, {});
  v2.save(dir.file("other.vocab"));
  write_lines(dir.file("in.smi"), { "CCO" });
  EXPECT_EQ(run("optimize " + dir.file("in.smi") + " --model "
                + dir.file("m.ckpt") + " --vocab " + dir.file("other.vocab")),
            3);
  std::ofstream(dir.file("junk.ckpt")) << "junk";
  v1.save(dir.file("m.vocab"));
  EXPECT_EQ(run("optimize " + dir.file("in.smi") + " --model "
                + dir.file("junk.ckpt") + " --vocab " + dir.file("m.vocab")),
            3);
}

TEST(CliTest, EndToEndRunsAreReproducible) {
  testing::TempDir dir("cli-e2e");
  const std::string corpus = std::string(MODOF_TEST_DATA)
                             + "/fixture_corpus.smi";
  ASSERT_EQ(run("calibrate " + corpus + " -o " + dir.file("c1.txt")), 0);
  ASSERT_EQ(run("calibrate " + corpus + " -o " + dir.file("c2.txt")), 0);
  EXPECT_EQ(slurp(dir.file("c1.txt")), slurp(dir.file("c2.txt")));

  ASSERT_EQ(run("pairs " + corpus + " -o " + dir.file("p.tsv")
                + " --sim 0.6 --calib " + dir.file("c1.txt")),
            0);
  ASSERT_EQ(run("train " + dir.file("p.tsv") + " -o " + dir.file("m.ckpt")
                + " --hidden 8 --z_dim 4 --t_a 2 --t_n 2 --epochs 1"
                + " --seed 3"),
            0);
  ASSERT_EQ(run("stats " + dir.file("p.tsv") + " -o " + dir.file("s.txt")),
            0);
  EXPECT_FALSE(slurp(dir.file("s.txt")).empty());

  const std::string opt = "optimize " + corpus + " --model "
                          + dir.file("m.ckpt") + " --k 3 --m 2 --iters 2 --seed 7"
                          + " --calib " + dir.file("c1.txt");
  ASSERT_EQ(run(opt + " -o " + dir.file("r1.tsv")), 0);
  ASSERT_EQ(run(opt + " --threads 2 -o " + dir.file("r2.tsv")), 0);
  const std::string r1 = slurp(dir.file("r1.tsv"));
  EXPECT_FALSE(r1.empty());
  EXPECT_EQ(r1, slurp(dir.file("r2.tsv")));
}

}  // namespace
}  // namespace modof::cli
