//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CLI_COMMANDS_H_
#define MODOF_CLI_COMMANDS_H_

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "modof/cli/config.h"
#include "modof/props/plogp.h"

namespace modof::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitModel = 3,
  kExitNumeric = 4,
};

/// Reads one SMILES per line (first whitespace-separated field); blank and
/// '#' lines are skipped. Throws ConfigError naming the line of the first
/// unparsable entry.
std::vector<std::string> read_corpus(const std::string &path);

/// Header lines shared by every output file.
std::vector<std::string> header_comments(const std::string &command,
                                         const std::vector<std::string> &inputs,
                                         const Config &cfg);

struct PropertyArgs {
  std::string prop = "plogp";  // plogp, logp, sa or cycle
  std::string calib;           // plogp normalization file
  std::string sa_table;        // fragment score table
};

std::unique_ptr<props::PropertyScorer> make_scorer(const PropertyArgs &a,
                                                   const Config &cfg);

struct ScoreArgs {
  std::string corpus;
  std::string output;  // empty: stdout
  PropertyArgs prop;
};

struct CalibrateArgs {
  std::string corpus;
  std::string output;
  std::string sa_table;
};

struct PairsArgs {
  std::string corpus;
  std::string output;
  std::string vocab;      // default: output + ".vocab"
  std::string hist;       // disconnection-site histogram TSV
  double sim = 0.6;
  double delta = 0.0;
  PropertyArgs prop;
};

struct TrainArgs {
  std::string pairs;
  std::string vocab;   // default: pairs + ".vocab"
  std::string output;  // checkpoint, rewritten after every epoch
  std::string resume;
  std::string log;     // default: output + ".log.tsv"
};

struct OptimizeArgs {
  std::string corpus;
  std::string model;
  std::string vocab;    // default: model + ".vocab"
  std::string output;   // empty: stdout
  std::string trace;
  std::string summary;
  bool multi = false;
  PropertyArgs prop;
};

struct StatsArgs {
  std::string pairs;
  std::string vocab;   // default: pairs + ".vocab"
  std::string output;  // empty: stdout
  int top = 5;
};

/// Each command returns an ExitCode; diagnostics go to `log`.
int run_score(const ScoreArgs &a, const Config &cfg, std::ostream &log);
int run_calibrate(const CalibrateArgs &a, const Config &cfg,
                  std::ostream &log);
int run_pairs(const PairsArgs &a, const Config &cfg, std::ostream &log);
int run_train(const TrainArgs &a, const Config &cfg, std::ostream &log);
int run_optimize(const OptimizeArgs &a, const Config &cfg, std::ostream &log);
int run_stats(const StatsArgs &a, const Config &cfg, std::ostream &log);

/// Runs `fn`, mapping exceptions to exit codes and messages on `log`.
int guarded(const std::function<int()> &fn, std::ostream &log);

}  // namespace modof::cli

#endif  // MODOF_CLI_COMMANDS_H_
