//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PIPE_PIPE_H_
#define MODOF_PIPE_PIPE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "modof/chem/vocabulary.h"
#include "modof/net/model.h"
#include "modof/props/plogp.h"
#include "modof/util/rng.h"

namespace modof::pipe {

struct PipeConfig {
  double delta = 0.4;  // similarity threshold against the original input
  int K = 20;          // decodes per source molecule per iteration
  int max_iters = 5;
  int m = 5;           // beam width of the multi-output variant
  int b = 20;          // outputs of the multi-output variant
  const props::PropertyScorer *scorer = nullptr;
  int threads = 1;     // decodes of one iteration

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Candidate {
  std::string smiles;
  double score = 0.0;
  double sim = 0.0;  // to the original input
  int source = 0;    // beam position decoded from
  int sample = 0;
  bool failed = false;
};

struct IterationTrace {
  int iteration = 0;  // 1-based
  std::vector<std::string> sources;
  std::vector<Candidate> candidates;
  /// Single-output: the accepted molecule, if any. Multi-output: next beam.
  std::vector<std::string> accepted;
  double score_before = 0.0;  // best score entering the iteration
  double score_after = 0.0;
  double best_candidate = 0.0;  // best admissible candidate score
  bool has_candidate = false;   // some candidate met the threshold
  double step_sim = 0.0;        // sim(previous, accepted), single-output
  double sim_after = 0.0;       // sim(best so far, input)
};

struct Output {
  std::string smiles;
  double score = 0.0;
  double sim = 0.0;
};

struct OptimResult {
  std::string input;
  double input_score = 0.0;
  std::vector<IterationTrace> iterations;
  std::vector<Output> outputs;           // score descending
  std::vector<double> accepted_scores;   // single-output chain
  int iterations_used = 0;
  bool noop = false;                     // output is the unmodified input
  std::string error;                     // input could not be processed
};

/// Iterative single-output optimization: each iteration decodes K
/// candidates from the current molecule and moves to the best one that
/// keeps similarity >= delta to the input and improves the score. Sample k
/// of iteration t uses rng.split(t).split(0).split(k).
OptimResult modof_pipe(const std::string &mx_smiles, net::Model &model,
                       const chem::NodeVocabulary &vocab,
                       const PipeConfig &cfg, const Rng &rng);

/// Beam variant: decodes K candidates from each of up to m beam molecules
/// (source i uses rng.split(t).split(i)), keeps the top m admissible
/// candidates as the next beam even without improvement, and returns the
/// top b improving candidates seen overall, or the input tagged no-op.
OptimResult modof_pipe_m(const std::string &mx_smiles, net::Model &model,
                         const chem::NodeVocabulary &vocab,
                         const PipeConfig &cfg, const Rng &rng);

/// Optimizes every input independently; molecule i uses
/// Rng(seed).split(i). Results keep input order.
std::vector<OptimResult> batch_optimize(const std::vector<std::string> &corpus,
                                        net::Model &model,
                                        const chem::NodeVocabulary &vocab,
                                        const PipeConfig &cfg, bool multi,
                                        std::uint64_t seed, int threads);

}  // namespace modof::pipe

#endif  // MODOF_PIPE_PIPE_H_
