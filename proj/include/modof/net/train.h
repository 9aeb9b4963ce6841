//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_NET_TRAIN_H_
#define MODOF_NET_TRAIN_H_

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modof/net/decoder.h"

namespace modof::net {

class NumericError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Checkpoint belongs to another vocabulary or is not a model file.
class ModelMismatch: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct TrainState {
  int epoch = 0;  // completed epochs
  long long batches = 0;
  long long post_epoch1_batches = 0;
};

struct BatchRecord {
  int epoch = 0;
  long long batch = 0;
  double beta = 0.0;
  double loss = 0.0;
  double kl = 0.0;
  std::array<double, kNumHeads> head{};
};

struct TrainOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  /// TSV batch log; empty disables it.
  std::string log_path;
  /// Written as '#' lines above the log header of a fresh run.
  std::vector<std::string> log_comments;
  /// Per-epoch checkpoint written to `checkpoint_path` when non-empty.
  std::string checkpoint_path;
  std::function<void(const BatchRecord &)> on_batch;
  /// Called after each epoch; returning false stops training.
  std::function<bool(const TrainState &, Model &)> on_epoch;
};

/// Mini-batch AMSGrad over shuffled pairs until hp().epochs epochs have
/// completed, starting from `start`. The gradient of a batch is the mean of
/// per-pair gradients summed in batch order, so results do not depend on
/// the thread count. Throws NumericError on a non-finite loss.
TrainState train(Model &m, const std::vector<pairgen::TrainingPair> &pairs,
                 const chem::NodeVocabulary &vocab, const TrainOptions &opts,
                 TrainState start = {});

/// Mean teacher-forced accuracy per head over `pairs`.
HeadStats evaluate(Model &m, const std::vector<pairgen::TrainingPair> &pairs,
                   const chem::NodeVocabulary &vocab, int threads = 1);

void save_model(const std::string &path, const Model &m,
                const chem::NodeVocabulary &vocab, const TrainState &state,
                bool optimizer = true);
/// Throws ModelMismatch when the vocabulary hash differs and
/// tensor::CheckpointError on malformed files.
Model load_model(const std::string &path, const chem::NodeVocabulary &vocab,
                 TrainState *state = nullptr);

}  // namespace modof::net

#endif  // MODOF_NET_TRAIN_H_
