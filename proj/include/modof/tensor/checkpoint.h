//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_TENSOR_CHECKPOINT_H_
#define MODOF_TENSOR_CHECKPOINT_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modof/tensor/params.h"

namespace modof::tensor {

class CheckpointError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kCheckpointMagic[8] = { 'M', 'O', 'D', 'O',
                                              'F', 'C', 'K', 'P' };
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Layout (little-endian): magic[8], u32 version, u64 vocab hash,
/// u32 #meta, {u32 len, key, u32 len, value}*, u32 #tensors,
/// {u32 len, name, u64 rows, u64 cols, f64 data[rows*cols]}*.
struct Checkpoint {
  std::uint64_t vocab_hash = 0;
  std::map<std::string, std::string> meta;
  std::vector<std::pair<std::string, Mat>> tensors;

  const Mat *find(const std::string &name) const;
};

void save_checkpoint(const std::string &path, const Checkpoint &c);
Checkpoint load_checkpoint(const std::string &path);

/// Tensors "param/<name>", plus "m/", "v/", "vhat/" when `optimizer`; the
/// step count goes to meta["optimizer_step"].
void store_params(Checkpoint &c, const ParamStore &ps, bool optimizer);
/// Copies values (and optimizer state when present) into matching
/// parameters. Throws CheckpointError on missing names or shape mismatch.
void restore_params(const Checkpoint &c, ParamStore &ps);

}  // namespace modof::tensor

#endif  // MODOF_TENSOR_CHECKPOINT_H_
