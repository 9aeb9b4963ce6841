//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_TENSOR_PARAMS_H_
#define MODOF_TENSOR_PARAMS_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "modof/tensor/tensor.h"
#include "modof/util/rng.h"

namespace modof::tensor {

struct Param {
  std::string name;
  int index = 0;
  Mat value;
  Mat grad;
  // AMSGrad state.
  Mat m, v, vhat;
};

class ParamStore {
public:
  ParamStore() = default;
  ParamStore(const ParamStore &other);
  ParamStore &operator=(const ParamStore &other);
  ParamStore(ParamStore &&) = default;
  ParamStore &operator=(ParamStore &&) = default;

  /// Registers a zero-initialized parameter. Throws on duplicate names.
  Param &add(const std::string &name, long rows, long cols);
  Param &get(const std::string &name);
  const Param &get(const std::string &name) const;
  bool contains(const std::string &name) const;
  Param &at(int i) { return *params_[i]; }
  const Param &at(int i) const { return *params_[i]; }
  int size() const { return static_cast<int>(params_.size()); }
  long long num_values() const;

  void zero_grad();
  /// grad += buffers (missing or empty entries skipped).
  void accumulate(const GradBuffers &g, double weight = 1.0);

  /// Uniform in [-a, a], a = sqrt(6 / (rows + cols)); draws in registration
  /// order.
  void init_glorot(Rng &rng);

  long long step = 0;

private:
  std::vector<std::unique_ptr<Param>> params_;
  std::map<std::string, int> index_;
};

struct AmsGradOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// m <- b1 m + (1-b1) g; v <- b2 v + (1-b2) g^2; vhat <- max(vhat, v);
/// theta <- theta - lr m / (sqrt(vhat) + eps). No bias correction.
void amsgrad_step(ParamStore &ps, const AmsGradOptions &opts = {});

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  long worst_entry = -1;
  long long checked = 0;
};

/// Compares tape gradients of `f` with central differences (step h).
/// Error per entry: |analytic - numeric| / max(1, |analytic|). With
/// max_entries > 0 only that many random entries per parameter are probed.
GradCheckResult grad_check(ParamStore &ps,
                           const std::function<Var(Tape &)> &f,
                           double h = 1e-5, long max_entries = 0,
                           Rng *rng = nullptr);

}  // namespace modof::tensor

#endif  // MODOF_TENSOR_PARAMS_H_
