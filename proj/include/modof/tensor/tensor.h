//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_TENSOR_TENSOR_H_
#define MODOF_TENSOR_TENSOR_H_

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modof::tensor {

/// Every value is a row-major matrix; vectors are 1 x n rows.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                          Eigen::RowMajor>;

class TensorError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::string shape_string(const Mat &m);

struct Param;
class Tape;

/// Handle to a tape node.
struct Var {
  Tape *tape = nullptr;
  int id = -1;

  const Mat &value() const;
  double scalar() const;
  long rows() const { return value().rows(); }
  long cols() const { return value().cols(); }
};

/// Per-parameter gradient buffers indexed like ParamStore entries.
using GradBuffers = std::vector<Mat>;

/// Reverse-mode tape. Nodes are appended in evaluation order; backward walks
/// them in reverse.
class Tape {
public:
  using Backward = std::function<void(Tape &, int self)>;

  Var constant(Mat value);
  /// Leaf bound to a parameter; repeated calls return the same node.
  Var param(Param &p);
  /// Appends a computed node. `inputs` decide whether a gradient is needed.
  Var record(Mat value, std::initializer_list<int> inputs, Backward fn);
  Var record(Mat value, const std::vector<int> &inputs, Backward fn);

  /// Seeds d(loss)/d(loss) = 1 and accumulates parameter gradients into
  /// `out` (sized on demand) or, when null, into Param::grad.
  void backward(Var loss, GradBuffers *out = nullptr);

  const Mat &value(int id) const { return nodes_[id].value; }
  bool needs_grad(int id) const { return nodes_[id].needs_grad; }
  /// Gradient accumulator of node `id`, zero-initialized on first use.
  Mat &grad(int id);
  int size() const { return static_cast<int>(nodes_.size()); }

private:
  struct Node {
    Mat value;
    Mat grad;
    Backward backward;
    Param *param = nullptr;
    bool needs_grad = false;
  };
  std::vector<Node> nodes_;
  std::vector<std::pair<Param *, int>> param_nodes_;
};

// Differentiable operations. Shapes are checked; mismatches throw
// TensorError naming both shapes.
Var matmul(Var a, Var b);
/// x * W^T: rows of x are inputs, W is (out x in).
Var linear(Var x, Var w);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var transpose(Var a);
/// Adds the 1 x n row `b` to every row of `a`.
Var add_row(Var a, Var b);
Var relu(Var a);
Var tanh(Var a);
Var sigmoid(Var a);
Var exp(Var a);
Var concat_cols(const std::vector<Var> &parts);
Var concat_rows(const std::vector<Var> &parts);
/// 1 x cols sum over rows.
Var sum_rows(Var a);
/// 1 x 1 sum of all entries.
Var sum_all(Var a);
/// Rows of `a` in the given order (embedding lookup).
Var index_select(Var a, const std::vector<int> &rows);
/// Row r of the result is the sum of rows groups[r] of `a` (zero when
/// empty).
Var gather_sum(Var a, const std::vector<std::vector<int>> &groups,
               long cols_if_empty = -1);
/// Row-wise softmax / log-softmax.
Var softmax(Var a);
Var log_softmax(Var a);
/// 1 x 1 entry (r, c).
Var pick(Var a, long r, long c);
/// -log softmax(logits)[target] for a 1 x K row.
Var cross_entropy(Var logits, int target);
/// Binary cross-entropy of sigmoid(logit) against target in {0, 1}; 1 x 1.
Var bce_with_logit(Var logit, double target);
/// 0.5 * sum(mu^2 + exp(logvar) - 1 - logvar).
Var kl_normal(Var mu, Var logvar);
/// mu + exp(logvar / 2) * eps.
Var reparam(Var mu, Var logvar, const Mat &eps);

}  // namespace modof::tensor

#endif  // MODOF_TENSOR_TENSOR_H_
