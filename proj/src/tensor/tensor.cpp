//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/tensor/tensor.h"

#include "modof/tensor/params.h"

namespace modof::tensor {

std::string shape_string(const Mat &m) {
  return "(" + std::to_string(m.rows()) + " x " + std::to_string(m.cols())
         + ")";
}

const Mat &Var::value() const { return tape->value(id); }

double Var::scalar() const {
  const Mat &v = value();
  if (v.rows() != 1 || v.cols() != 1)
    throw TensorError("scalar() on tensor of shape " + shape_string(v));
  return v(0, 0);
}

Var Tape::constant(Mat value) {
  Node n;
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return { this, size() - 1 };
}

Var Tape::param(Param &p) {
  for (const auto &[q, id]: param_nodes_)
    if (q == &p)
      return { this, id };
  Node n;
  n.value = p.value;
  n.param = &p;
  n.needs_grad = true;
  nodes_.push_back(std::move(n));
  param_nodes_.emplace_back(&p, size() - 1);
  return { this, size() - 1 };
}

Var Tape::record(Mat value, std::initializer_list<int> inputs, Backward fn) {
  return record(std::move(value), std::vector<int>(inputs), std::move(fn));
}

Var Tape::record(Mat value, const std::vector<int> &inputs, Backward fn) {
  Node n;
  n.value = std::move(value);
  for (int i: inputs)
    n.needs_grad = n.needs_grad || nodes_[i].needs_grad;
  if (n.needs_grad)
    n.backward = std::move(fn);
  nodes_.push_back(std::move(n));
  return { this, size() - 1 };
}

Mat &Tape::grad(int id) {
  Node &n = nodes_[id];
  if (n.grad.size() == 0)
    n.grad = Mat::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::backward(Var loss, GradBuffers *out) {
  if (loss.tape != this)
    throw TensorError("backward on a variable from another tape");
  const Mat &lv = value(loss.id);
  if (lv.rows() != 1 || lv.cols() != 1)
    throw TensorError("backward needs a 1 x 1 loss, got " + shape_string(lv));
  for (auto &n: nodes_)
    n.grad.resize(0, 0);
  grad(loss.id)(0, 0) = 1.0;
  for (int i = loss.id; i >= 0; --i) {
    Node &n = nodes_[i];
    if (!n.needs_grad || n.grad.size() == 0)
      continue;
    if (n.backward)
      n.backward(*this, i);
  }
  for (const auto &[p, id]: param_nodes_) {
    const Mat &g = nodes_[id].grad;
    if (g.size() == 0)
      continue;
    if (out) {
      if (out->size() <= static_cast<std::size_t>(p->index))
        out->resize(p->index + 1);
      Mat &dst = (*out)[p->index];
      if (dst.size() == 0)
        dst = g;
      else
        dst += g;
    } else {
      Param &mp = *p;
      if (mp.grad.size() == 0)
        mp.grad = Mat::Zero(mp.value.rows(), mp.value.cols());
      mp.grad += g;
    }
  }
}

}  // namespace modof::tensor
