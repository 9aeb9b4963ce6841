//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/tensor/params.h"

#include <cmath>

namespace modof::tensor {

ParamStore::ParamStore(const ParamStore &other)
    : step(other.step), index_(other.index_) {
  for (const auto &p: other.params_)
    params_.push_back(std::make_unique<Param>(*p));
}

ParamStore &ParamStore::operator=(const ParamStore &other) {
  if (this != &other) {
    ParamStore copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Param &ParamStore::add(const std::string &name, long rows, long cols) {
  if (index_.count(name))
    throw TensorError("duplicate parameter name: " + name);
  auto p = std::make_unique<Param>();
  p->name = name;
  p->index = size();
  p->value = Mat::Zero(rows, cols);
  p->grad = Mat::Zero(rows, cols);
  p->m = Mat::Zero(rows, cols);
  p->v = Mat::Zero(rows, cols);
  p->vhat = Mat::Zero(rows, cols);
  index_.emplace(name, size());
  params_.push_back(std::move(p));
  return *params_.back();
}

Param &ParamStore::get(const std::string &name) {
  const auto it = index_.find(name);
  if (it == index_.end())
    throw TensorError("unknown parameter: " + name);
  return *params_[it->second];
}

const Param &ParamStore::get(const std::string &name) const {
  const auto it = index_.find(name);
  if (it == index_.end())
    throw TensorError("unknown parameter: " + name);
  return *params_[it->second];
}

bool ParamStore::contains(const std::string &name) const {
  return index_.count(name) > 0;
}

long long ParamStore::num_values() const {
  long long n = 0;
  for (const auto &p: params_)
    n += p->value.size();
  return n;
}

void ParamStore::zero_grad() {
  for (auto &p: params_)
    p->grad.setZero();
}

void ParamStore::accumulate(const GradBuffers &g, double weight) {
  for (std::size_t i = 0; i < g.size() && i < params_.size(); ++i)
    if (g[i].size() != 0)
      params_[i]->grad += g[i] * weight;
}

void ParamStore::init_glorot(Rng &rng) {
  for (auto &p: params_) {
    const double a =
        std::sqrt(6.0 / static_cast<double>(p->value.rows() + p->value.cols()));
    for (long i = 0; i < p->value.size(); ++i)
      p->value.data()[i] = (2.0 * rng.uniform() - 1.0) * a;
  }
}

void amsgrad_step(ParamStore &ps, const AmsGradOptions &o) {
  for (int i = 0; i < ps.size(); ++i) {
    Param &p = ps.at(i);
    p.m = o.beta1 * p.m + (1.0 - o.beta1) * p.grad;
    p.v = o.beta2 * p.v + (1.0 - o.beta2) * p.grad.cwiseProduct(p.grad);
    p.vhat = p.vhat.cwiseMax(p.v);
    p.value.array() -=
        o.lr * p.m.array() / (p.vhat.array().sqrt() + o.eps);
  }
  ++ps.step;
}

GradCheckResult grad_check(ParamStore &ps,
                           const std::function<Var(Tape &)> &f, double h,
                           long max_entries, Rng *rng) {
  GradCheckResult r;
  GradBuffers analytic;
  {
    Tape t;
    Var loss = f(t);
    t.backward(loss, &analytic);
  }
  const auto eval = [&]() {
    Tape t;
    return f(t).scalar();
  };
  Rng fallback(0);
  Rng &g = rng ? *rng : fallback;
  for (int i = 0; i < ps.size(); ++i) {
    Param &p = ps.at(i);
    const long n = p.value.size();
    std::vector<long> entries;
    if (max_entries <= 0 || n <= max_entries) {
      for (long k = 0; k < n; ++k)
        entries.push_back(k);
    } else {
      for (long k = 0; k < max_entries; ++k)
        entries.push_back(static_cast<long>(g.below(n)));
    }
    for (long k: entries) {
      double &x = p.value.data()[k];
      const double saved = x;
      x = saved + h;
      const double up = eval();
      x = saved - h;
      const double down = eval();
      x = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = (static_cast<std::size_t>(i) < analytic.size()
                        && analytic[i].size() != 0)
                           ? analytic[i].data()[k]
                           : 0.0;
      const double err = std::abs(a - numeric) / std::max(1.0, std::abs(a));
      ++r.checked;
      if (err > r.max_rel_error || r.worst_entry < 0) {
        if (err >= r.max_rel_error) {
          r.max_rel_error = err;
          r.worst_param = p.name;
          r.worst_entry = k;
        }
      }
    }
  }
  return r;
}

}  // namespace modof::tensor
