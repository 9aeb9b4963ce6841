//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include "modof/tensor/tensor.h"

namespace modof::tensor {
namespace {

void same_shape(const char *op, const Mat &a, const Mat &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw TensorError(std::string(op) + ": shape mismatch "
                      + shape_string(a) + " vs " + shape_string(b));
}

void same_tape(Var a, Var b) {
  if (a.tape != b.tape)
    throw TensorError("operands live on different tapes");
}

double stable_sigmoid(double x) {
  if (x >= 0)
    return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Var matmul(Var a, Var b) {
  same_tape(a, b);
  const Mat &x = a.value(), &y = b.value();
  if (x.cols() != y.rows())
    throw TensorError("matmul: shape mismatch " + shape_string(x) + " vs "
                      + shape_string(y));
  const int ia = a.id, ib = b.id;
  return a.tape->record(x * y, { ia, ib }, [ia, ib](Tape &t, int self) {
    const Mat &g = t.grad(self);
    if (t.needs_grad(ia))
      t.grad(ia).noalias() += g * t.value(ib).transpose();
    if (t.needs_grad(ib))
      t.grad(ib).noalias() += t.value(ia).transpose() * g;
  });
}

Var linear(Var x, Var w) {
  same_tape(x, w);
  const Mat &a = x.value(), &m = w.value();
  if (a.cols() != m.cols())
    throw TensorError("linear: shape mismatch " + shape_string(a)
                      + " vs weight " + shape_string(m));
  const int ix = x.id, iw = w.id;
  return x.tape->record(a * m.transpose(), { ix, iw },
                        [ix, iw](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          if (t.needs_grad(ix))
                            t.grad(ix).noalias() += g * t.value(iw);
                          if (t.needs_grad(iw))
                            t.grad(iw).noalias() +=
                                g.transpose() * t.value(ix);
                        });
}

Var add(Var a, Var b) {
  same_tape(a, b);
  same_shape("add", a.value(), b.value());
  const int ia = a.id, ib = b.id;
  return a.tape->record(a.value() + b.value(), { ia, ib },
                        [ia, ib](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          if (t.needs_grad(ia))
                            t.grad(ia) += g;
                          if (t.needs_grad(ib))
                            t.grad(ib) += g;
                        });
}

Var sub(Var a, Var b) {
  same_tape(a, b);
  same_shape("sub", a.value(), b.value());
  const int ia = a.id, ib = b.id;
  return a.tape->record(a.value() - b.value(), { ia, ib },
                        [ia, ib](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          if (t.needs_grad(ia))
                            t.grad(ia) += g;
                          if (t.needs_grad(ib))
                            t.grad(ib) -= g;
                        });
}

Var mul(Var a, Var b) {
  same_tape(a, b);
  same_shape("mul", a.value(), b.value());
  const int ia = a.id, ib = b.id;
  return a.tape->record(a.value().cwiseProduct(b.value()), { ia, ib },
                        [ia, ib](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          if (t.needs_grad(ia))
                            t.grad(ia) += g.cwiseProduct(t.value(ib));
                          if (t.needs_grad(ib))
                            t.grad(ib) += g.cwiseProduct(t.value(ia));
                        });
}

Var scale(Var a, double s) {
  const int ia = a.id;
  return a.tape->record(a.value() * s, { ia }, [ia, s](Tape &t, int self) {
    t.grad(ia) += t.grad(self) * s;
  });
}

Var add_row(Var a, Var b) {
  same_tape(a, b);
  const Mat &x = a.value(), &r = b.value();
  if (r.rows() != 1 || r.cols() != x.cols())
    throw TensorError("add_row: shape mismatch " + shape_string(x)
                      + " vs row " + shape_string(r));
  const int ia = a.id, ib = b.id;
  Mat out = x;
  out.rowwise() += r.row(0);
  return a.tape->record(std::move(out), { ia, ib },
                        [ia, ib](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          if (t.needs_grad(ia))
                            t.grad(ia) += g;
                          if (t.needs_grad(ib))
                            t.grad(ib) += g.colwise().sum();
                        });
}

Var relu(Var a) {
  const int ia = a.id;
  return a.tape->record(a.value().cwiseMax(0.0), { ia },
                        [ia](Tape &t, int self) {
                          const Mat &x = t.value(ia);
                          t.grad(ia) += (x.array() > 0.0)
                                            .select(t.grad(self), 0.0)
                                            .matrix();
                        });
}

Var tanh(Var a) {
  const int ia = a.id;
  Mat y = a.value().array().tanh().matrix();
  return a.tape->record(std::move(y), { ia }, [ia](Tape &t, int self) {
    const Mat &y = t.value(self);
    t.grad(ia) +=
        t.grad(self).cwiseProduct((1.0 - y.array().square()).matrix());
  });
}

Var sigmoid(Var a) {
  const int ia = a.id;
  Mat y = a.value().unaryExpr([](double x) { return stable_sigmoid(x); });
  return a.tape->record(std::move(y), { ia }, [ia](Tape &t, int self) {
    const Mat &y = t.value(self);
    t.grad(ia) +=
        t.grad(self).cwiseProduct((y.array() * (1.0 - y.array())).matrix());
  });
}

Var exp(Var a) {
  const int ia = a.id;
  Mat y = a.value().array().exp().matrix();
  return a.tape->record(std::move(y), { ia }, [ia](Tape &t, int self) {
    t.grad(ia) += t.grad(self).cwiseProduct(t.value(self));
  });
}

Var concat_cols(const std::vector<Var> &parts) {
  if (parts.empty())
    throw TensorError("concat_cols of nothing");
  const long rows = parts[0].rows();
  long cols = 0;
  std::vector<int> ids;
  for (const Var &p: parts) {
    same_tape(parts[0], p);
    if (p.rows() != rows)
      throw TensorError("concat_cols: shape mismatch "
                        + shape_string(parts[0].value()) + " vs "
                        + shape_string(p.value()));
    cols += p.cols();
    ids.push_back(p.id);
  }
  Mat out(rows, cols);
  long c = 0;
  for (const Var &p: parts) {
    out.middleCols(c, p.cols()) = p.value();
    c += p.cols();
  }
  return parts[0].tape->record(std::move(out), ids,
                               [ids](Tape &t, int self) {
                                 const Mat &g = t.grad(self);
                                 long c = 0;
                                 for (int id: ids) {
                                   const long w = t.value(id).cols();
                                   if (t.needs_grad(id))
                                     t.grad(id) += g.middleCols(c, w);
                                   c += w;
                                 }
                               });
}

Var concat_rows(const std::vector<Var> &parts) {
  if (parts.empty())
    throw TensorError("concat_rows of nothing");
  const long cols = parts[0].cols();
  long rows = 0;
  std::vector<int> ids;
  for (const Var &p: parts) {
    same_tape(parts[0], p);
    if (p.cols() != cols)
      throw TensorError("concat_rows: shape mismatch "
                        + shape_string(parts[0].value()) + " vs "
                        + shape_string(p.value()));
    rows += p.rows();
    ids.push_back(p.id);
  }
  Mat out(rows, cols);
  long r = 0;
  for (const Var &p: parts) {
    out.middleRows(r, p.rows()) = p.value();
    r += p.rows();
  }
  return parts[0].tape->record(std::move(out), ids,
                               [ids](Tape &t, int self) {
                                 const Mat &g = t.grad(self);
                                 long r = 0;
                                 for (int id: ids) {
                                   const long h = t.value(id).rows();
                                   if (t.needs_grad(id))
                                     t.grad(id) += g.middleRows(r, h);
                                   r += h;
                                 }
                               });
}

Var sum_rows(Var a) {
  const int ia = a.id;
  Mat out = a.value().colwise().sum();
  return a.tape->record(std::move(out), { ia }, [ia](Tape &t, int self) {
    t.grad(ia).rowwise() += t.grad(self).row(0);
  });
}

Var sum_all(Var a) {
  const int ia = a.id;
  Mat out(1, 1);
  out(0, 0) = a.value().sum();
  return a.tape->record(std::move(out), { ia }, [ia](Tape &t, int self) {
    t.grad(ia).array() += t.grad(self)(0, 0);
  });
}

Var transpose(Var a) {
  const int ia = a.id;
  return a.tape->record(Mat(a.value().transpose()), { ia },
                        [ia](Tape &t, int self) {
                          t.grad(ia) += t.grad(self).transpose();
                        });
}

Var index_select(Var a, const std::vector<int> &rows) {
  const Mat &x = a.value();
  Mat out(static_cast<long>(rows.size()), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= x.rows())
      throw TensorError("index_select: row " + std::to_string(rows[r])
                        + " out of range for " + shape_string(x));
    out.row(static_cast<long>(r)) = x.row(rows[r]);
  }
  const int ia = a.id;
  return a.tape->record(std::move(out), { ia },
                        [ia, rows](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          Mat &d = t.grad(ia);
                          for (std::size_t r = 0; r < rows.size(); ++r)
                            d.row(rows[r]) += g.row(static_cast<long>(r));
                        });
}

Var gather_sum(Var a, const std::vector<std::vector<int>> &groups,
               long cols_if_empty) {
  const Mat &x = a.value();
  const long cols = x.rows() == 0 && cols_if_empty >= 0 ? cols_if_empty
                                                         : x.cols();
  Mat out = Mat::Zero(static_cast<long>(groups.size()), cols);
  for (std::size_t r = 0; r < groups.size(); ++r)
    for (int i: groups[r]) {
      if (i < 0 || i >= x.rows())
        throw TensorError("gather_sum: row " + std::to_string(i)
                          + " out of range for " + shape_string(x));
      out.row(static_cast<long>(r)) += x.row(i);
    }
  const int ia = a.id;
  return a.tape->record(std::move(out), { ia },
                        [ia, groups](Tape &t, int self) {
                          const Mat &g = t.grad(self);
                          Mat &d = t.grad(ia);
                          for (std::size_t r = 0; r < groups.size(); ++r)
                            for (int i: groups[r])
                              d.row(i) += g.row(static_cast<long>(r));
                        });
}

Var softmax(Var a) {
  const Mat &x = a.value();
  Mat y(x.rows(), x.cols());
  for (long r = 0; r < x.rows(); ++r) {
    const double m = x.row(r).maxCoeff();
    y.row(r) = (x.row(r).array() - m).exp().matrix();
    y.row(r) /= y.row(r).sum();
  }
  const int ia = a.id;
  return a.tape->record(std::move(y), { ia }, [ia](Tape &t, int self) {
    const Mat &y = t.value(self);
    const Mat &g = t.grad(self);
    Mat &d = t.grad(ia);
    for (long r = 0; r < y.rows(); ++r) {
      const double dot = g.row(r).dot(y.row(r));
      d.row(r) += (y.row(r).array() * (g.row(r).array() - dot)).matrix();
    }
  });
}

Var log_softmax(Var a) {
  const Mat &x = a.value();
  Mat y(x.rows(), x.cols());
  for (long r = 0; r < x.rows(); ++r) {
    const double m = x.row(r).maxCoeff();
    const double lse = m + std::log((x.row(r).array() - m).exp().sum());
    y.row(r) = (x.row(r).array() - lse).matrix();
  }
  const int ia = a.id;
  return a.tape->record(std::move(y), { ia }, [ia](Tape &t, int self) {
    const Mat &y = t.value(self);
    const Mat &g = t.grad(self);
    Mat &d = t.grad(ia);
    for (long r = 0; r < y.rows(); ++r) {
      const double gs = g.row(r).sum();
      d.row(r) += g.row(r) - (y.row(r).array().exp() * gs).matrix();
    }
  });
}

Var pick(Var a, long r, long c) {
  const Mat &x = a.value();
  if (r < 0 || r >= x.rows() || c < 0 || c >= x.cols())
    throw TensorError("pick: (" + std::to_string(r) + ", " + std::to_string(c)
                      + ") out of range for " + shape_string(x));
  Mat out(1, 1);
  out(0, 0) = x(r, c);
  const int ia = a.id;
  return a.tape->record(std::move(out), { ia }, [ia, r, c](Tape &t, int self) {
    t.grad(ia)(r, c) += t.grad(self)(0, 0);
  });
}

Var cross_entropy(Var logits, int target) {
  const Mat &x = logits.value();
  if (x.rows() != 1 || target < 0 || target >= x.cols())
    throw TensorError("cross_entropy: target " + std::to_string(target)
                      + " invalid for logits " + shape_string(x));
  const double m = x.maxCoeff();
  const double lse = m + std::log((x.array() - m).exp().sum());
  Mat out(1, 1);
  out(0, 0) = lse - x(0, target);
  const int ia = logits.id;
  return logits.tape->record(
      std::move(out), { ia }, [ia, target, lse](Tape &t, int self) {
        const double g = t.grad(self)(0, 0);
        Mat p = (t.value(ia).array() - lse).exp().matrix();
        p(0, target) -= 1.0;
        t.grad(ia) += p * g;
      });
}

Var bce_with_logit(Var logit, double target) {
  const Mat &x = logit.value();
  if (x.rows() != 1 || x.cols() != 1)
    throw TensorError("bce_with_logit needs a 1 x 1 logit, got "
                      + shape_string(x));
  const double z = x(0, 0);
  Mat out(1, 1);
  out(0, 0) = std::max(z, 0.0) - z * target + std::log1p(std::exp(-std::abs(z)));
  const int ia = logit.id;
  return logit.tape->record(std::move(out), { ia },
                            [ia, target](Tape &t, int self) {
                              const double z = t.value(ia)(0, 0);
                              t.grad(ia)(0, 0) += t.grad(self)(0, 0)
                                                  * (stable_sigmoid(z) - target);
                            });
}

Var kl_normal(Var mu, Var logvar) {
  same_tape(mu, logvar);
  same_shape("kl_normal", mu.value(), logvar.value());
  const Mat &m = mu.value(), &l = logvar.value();
  Mat out(1, 1);
  out(0, 0) =
      0.5 * (m.array().square() + l.array().exp() - 1.0 - l.array()).sum();
  const int im = mu.id, il = logvar.id;
  return mu.tape->record(std::move(out), { im, il },
                         [im, il](Tape &t, int self) {
                           const double g = t.grad(self)(0, 0);
                           if (t.needs_grad(im))
                             t.grad(im) += t.value(im) * g;
                           if (t.needs_grad(il))
                             t.grad(il) +=
                                 ((t.value(il).array().exp() - 1.0) * 0.5 * g)
                                     .matrix();
                         });
}

Var reparam(Var mu, Var logvar, const Mat &eps) {
  same_tape(mu, logvar);
  same_shape("reparam", mu.value(), logvar.value());
  same_shape("reparam noise", mu.value(), eps);
  Mat sd = (logvar.value().array() * 0.5).exp().matrix();
  Mat out = mu.value() + sd.cwiseProduct(eps);
  const int im = mu.id, il = logvar.id;
  return mu.tape->record(std::move(out), { im, il },
                         [im, il, sd, eps](Tape &t, int self) {
                           const Mat &g = t.grad(self);
                           if (t.needs_grad(im))
                             t.grad(im) += g;
                           if (t.needs_grad(il))
                             t.grad(il) += (g.array() * sd.array()
                                            * eps.array() * 0.5)
                                               .matrix();
                         });
}

}  // namespace modof::tensor
