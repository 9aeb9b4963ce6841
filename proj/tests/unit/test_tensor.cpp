//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "modof/tensor/checkpoint.h"
#include "modof/tensor/params.h"
#include "test_util.h"

namespace modof::tensor {
namespace {

// Central differences over every entry, compared against the tape.
double max_grad_error(ParamStore &ps, const std::function<Var(Tape &)> &f) {
  GradBuffers g;
  {
    Tape t;
    t.backward(f(t), &g);
  }
  double worst = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < ps.size(); ++i) {
    Param &p = ps.at(i);
    for (long k = 0; k < p.value.size(); ++k) {
      const double keep = p.value.data()[k];
      p.value.data()[k] = keep + h;
      double up;
      {
        Tape t;
        up = f(t).scalar();
      }
      p.value.data()[k] = keep - h;
      double down;
      {
        Tape t;
        down = f(t).scalar();
      }
      p.value.data()[k] = keep;
      const double num = (up - down) / (2 * h);
      const double ana =
          i < static_cast<int>(g.size()) && g[i].size() ? g[i].data()[k] : 0.0;
      worst = std::max(worst, std::abs(num - ana) /
                                  std::max(1.0, std::abs(num) + std::abs(ana)));
    }
  }
  return worst;
}

ParamStore small_store() {
  ParamStore ps;
  ps.add("a", 3, 4);
  ps.add("b", 4, 4);
  ps.add("r", 1, 4);
  Rng rng(3);
  ps.init_glorot(rng);
  return ps;
}

TEST(TensorOps, GradientsMatchFiniteDifferences) {
  ParamStore ps = small_store();
  const std::vector<std::function<Var(Tape &, Var, Var, Var)>> cases = {
    [](Tape &, Var a, Var b, Var) { return sum_all(tanh(matmul(a, b))); },
    [](Tape &, Var a, Var b, Var) { return sum_all(sigmoid(linear(a, b))); },
    [](Tape &, Var a, Var, Var r) { return sum_all(mul(add_row(a, r), a)); },
    [](Tape &, Var a, Var, Var) { return sum_all(exp(scale(a, 0.5))); },
    [](Tape &, Var a, Var b, Var) {
      return sum_all(relu(sub(matmul(a, b), a)));
    },
    [](Tape &, Var a, Var, Var r) {
      return sum_all(mul(sum_rows(a), r));
    },
    [](Tape &, Var a, Var b, Var) {
      return sum_all(mul(transpose(a), transpose(a)));
      (void)b;
    },
    [](Tape &, Var a, Var, Var r) {
      return sum_all(concat_cols({ r, pick(a, 1, 2) }));
    },
    [](Tape &, Var a, Var b, Var) {
      return sum_all(tanh(concat_rows({ a, b })));
    },
    [](Tape &, Var a, Var, Var) {
      return sum_all(tanh(index_select(a, { 2, 0, 2 })));
    },
    [](Tape &, Var a, Var, Var) {
      return sum_all(tanh(gather_sum(a, { { 0, 1 }, {}, { 2 } })));
    },
    [](Tape &, Var a, Var, Var r) {
      return sum_all(mul(softmax(a), add_row(a, r)));
    },
    [](Tape &, Var a, Var, Var) { return pick(log_softmax(a), 1, 3); },
    [](Tape &, Var, Var, Var r) { return cross_entropy(r, 2); },
    [](Tape &, Var a, Var, Var) {
      return add(bce_with_logit(pick(a, 0, 0), 1.0),
                 bce_with_logit(pick(a, 0, 1), 0.0));
    },
    [](Tape &, Var a, Var, Var r) { return kl_normal(r, index_select(a, { 2 })); },
    [](Tape &, Var a, Var, Var r) {
      Mat eps(1, 4);
      eps << 0.3, -1.2, 0.7, 0.1;
      return sum_all(tanh(reparam(r, index_select(a, { 1 }), eps)));
    },
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto f = [&](Tape &t) {
      return cases[c](t, t.param(ps.get("a")), t.param(ps.get("b")),
                      t.param(ps.get("r")));
    };
    EXPECT_LT(max_grad_error(ps, f), 1e-6) << "case " << c;
  }
}

TEST(TensorOps, ShapeMismatchThrows) {
  Tape t;
  Var a = t.constant(Mat::Zero(2, 3));
  Var b = t.constant(Mat::Zero(2, 3));
  EXPECT_THROW(matmul(a, b), TensorError);
  EXPECT_THROW(add(a, t.constant(Mat::Zero(3, 2))), TensorError);
}

TEST(TensorOps, KnownValues) {
  Tape t;
  Mat l(1, 3);
  l << 1.0, 2.0, 3.0;
  const double lse = std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0));
  EXPECT_NEAR(cross_entropy(t.constant(l), 0).scalar(), lse - 1.0, 1e-12);
  Mat mu(1, 2), lv(1, 2);
  mu << 1.0, 0.0;
  lv << 0.0, 0.0;
  EXPECT_NEAR(kl_normal(t.constant(mu), t.constant(lv)).scalar(), 0.5, 1e-12);
  Mat z(1, 1);
  z << 0.0;
  EXPECT_NEAR(bce_with_logit(t.constant(z), 1.0).scalar(), std::log(2.0),
              1e-12);
  Mat big(1, 1);
  big << 800.0;
  EXPECT_TRUE(std::isfinite(bce_with_logit(t.constant(big), 0.0).scalar()));
}

TEST(AmsGrad, MatchesHandComputation) {
  ParamStore ps;
  Param &p = ps.add("w", 1, 1);
  p.value(0, 0) = 1.0;
  AmsGradOptions o;
  o.lr = 0.1;
  const double grads[] = { 2.0, -1.0, 0.5 };
  double w = 1.0, m = 0.0, v = 0.0, vh = 0.0;
  for (double g: grads) {
    p.grad(0, 0) = g;
    amsgrad_step(ps, o);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    vh = std::max(vh, v);
    w -= 0.1 * m / (std::sqrt(vh) + 1e-8);
    EXPECT_NEAR(p.value(0, 0), w, 1e-12);
  }
  EXPECT_EQ(ps.step, 3);
}

TEST(Checkpoint, RoundTripIsExact) {
  ParamStore ps = small_store();
  ps.at(0).m.setConstant(0.25);
  ps.step = 17;
  Checkpoint c;
  c.vocab_hash = 0xdeadbeefcafeULL;
  c.meta["epoch"] = "4";
  store_params(c, ps, true);
  testing::TempDir dir("ckpt");
  const std::string path = dir.file("m.ckpt");
  save_checkpoint(path, c);
  const Checkpoint back = load_checkpoint(path);
  EXPECT_EQ(back.vocab_hash, c.vocab_hash);
  EXPECT_EQ(back.meta.at("epoch"), "4");
  ParamStore restored = small_store();
  for (int i = 0; i < restored.size(); ++i)
    restored.at(i).value.setZero();
  restore_params(back, restored);
  for (int i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(restored.at(i).value, ps.at(i).value);
    EXPECT_EQ(restored.at(i).m, ps.at(i).m);
  }
  EXPECT_EQ(restored.step, 17);
}

TEST(Checkpoint, RejectsCorruptFiles) {
  testing::TempDir dir("ckpt-bad");
  const std::string path = dir.file("bad.ckpt");
  std::ofstream(path) << "not a checkpoint";
  EXPECT_THROW(load_checkpoint(path), CheckpointError);
  EXPECT_THROW(load_checkpoint(dir.file("missing.ckpt")), CheckpointError);

  ParamStore ps = small_store();
  Checkpoint c;
  store_params(c, ps, false);
  save_checkpoint(path, c);
  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  std::ofstream(path, std::ios::binary) << bytes.substr(0, bytes.size() / 2);
  EXPECT_THROW(load_checkpoint(path), CheckpointError);
}

TEST(Checkpoint, ShapeMismatchIsReported) {
  ParamStore ps = small_store();
  Checkpoint c;
  store_params(c, ps, false);
  ParamStore other;
  other.add("a", 2, 2);
  EXPECT_THROW(restore_params(c, other), CheckpointError);
}

TEST(Rng, SplitStreamsAreIndependentAndStable) {
  Rng a(7), b(7);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(Rng(7).split(1).next_u64(), Rng(7).split(2).next_u64());
  Rng r(11);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
  for (int i = 0; i < 1000; ++i)
    EXPECT_LT(r.below(5), 5u);
}

}  // namespace
}  // namespace modof::tensor
