//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modof/chem/smiles.h"
#include "modof/net/train.h"
#include "modof/pairgen/ged.h"
#include "modof/pairgen/pairs.h"
#include "modof/pipe/pipe.h"
#include "modof/pipe/report.h"
#include "modof/props/crippen.h"
#include "modof/props/fingerprint.h"
#include "modof/props/plogp.h"
#include "modof/props/sascore.h"

namespace py = pybind11;
using namespace modof;

namespace {

std::vector<chem::Molecule> parse_list(const std::vector<std::string> &s) {
  std::vector<chem::Molecule> out;
  out.reserve(s.size());
  for (const auto &x: s)
    out.push_back(chem::parse_smiles(x));
  return out;
}

py::dict pair_dict(const pairgen::TrainingPair &p,
                   const chem::NodeVocabulary &vocab) {
  py::dict d;
  d["source"] = p.mx_smiles;
  d["target"] = p.my_smiles;
  d["sim"] = p.sim;
  d["gain"] = p.prop_delta;
  d["site"] = p.n_d;
  d["removal"] = p.removal;
  d["ops"] = pairgen::serialize_ops(p.ops, vocab);
  return d;
}

py::dict result_dict(const pipe::OptimResult &r) {
  py::list outs;
  for (const auto &o: r.outputs) {
    py::dict d;
    d["smiles"] = o.smiles;
    d["score"] = o.score;
    d["sim"] = o.sim;
    outs.append(d);
  }
  py::dict d;
  d["input"] = r.input;
  d["input_score"] = r.input_score;
  d["outputs"] = outs;
  d["accepted_scores"] = r.accepted_scores;
  d["iterations_used"] = r.iterations_used;
  d["noop"] = r.noop;
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Local molecule optimization by junction-tree edits.";
  m.attr("__version__") = MODOF_VERSION;

  py::register_exception<chem::ChemError>(m, "ChemError", PyExc_ValueError);
  py::register_exception<net::ModelMismatch>(m, "ModelMismatch");

  m.def("canonical_smiles", &chem::canonical_smiles, py::arg("smiles"));
  m.def("logp", [](const std::string &s) {
    return props::crippen_logp(chem::parse_smiles(s));
  }, py::arg("smiles"));
  m.def("sa_score", [](const std::string &s) {
    return props::sa_score(chem::parse_smiles(s));
  }, py::arg("smiles"));
  m.def("cycle_score", [](const std::string &s) {
    return props::cycle_score(chem::parse_smiles(s));
  }, py::arg("smiles"));
  m.def("similarity", [](const std::string &a, const std::string &b) {
    return props::similarity(chem::parse_smiles(a), chem::parse_smiles(b));
  }, py::arg("a"), py::arg("b"));

  py::class_<props::PlogpConfig>(m, "PlogpConfig")
      .def(py::init<>())
      .def_readwrite("logp_mean", &props::PlogpConfig::logp_mean)
      .def_readwrite("logp_std", &props::PlogpConfig::logp_std)
      .def_readwrite("sa_mean", &props::PlogpConfig::sa_mean)
      .def_readwrite("sa_std", &props::PlogpConfig::sa_std)
      .def_readwrite("cycle_mean", &props::PlogpConfig::cycle_mean)
      .def_readwrite("cycle_std", &props::PlogpConfig::cycle_std)
      .def_static("load", &props::PlogpConfig::load)
      .def("save", &props::PlogpConfig::save)
      .def("__str__", &props::PlogpConfig::to_string);
  m.def("calibrate", [](const std::vector<std::string> &corpus) {
    return props::calibrate(parse_list(corpus));
  }, py::arg("corpus"));
  m.def("plogp", [](const std::string &s, const props::PlogpConfig &cfg) {
    return props::plogp(chem::parse_smiles(s), cfg);
  }, py::arg("smiles"), py::arg("config") = props::PlogpConfig{});

  py::class_<chem::NodeVocabulary>(m, "Vocabulary")
      .def_static("build", [](const std::vector<std::string> &corpus) {
        return chem::build_vocabulary(parse_list(corpus));
      }, py::arg("corpus"))
      .def_static("load", &chem::NodeVocabulary::load)
      .def("save", &chem::NodeVocabulary::save)
      .def("__len__", &chem::NodeVocabulary::size)
      .def("__getitem__", [](const chem::NodeVocabulary &v, int i) {
        if (i < 0 || i >= v.size())
          throw py::index_error();
        return v.at(i).descriptor;
      });

  m.def("tree_edit_distance",
        [](const std::string &a, const std::string &b,
           const chem::NodeVocabulary &vocab) {
          const auto ta = chem::junction_tree(chem::parse_smiles(a), vocab);
          const auto tb = chem::junction_tree(chem::parse_smiles(b), vocab);
          return pairgen::tree_edit_distance(pairgen::to_labeled(ta),
                                             pairgen::to_labeled(tb))
              .cost;
        },
        py::arg("a"), py::arg("b"), py::arg("vocab"));

  m.def("extract_pairs",
        [](const std::vector<std::string> &corpus,
           const chem::NodeVocabulary &vocab, double sim, double delta,
           const props::PlogpConfig &cfg, int threads) {
          props::PlogpScorer scorer(cfg);
          pairgen::ExtractOptions eo;
          eo.sim_min = sim;
          eo.delta_min = delta;
          eo.threads = threads;
          std::vector<pairgen::TrainingPair> pairs;
          {
            py::gil_scoped_release release;
            pairs = pairgen::extract_pairs(corpus, vocab, scorer, eo);
          }
          py::list out;
          for (const auto &p: pairs)
            out.append(pair_dict(p, vocab));
          return out;
        },
        py::arg("corpus"), py::arg("vocab"), py::arg("sim") = 0.6,
        py::arg("delta") = 0.0, py::arg("config") = props::PlogpConfig{},
        py::arg("threads") = 1);

  py::class_<net::HyperParams>(m, "HyperParams")
      .def(py::init<>())
      .def_readwrite("hidden", &net::HyperParams::hidden)
      .def_readwrite("z_dim", &net::HyperParams::z_dim)
      .def_readwrite("t_a", &net::HyperParams::t_a)
      .def_readwrite("t_n", &net::HyperParams::t_n)
      .def_readwrite("lr", &net::HyperParams::lr)
      .def_readwrite("batch", &net::HyperParams::batch)
      .def_readwrite("epochs", &net::HyperParams::epochs)
      .def_readwrite("max_atoms", &net::HyperParams::max_atoms);

  py::class_<net::Model>(m, "Model")
      .def_property_readonly("hp", &net::Model::hp)
      .def_property_readonly("vocab_size", &net::Model::vocab_size)
      .def("save",
           [](const net::Model &model, const std::string &path,
              const chem::NodeVocabulary &vocab) {
             net::save_model(path, model, vocab, {}, false);
           },
           py::arg("path"), py::arg("vocab"))
      .def_static("load",
                  [](const std::string &path,
                     const chem::NodeVocabulary &vocab) {
                    return net::load_model(path, vocab);
                  },
                  py::arg("path"), py::arg("vocab"));

  m.def("train",
        [](const std::vector<std::pair<std::string, std::string>> &pairs,
           const chem::NodeVocabulary &vocab, const net::HyperParams &hp,
           std::uint64_t seed, int threads) {
          hp.validate();
          std::vector<pairgen::TrainingPair> derived;
          for (const auto &[a, b]: pairs) {
            auto p = pairgen::make_pair_skeleton(a, b, vocab);
            if (pairgen::derive_first_edit(p, vocab)
                == pairgen::DeriveStatus::kOk)
              derived.push_back(std::move(p));
          }
          net::Model model(hp, vocab.size());
          Rng init = Rng(seed).split(0);
          model.init(init);
          net::TrainOptions o;
          o.seed = seed;
          o.threads = threads;
          {
            py::gil_scoped_release release;
            net::train(model, derived, vocab, o);
          }
          return model;
        },
        py::arg("pairs"), py::arg("vocab"), py::arg("hp") = net::HyperParams{},
        py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("optimize",
        [](const std::vector<std::string> &corpus, net::Model &model,
           const chem::NodeVocabulary &vocab, double delta, int k, int iters,
           int beam, int outputs, bool multi, std::uint64_t seed,
           const props::PlogpConfig &cfg, int threads) {
          props::PlogpScorer scorer(cfg);
          pipe::PipeConfig pc;
          pc.delta = delta;
          pc.K = k;
          pc.max_iters = iters;
          pc.m = beam;
          pc.b = outputs;
          pc.scorer = &scorer;
          pc.validate();
          std::vector<pipe::OptimResult> results;
          {
            py::gil_scoped_release release;
            results = pipe::batch_optimize(corpus, model, vocab, pc, multi,
                                           seed, threads);
          }
          py::list out;
          for (const auto &r: results)
            out.append(result_dict(r));
          return out;
        },
        py::arg("corpus"), py::arg("model"), py::arg("vocab"),
        py::arg("delta") = 0.4, py::arg("k") = 20, py::arg("iters") = 5,
        py::arg("m") = 5, py::arg("b") = 20, py::arg("multi") = false,
        py::arg("seed") = 0, py::arg("config") = props::PlogpConfig{},
        py::arg("threads") = 1);
}
