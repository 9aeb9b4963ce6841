//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PROPS_PLOGP_H_
#define MODOF_PROPS_PLOGP_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "modof/chem/molecule.h"
#include "modof/props/sascore.h"

namespace modof::props {

/// Z-normalization constants. The SA component enters as -sa_score, so
/// sa_mean / sa_std describe the negated score.
struct PlogpConfig {
  double logp_mean = 0.0, logp_std = 1.0;
  double sa_mean = 0.0, sa_std = 1.0;
  double cycle_mean = 0.0, cycle_std = 1.0;
  int max_atoms = 38;

  /// key=value lines; '#' starts a comment. Unknown keys are rejected.
  static PlogpConfig load(const std::string &path);
  static PlogpConfig parse(const std::string &text);
  std::string to_string() const;
  void save(const std::string &path) const;
  /// Throws std::invalid_argument if any std is not positive.
  void validate() const;
};

/// -max(0, largest SSSR ring - 6).
double cycle_score(const chem::Molecule &m);

struct PlogpTerms {
  double logp;
  double neg_sa;
  double cycle;
  double total;
};

PlogpTerms plogp_terms(const chem::Molecule &m, const PlogpConfig &cfg,
                       const SaTable &table = {});

inline double plogp(const chem::Molecule &m, const PlogpConfig &cfg,
                    const SaTable &table = {}) {
  return plogp_terms(m, cfg, table).total;
}

/// Mean and population standard deviation of each raw component (std 0
/// falls back to 1 and names the component in `fallbacks`). max_atoms is
/// kept from `base`.
PlogpConfig calibrate(std::span<const chem::Molecule> mols,
                      const SaTable &table = {},
                      const PlogpConfig &base = {},
                      std::vector<std::string> *fallbacks = nullptr);

class PropertyScorer {
public:
  virtual ~PropertyScorer() = default;
  virtual std::string name() const = 0;
  virtual double score(const chem::Molecule &m) const = 0;
};

class PlogpScorer: public PropertyScorer {
public:
  explicit PlogpScorer(PlogpConfig cfg = {}, SaTable table = {})
      : cfg_(cfg), table_(std::move(table)) { }
  std::string name() const override { return "plogp"; }
  double score(const chem::Molecule &m) const override {
    return plogp(m, cfg_, table_);
  }
  const PlogpConfig &config() const { return cfg_; }

private:
  PlogpConfig cfg_;
  SaTable table_;
};

class LogpScorer: public PropertyScorer {
public:
  std::string name() const override { return "logp"; }
  double score(const chem::Molecule &m) const override;
};

/// Adapter for externally supplied property functions.
class FunctionScorer: public PropertyScorer {
public:
  FunctionScorer(std::string name,
                 std::function<double(const chem::Molecule &)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) { }
  std::string name() const override { return name_; }
  double score(const chem::Molecule &m) const override { return fn_(m); }

private:
  std::string name_;
  std::function<double(const chem::Molecule &)> fn_;
};

}  // namespace modof::props

#endif  // MODOF_PROPS_PLOGP_H_
