//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PIPE_REPORT_H_
#define MODOF_PIPE_REPORT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "modof/pipe/pipe.h"

namespace modof::pipe {

/// One line of the results file.
struct ResultRow {
  std::string input_smiles, output_smiles;
  double score_before = 0.0, score_after = 0.0, sim = 0.0;
  int iterations_used = 0;
  std::string status;  // ok, no-op or error

  bool operator==(const ResultRow &) const = default;
};

std::vector<ResultRow> result_rows(const std::vector<OptimResult> &results);

/// '#' comment lines, a header, then one row per output in input order.
void write_results_tsv(std::ostream &out,
                       const std::vector<OptimResult> &results,
                       const std::vector<std::string> &comments = {});
std::vector<ResultRow> read_results_tsv(std::istream &in);

/// Every decoded candidate with its iteration, source and acceptance.
void write_trace_tsv(std::ostream &out,
                     const std::vector<OptimResult> &results,
                     const std::vector<std::string> &comments = {});

struct MeanStd {
  double mean = 0.0, std = 0.0;  // population standard deviation
};

MeanStd mean_std(const std::vector<double> &v);

struct Aggregate {
  long long inputs = 0;
  long long improved = 0;
  MeanStd improvement;  // best output score minus input score
  MeanStd sim;          // similarity of the best output to the input
};

Aggregate aggregate(const std::vector<OptimResult> &results);

/// Per-iteration summary. Percentages are over all inputs; "better",
/// "worse" and "same" classify the best admissible candidate of iteration
/// t against the score entering it.
struct IterationRow {
  int t = 0;
  double in_pct = 0.0, p_pct = 0.0, n_pct = 0.0, z_pct = 0.0;
  MeanStd p_t;     // gain in iteration t over improved inputs
  MeanStd p;       // gain up to iteration t over all inputs
  MeanStd sim_t;   // step similarity over improved inputs
  MeanStd sim;     // similarity to the input up to t over all inputs
};

std::vector<IterationRow> iteration_table(
    const std::vector<OptimResult> &results, int max_iters);

void write_summary(std::ostream &out, const std::vector<OptimResult> &results,
                   int max_iters,
                   const std::vector<std::string> &comments = {});

}  // namespace modof::pipe

#endif  // MODOF_PIPE_REPORT_H_
