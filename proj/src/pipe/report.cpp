//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/pipe/report.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "modof/util/text.h"

namespace modof::pipe {

namespace {

const char *kResultHeader =
    "input_smiles\toutput_smiles\tscore_before\tscore_after\tsim\t"
    "iterations_used\tstatus";

void comments_out(std::ostream &out, const std::vector<std::string> &c) {
  for (const auto &line: c)
    out << "# " << line << '\n';
}

std::string status_of(const OptimResult &r) {
  if (!r.error.empty())
    return "error";
  return r.noop ? "no-op" : "ok";
}

// Score after iteration t (or the input score) and matching similarity.
std::pair<double, double> state_at(const OptimResult &r, int t) {
  double score = r.input_score, sim = 1.0;
  for (const auto &tr: r.iterations)
    if (tr.iteration <= t) {
      score = tr.score_after;
      sim = tr.sim_after;
    }
  return { score, sim };
}

}  // namespace

std::vector<ResultRow> result_rows(const std::vector<OptimResult> &results) {
  std::vector<ResultRow> rows;
  for (const auto &r: results)
    for (const auto &o: r.outputs)
      rows.push_back({ r.input, o.smiles, r.input_score, o.score, o.sim,
                       r.iterations_used, status_of(r) });
  return rows;
}

void write_results_tsv(std::ostream &out,
                       const std::vector<OptimResult> &results,
                       const std::vector<std::string> &comments) {
  comments_out(out, comments);
  out << kResultHeader << '\n';
  for (const auto &row: result_rows(results))
    out << row.input_smiles << '\t' << row.output_smiles << '\t'
        << format_double(row.score_before) << '\t'
        << format_double(row.score_after) << '\t' << format_double(row.sim)
        << '\t' << row.iterations_used << '\t' << row.status << '\n';
}

std::vector<ResultRow> read_results_tsv(std::istream &in) {
  std::vector<ResultRow> rows;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    if (!header) {
      if (line != kResultHeader)
        throw std::runtime_error("results file: unexpected header at line "
                                 + std::to_string(lineno));
      header = true;
      continue;
    }
    const auto f = split(line, '\t');
    ResultRow r;
    long long it = 0;
    if (f.size() != 7 || !parse_double(f[2], r.score_before)
        || !parse_double(f[3], r.score_after) || !parse_double(f[4], r.sim)
        || !parse_int(f[5], it))
      throw std::runtime_error("results file: malformed line "
                               + std::to_string(lineno));
    r.input_smiles = f[0];
    r.output_smiles = f[1];
    r.iterations_used = static_cast<int>(it);
    r.status = f[6];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_trace_tsv(std::ostream &out,
                     const std::vector<OptimResult> &results,
                     const std::vector<std::string> &comments) {
  comments_out(out, comments);
  out << "input_smiles\titeration\tsource_smiles\tsample\tcandidate_smiles\t"
         "score\tsim\tdecode_failed\taccepted\n";
  for (const auto &r: results)
    for (const auto &tr: r.iterations)
      for (const auto &c: tr.candidates) {
        bool accepted = false;
        for (const auto &a: tr.accepted)
          accepted = accepted || a == c.smiles;
        out << r.input << '\t' << tr.iteration << '\t'
            << tr.sources[c.source] << '\t' << c.sample << '\t' << c.smiles
            << '\t' << format_double(c.score) << '\t'
            << format_double(c.sim) << '\t' << (c.failed ? 1 : 0) << '\t'
            << (accepted ? 1 : 0) << '\n';
      }
}

MeanStd mean_std(const std::vector<double> &v) {
  MeanStd m;
  if (v.empty())
    return m;
  for (double x: v)
    m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x: v)
    m.std += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(m.std / static_cast<double>(v.size()));
  return m;
}

Aggregate aggregate(const std::vector<OptimResult> &results) {
  Aggregate a;
  std::vector<double> gain, sim;
  for (const auto &r: results) {
    ++a.inputs;
    const Output &best = r.outputs.front();
    gain.push_back(best.score - r.input_score);
    sim.push_back(best.sim);
    if (!r.noop && best.score > r.input_score)
      ++a.improved;
  }
  a.improvement = mean_std(gain);
  a.sim = mean_std(sim);
  return a;
}

std::vector<IterationRow> iteration_table(
    const std::vector<OptimResult> &results, int max_iters) {
  std::vector<IterationRow> rows;
  const double n = static_cast<double>(results.size());
  for (int t = 1; t <= max_iters; ++t) {
    IterationRow row;
    row.t = t;
    long long in = 0, p = 0, neg = 0, z = 0;
    std::vector<double> pt, simt, ptot, simtot;
    for (const auto &r: results) {
      const auto [score, sim] = state_at(r, t);
      ptot.push_back(score - r.input_score);
      simtot.push_back(sim);
      if (static_cast<int>(r.iterations.size()) < t)
        continue;
      const IterationTrace &tr = r.iterations[t - 1];
      ++in;
      if (tr.score_after > tr.score_before) {
        ++p;
        pt.push_back(tr.score_after - tr.score_before);
        simt.push_back(tr.step_sim);
      } else if (tr.has_candidate && tr.best_candidate < tr.score_before) {
        ++neg;
      } else {
        ++z;
      }
    }
    if (n > 0) {
      row.in_pct = 100.0 * in / n;
      row.p_pct = 100.0 * p / n;
      row.n_pct = 100.0 * neg / n;
      row.z_pct = 100.0 * z / n;
    }
    row.p_t = mean_std(pt);
    row.sim_t = mean_std(simt);
    row.p = mean_std(ptot);
    row.sim = mean_std(simtot);
    rows.push_back(row);
  }
  return rows;
}

void write_summary(std::ostream &out, const std::vector<OptimResult> &results,
                   int max_iters, const std::vector<std::string> &comments) {
  comments_out(out, comments);
  const Aggregate a = aggregate(results);
  out << "# inputs=" << a.inputs << " improved=" << a.improved
      << " imprv=" << format_fixed(a.improvement.mean, 4) << "+-"
      << format_fixed(a.improvement.std, 4)
      << " sim=" << format_fixed(a.sim.mean, 4) << "+-"
      << format_fixed(a.sim.std, 4) << '\n';
  out << "t\tin_pct\tp_pct\tn_pct\tz_pct\tp_t\tp_t_std\tp\tp_std\tsim_t\t"
         "sim_t_std\tsim\tsim_std\n";
  for (const auto &r: iteration_table(results, max_iters))
    out << r.t << '\t' << format_fixed(r.in_pct, 2) << '\t'
        << format_fixed(r.p_pct, 2) << '\t' << format_fixed(r.n_pct, 2)
        << '\t' << format_fixed(r.z_pct, 2) << '\t'
        << format_fixed(r.p_t.mean, 4) << '\t' << format_fixed(r.p_t.std, 4)
        << '\t' << format_fixed(r.p.mean, 4) << '\t'
        << format_fixed(r.p.std, 4) << '\t' << format_fixed(r.sim_t.mean, 4)
        << '\t' << format_fixed(r.sim_t.std, 4) << '\t'
        << format_fixed(r.sim.mean, 4) << '\t' << format_fixed(r.sim.std, 4)
        << '\n';
}

}  // namespace modof::pipe
