//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PAIRGEN_GED_H_
#define MODOF_PAIRGEN_GED_H_

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modof/chem/junction_tree.h"

namespace modof::pairgen {

class GedError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Node-labeled undirected graph (junction trees in practice).
struct LabeledGraph {
  std::vector<int> labels;
  std::vector<std::pair<int, int>> edges;

  int size() const { return static_cast<int>(labels.size()); }
  std::vector<std::vector<int>> adjacency() const;
  bool has_edge(int u, int v) const;
};

LabeledGraph to_labeled(const chem::JunctionTree &t);

struct EditPath {
  std::vector<std::pair<int, int>> matched;  // (x node, y node), sorted by x
  std::vector<int> removed;                  // D: x nodes without image
  std::vector<int> added;                    // J: y nodes without preimage
  std::vector<std::pair<int, int>> deleted_edges;  // x edges not preserved
  std::vector<std::pair<int, int>> added_edges;    // y edges not preserved
  int cost = 0;
  bool optimal = true;

  /// Image of each x node, -1 if removed.
  std::vector<int> forward(int nx) const;
  /// Preimage of each y node, -1 if added.
  std::vector<int> backward(int ny) const;
};

struct GedOptions {
  int max_nodes = 40;
  /// Search expansions before giving up on proving optimality.
  long long max_expansions = 2000000;
};

/// Cost of a label-preserving partial injection (map[x] = y or -1):
/// unit cost per deleted/added node and per deleted/added edge.
int mapping_cost(const LabeledGraph &x, const LabeledGraph &y,
                 const std::vector<int> &map);

EditPath path_from_mapping(const LabeledGraph &x, const LabeledGraph &y,
                           const std::vector<int> &map);

/// Depth-first branch and bound over x nodes in BFS order. Candidates for
/// each x node: same-label y nodes adjacent to the image of a processed
/// neighbor, then other same-label y nodes by index, then deletion.
/// Lower bound: cost so far + per-label count difference of unprocessed
/// nodes + |undecided x edges - undecided y edges|.
EditPath tree_edit_distance(const LabeledGraph &x, const LabeledGraph &y,
                            const GedOptions &opts = {});

inline EditPath tree_edit_distance(const chem::JunctionTree &x,
                                   const chem::JunctionTree &y,
                                   const GedOptions &opts = {}) {
  return tree_edit_distance(to_labeled(x), to_labeled(y), opts);
}

/// Visits edit paths of exactly `cost` in search order until `visit`
/// returns true, `limit` paths were seen, or the budget runs out. Returns
/// the number of paths visited.
int for_each_optimal_path(const LabeledGraph &x, const LabeledGraph &y,
                          int cost,
                          const std::function<bool(const EditPath &)> &visit,
                          int limit, const GedOptions &opts = {});

/// Exhaustive minimum over all label-preserving partial injections; for
/// |V_x| + |V_y| <= 12.
int brute_force_ged(const LabeledGraph &x, const LabeledGraph &y);

/// Matched x nodes adjacent (in T_x) to a removed node, or whose image is
/// adjacent (in T_y) to an added node. Sorted.
std::vector<int> disconnection_sites(const EditPath &p, const LabeledGraph &x,
                                     const LabeledGraph &y);

}  // namespace modof::pairgen

#endif  // MODOF_PAIRGEN_GED_H_
