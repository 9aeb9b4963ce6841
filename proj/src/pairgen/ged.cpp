//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/pairgen/ged.h"

#include <algorithm>
#include <map>

namespace modof::pairgen {

std::vector<std::vector<int>> LabeledGraph::adjacency() const {
  std::vector<std::vector<int>> adj(labels.size());
  for (const auto &[u, v]: edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto &l: adj)
    std::sort(l.begin(), l.end());
  return adj;
}

bool LabeledGraph::has_edge(int u, int v) const {
  for (const auto &[a, b]: edges)
    if ((a == u && b == v) || (a == v && b == u))
      return true;
  return false;
}

LabeledGraph to_labeled(const chem::JunctionTree &t) {
  LabeledGraph g;
  for (const auto &n: t.nodes)
    g.labels.push_back(n.type_id);
  g.edges = t.edges;
  return g;
}

std::vector<int> EditPath::forward(int nx) const {
  std::vector<int> f(nx, -1);
  for (const auto &[a, b]: matched)
    f[a] = b;
  return f;
}

std::vector<int> EditPath::backward(int ny) const {
  std::vector<int> b(ny, -1);
  for (const auto &[x, y]: matched)
    b[y] = x;
  return b;
}

int mapping_cost(const LabeledGraph &x, const LabeledGraph &y,
                 const std::vector<int> &map) {
  int matched = 0;
  for (int u = 0; u < x.size(); ++u)
    if (map[u] >= 0)
      ++matched;
  int kept = 0;
  for (const auto &[u, v]: x.edges)
    if (map[u] >= 0 && map[v] >= 0 && y.has_edge(map[u], map[v]))
      ++kept;
  return x.size() + y.size() - 2 * matched
         + static_cast<int>(x.edges.size() + y.edges.size()) - 2 * kept;
}

EditPath path_from_mapping(const LabeledGraph &x, const LabeledGraph &y,
                           const std::vector<int> &map) {
  EditPath p;
  std::vector<bool> hit(y.size(), false);
  for (int u = 0; u < x.size(); ++u) {
    if (map[u] >= 0) {
      p.matched.emplace_back(u, map[u]);
      hit[map[u]] = true;
    } else {
      p.removed.push_back(u);
    }
  }
  for (int v = 0; v < y.size(); ++v)
    if (!hit[v])
      p.added.push_back(v);
  std::vector<int> inv(y.size(), -1);
  for (int u = 0; u < x.size(); ++u)
    if (map[u] >= 0)
      inv[map[u]] = u;
  for (const auto &[u, v]: x.edges)
    if (!(map[u] >= 0 && map[v] >= 0 && y.has_edge(map[u], map[v])))
      p.deleted_edges.emplace_back(u, v);
  for (const auto &[a, b]: y.edges)
    if (!(inv[a] >= 0 && inv[b] >= 0 && x.has_edge(inv[a], inv[b])))
      p.added_edges.emplace_back(a, b);
  p.cost = mapping_cost(x, y, map);
  return p;
}

namespace {

class DfGed {
public:
  DfGed(const LabeledGraph &x, const LabeledGraph &y, const GedOptions &o)
      : x_(x), y_(y), opts_(o), ax_(x.adjacency()), ay_(y.adjacency()),
        map_(x.size(), -1), inv_(y.size(), -1), used_(y.size(), false),
        pos_(x.size(), -1) {
    // BFS order over x, components in index order.
    std::vector<bool> seen(x.size(), false);
    for (int r = 0; r < x.size(); ++r) {
      if (seen[r])
        continue;
      seen[r] = true;
      std::size_t h = order_.size();
      order_.push_back(r);
      while (h < order_.size()) {
        const int u = order_[h++];
        for (int w: ax_[u])
          if (!seen[w]) {
            seen[w] = true;
            order_.push_back(w);
          }
      }
    }
    for (std::size_t i = 0; i < order_.size(); ++i)
      pos_[order_[i]] = static_cast<int>(i);
    for (int l: x.labels)
      ++rem_x_[l];
    for (int l: y.labels)
      ++rem_y_[l];
    undecided_x_edges_ = static_cast<int>(x.edges.size());
    undecided_y_edges_ = static_cast<int>(y.edges.size());
    best_ = x.size() + y.size() + static_cast<int>(x.edges.size())
            + static_cast<int>(y.edges.size());
    best_map_.assign(x.size(), -1);
  }

  // Enumeration mode: prune only above `cost`, report every leaf at it.
  int enumerate(int cost, const std::function<bool(const EditPath &)> &visit,
                int limit) {
    target_ = cost;
    visit_ = &visit;
    limit_ = limit;
    best_ = cost + 1;
    search(0, 0);
    return visited_;
  }

  EditPath run() {
    search(0, 0);
    EditPath p = path_from_mapping(x_, y_, best_map_);
    p.optimal = !budget_hit_;
    return p;
  }

private:
  int bound(int g) const {
    int nodes = 0;
    for (const auto &[l, c]: rem_x_) {
      const auto it = rem_y_.find(l);
      nodes += std::abs(c - (it == rem_y_.end() ? 0 : it->second));
    }
    for (const auto &[l, c]: rem_y_)
      if (!rem_x_.count(l))
        nodes += c;
    return g + nodes + std::abs(undecided_x_edges_ - undecided_y_edges_);
  }

  // Cost of edges closed by deciding x node u (assigned to v or deleted),
  // plus the number of x and y edges that become decided.
  void close_edges(int u, int v, int &cost, int &dx, int &dy) const {
    cost = dx = dy = 0;
    for (int w: ax_[u]) {
      if (pos_[w] >= pos_[u])
        continue;  // w not processed yet
      ++dx;
      const int vw = map_[w];
      if (v >= 0 && vw >= 0 && std::binary_search(ay_[v].begin(),
                                                  ay_[v].end(), vw))
        continue;  // preserved
      ++cost;
    }
    if (v < 0)
      return;
    for (int z: ay_[v]) {
      if (!used_[z])
        continue;
      ++dy;
      const int pre = inv_[z];
      if (!std::binary_search(ax_[u].begin(), ax_[u].end(), pre))
        ++cost;  // y edge between two used nodes with no x counterpart
    }
  }

  void search(std::size_t depth, int g) {
    if (budget_hit_)
      return;
    if (++expansions_ > opts_.max_expansions) {
      budget_hit_ = true;
      return;
    }
    if (depth == order_.size()) {
      // Remaining y nodes and their undecided edges are additions.
      const int total = g + [&] {
        int c = 0;
        for (int v = 0; v < y_.size(); ++v)
          if (!used_[v])
            ++c;
        return c;
      }() + undecided_y_edges_;
      if (visit_) {
        if (total == target_) {
          EditPath p = path_from_mapping(x_, y_, map_);
          ++visited_;
          if ((*visit_)(p) || visited_ >= limit_)
            budget_hit_ = true;  // stop the search
        }
        return;
      }
      if (total < best_) {
        best_ = total;
        best_map_ = map_;
      }
      return;
    }
    if (bound(g) >= best_)
      return;
    const int u = order_[depth];
    const int label = x_.labels[u];

    std::vector<int> cands;
    std::vector<bool> listed(y_.size(), false);
    for (int w: ax_[u]) {
      if (pos_[w] >= pos_[u] || map_[w] < 0)
        continue;
      for (int z: ay_[map_[w]])
        if (!used_[z] && !listed[z] && y_.labels[z] == label) {
          listed[z] = true;
          cands.push_back(z);
        }
    }
    std::sort(cands.begin(), cands.end());
    for (int v = 0; v < y_.size(); ++v)
      if (!used_[v] && !listed[v] && y_.labels[v] == label)
        cands.push_back(v);
    cands.push_back(-1);

    for (int v: cands) {
      int c, dx, dy;
      close_edges(u, v, c, dx, dy);
      const int node_cost = v < 0 ? 1 : 0;
      map_[u] = v;
      --rem_x_[label];
      if (v >= 0) {
        used_[v] = true;
        inv_[v] = u;
        --rem_y_[label];
      }
      undecided_x_edges_ -= dx;
      undecided_y_edges_ -= dy;
      search(depth + 1, g + c + node_cost);
      undecided_x_edges_ += dx;
      undecided_y_edges_ += dy;
      if (v >= 0) {
        used_[v] = false;
        inv_[v] = -1;
        ++rem_y_[label];
      }
      ++rem_x_[label];
      map_[u] = -1;
      if (budget_hit_)
        return;
    }
  }

  const LabeledGraph &x_;
  const LabeledGraph &y_;
  const GedOptions &opts_;
  std::vector<std::vector<int>> ax_, ay_;
  std::vector<int> map_, inv_;
  std::vector<bool> used_;
  std::vector<int> order_, pos_;
  std::map<int, int> rem_x_, rem_y_;
  int undecided_x_edges_ = 0, undecided_y_edges_ = 0;
  int best_ = 0;
  std::vector<int> best_map_;
  long long expansions_ = 0;
  bool budget_hit_ = false;
  int target_ = 0;
  const std::function<bool(const EditPath &)> *visit_ = nullptr;
  int limit_ = 0;
  int visited_ = 0;
};

void brute(const LabeledGraph &x, const LabeledGraph &y, int u,
           std::vector<int> &map, std::vector<bool> &used, int &best) {
  if (u == x.size()) {
    best = std::min(best, mapping_cost(x, y, map));
    return;
  }
  map[u] = -1;
  brute(x, y, u + 1, map, used, best);
  for (int v = 0; v < y.size(); ++v) {
    if (used[v] || y.labels[v] != x.labels[u])
      continue;
    used[v] = true;
    map[u] = v;
    brute(x, y, u + 1, map, used, best);
    used[v] = false;
    map[u] = -1;
  }
}

}  // namespace

EditPath tree_edit_distance(const LabeledGraph &x, const LabeledGraph &y,
                            const GedOptions &opts) {
  if (x.size() > opts.max_nodes || y.size() > opts.max_nodes)
    throw GedError("tree too large for exact edit distance ("
                   + std::to_string(std::max(x.size(), y.size())) + " > "
                   + std::to_string(opts.max_nodes) + " nodes)");
  return DfGed(x, y, opts).run();
}

int for_each_optimal_path(const LabeledGraph &x, const LabeledGraph &y,
                          int cost,
                          const std::function<bool(const EditPath &)> &visit,
                          int limit, const GedOptions &opts) {
  if (limit <= 0)
    return 0;
  return DfGed(x, y, opts).enumerate(cost, visit, limit);
}

int brute_force_ged(const LabeledGraph &x, const LabeledGraph &y) {
  if (x.size() + y.size() > 12)
    throw GedError("brute-force edit distance limited to 12 nodes in total");
  std::vector<int> map(x.size(), -1);
  std::vector<bool> used(y.size(), false);
  int best = x.size() + y.size() + static_cast<int>(x.edges.size())
             + static_cast<int>(y.edges.size());
  brute(x, y, 0, map, used, best);
  return best;
}

std::vector<int> disconnection_sites(const EditPath &p, const LabeledGraph &x,
                                     const LabeledGraph &y) {
  const auto ax = x.adjacency();
  const auto ay = y.adjacency();
  std::vector<bool> in_d(x.size(), false), in_j(y.size(), false);
  for (int u: p.removed)
    in_d[u] = true;
  for (int v: p.added)
    in_j[v] = true;
  std::vector<int> out;
  for (const auto &[u, v]: p.matched) {
    bool site = false;
    for (int w: ax[u])
      site = site || in_d[w];
    for (int z: ay[v])
      site = site || in_j[z];
    if (site)
      out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace modof::pairgen
