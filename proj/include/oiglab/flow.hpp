#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace oiglab {

/// Integer max-flow (Dinic: BFS level graph + blocking flow by DFS).
class FlowNetwork {
 public:
  using cap_t = std::int64_t;

  struct Arc {
    int to;
    cap_t cap;
    cap_t flow;
  };

  explicit FlowNetwork(int num_nodes) : adj_(static_cast<std::size_t>(num_nodes)) {}

  int add_arc(int from, int to, cap_t cap) {
    if (cap < 0) throw std::invalid_argument("negative capacity");
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap, 0});
    arcs_.push_back({from, 0, 0});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  cap_t max_flow(int source, int sink) {
    cap_t total = 0;
    while (bfs(source, sink)) {
      iter_.assign(adj_.size(), 0);
      while (cap_t pushed = dfs(source, sink, std::numeric_limits<cap_t>::max())) total += pushed;
    }
    return total;
  }

  [[nodiscard]] cap_t flow_on(int arc_id) const { return arcs_[static_cast<std::size_t>(arc_id)].flow; }
  [[nodiscard]] const Arc& arc(int arc_id) const { return arcs_[static_cast<std::size_t>(arc_id)]; }
  [[nodiscard]] int num_nodes() const { return static_cast<int>(adj_.size()); }

  /// Capacity bounds and flow conservation at every node except source/sink.
  [[nodiscard]] bool conserves(int source, int sink) const {
    std::vector<cap_t> balance(adj_.size(), 0);
    for (std::size_t id = 0; id < arcs_.size(); id += 2) {
      const Arc& a = arcs_[id];
      if (a.flow < 0 || a.flow > a.cap) return false;
      int from = arcs_[id + 1].to;
      balance[static_cast<std::size_t>(from)] -= a.flow;
      balance[static_cast<std::size_t>(a.to)] += a.flow;
    }
    for (std::size_t v = 0; v < adj_.size(); ++v)
      if (static_cast<int>(v) != source && static_cast<int>(v) != sink && balance[v] != 0)
        return false;
    return true;
  }

 private:
  bool bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj_[static_cast<std::size_t>(v)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.cap - a.flow > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  cap_t dfs(int v, int sink, cap_t limit) {
    if (v == sink) return limit;
    auto& it = iter_[static_cast<std::size_t>(v)];
    const auto& out = adj_[static_cast<std::size_t>(v)];
    for (; it < out.size(); ++it) {
      int id = out[it];
      Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.cap - a.flow <= 0 ||
          level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1)
        continue;
      if (cap_t pushed = dfs(a.to, sink, std::min(limit, a.cap - a.flow)); pushed > 0) {
        a.flow += pushed;
        arcs_[static_cast<std::size_t>(id ^ 1)].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace oiglab
