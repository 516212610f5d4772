#include "patrol/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "patrol/error.hpp"

namespace patrol {

DiGraph::DiGraph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) {
    throw Error(ErrorKind::kInvalidDimension,
                "graph needs at least one node, got " + std::to_string(n));
  }
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw Error(ErrorKind::kDomain,
                  "edge (" + std::to_string(e.from + 1) + "," +
                      std::to_string(e.to + 1) + ") outside 1.." +
                      std::to_string(n));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(static_cast<std::size_t>(n) * n, 0);
  out_offset_.assign(n + 1, 0);
  out_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.from) * n + e.to] = 1;
    out_.push_back(e.to);
    ++out_offset_[e.from + 1];
  }
  for (int i = 0; i < n; ++i) out_offset_[i + 1] += out_offset_[i];
}

namespace {

void require_min_nodes(int n, int min, const char* what) {
  if (n < min) {
    throw Error(ErrorKind::kInvalidDimension,
                std::string(what) + " needs n >= " + std::to_string(min) +
                    ", got " + std::to_string(n));
  }
}

std::vector<int> bfs_from(const DiGraph& g, int source, int blocked,
                          std::vector<int>* parent = nullptr) {
  std::vector<int> dist(g.size(), -1);
  if (parent) parent->assign(g.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.out_neighbors(u)) {
      if (v == blocked || dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      if (parent) (*parent)[v] = u;
      queue.push_back(v);
    }
  }
  return dist;
}

bool is_symmetric(const DiGraph& g) {
  for (const Edge& e : g.edges()) {
    if (!g.has_edge(e.to, e.from)) return false;
  }
  return true;
}

std::size_t undirected_edge_count(const DiGraph& g) {
  std::size_t count = 0;
  for (const Edge& e : g.edges()) {
    if (e.from < e.to) ++count;
  }
  return count;
}

// Euler tour of a spanning tree given by `parent` (root has parent -1).
std::vector<int> tree_tour(int n, int root, const std::vector<int>& parent) {
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v) {
    if (parent[v] >= 0) children[parent[v]].push_back(v);
  }
  std::vector<int> tour;
  tour.reserve(2 * n);
  // Iterative DFS: (node, next child index).
  std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
  tour.push_back(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < children[node].size()) {
      const int child = children[node][next++];
      tour.push_back(child);
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) tour.push_back(stack.back().first);
    }
  }
  tour.pop_back();  // final return to root is implied by closure
  return tour;
}

// Appends the shortest path a -> b excluding b.
void append_leg(const DiGraph& g, int a, int b, std::vector<int>& walk) {
  std::vector<int> parent;
  bfs_from(g, a, -1, &parent);
  std::vector<int> reversed;
  for (int v = b; v != a; v = parent[v]) reversed.push_back(v);
  walk.push_back(a);
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
    if (*it != b) walk.push_back(*it);
  }
}

std::vector<int> expand_tour(const DiGraph& g, const std::vector<int>& order) {
  std::vector<int> walk;
  for (std::size_t k = 0; k < order.size(); ++k) {
    append_leg(g, order[k], order[(k + 1) % order.size()], walk);
  }
  return walk;
}

ClosedWalk held_karp(const DiGraph& g,
                     const std::vector<std::vector<int>>& dist) {
  const int n = g.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  // dp[mask * n + v]: shortest walk from node 0 covering mask, ending at v.
  std::vector<int> dp((full + 1) * n, kInf);
  std::vector<std::int8_t> prev((full + 1) * n, -1);
  dp[1 * n + 0] = 0;
  for (std::size_t mask = 1; mask <= full; mask += 2) {
    for (int v = 0; v < n; ++v) {
      const int cost = dp[mask * n + v];
      if (cost >= kInf || !(mask & (std::size_t{1} << v))) continue;
      for (int w = 0; w < n; ++w) {
        if (mask & (std::size_t{1} << w)) continue;
        const std::size_t next = mask | (std::size_t{1} << w);
        const int candidate = cost + dist[v][w];
        if (candidate < dp[next * n + w]) {
          dp[next * n + w] = candidate;
          prev[next * n + w] = static_cast<std::int8_t>(v);
        }
      }
    }
  }
  int best = kInf;
  int last = 0;
  for (int v = 0; v < n; ++v) {
    const int cost = dp[full * n + v];
    if (cost >= kInf) continue;
    const int closed = cost + dist[v][0];
    if (closed < best) {
      best = closed;
      last = v;
    }
  }
  std::vector<int> order;
  std::size_t mask = full;
  for (int v = last; v != -1;) {
    order.push_back(v);
    const int p = prev[mask * n + v];
    mask &= ~(std::size_t{1} << v);
    v = p;
  }
  std::reverse(order.begin(), order.end());
  return ClosedWalk{expand_tour(g, order), true};
}

ClosedWalk greedy_walk(const DiGraph& g,
                       const std::vector<std::vector<int>>& dist) {
  const int n = g.size();
  std::vector<bool> visited(n, false);
  std::vector<int> walk;
  int current = 0;
  visited[0] = true;
  int remaining = n - 1;
  std::vector<int> parent;
  while (remaining > 0) {
    int target = -1;
    for (int v = 0; v < n; ++v) {
      if (!visited[v] && (target < 0 || dist[current][v] < dist[current][target])) {
        target = v;
      }
    }
    const std::size_t start = walk.size();
    append_leg(g, current, target, walk);
    for (std::size_t k = start; k < walk.size(); ++k) {
      if (!visited[walk[k]]) {
        visited[walk[k]] = true;
        --remaining;
      }
    }
    visited[target] = true;
    --remaining;
    current = target;
  }
  append_leg(g, current, 0, walk);
  return ClosedWalk{std::move(walk), false};
}

}  // namespace

DiGraph build_star(int n) {
  require_min_nodes(n, 3, "star");
  std::vector<Edge> edges;
  for (int leaf = 1; leaf < n; ++leaf) {
    edges.push_back({0, leaf});
    edges.push_back({leaf, 0});
  }
  for (int v = 0; v < n; ++v) edges.push_back({v, v});
  return DiGraph(n, std::move(edges));
}

DiGraph build_line(int n) {
  require_min_nodes(n, 3, "line");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) {
    edges.push_back({v, v + 1});
    edges.push_back({v + 1, v});
  }
  for (int v = 0; v < n; ++v) edges.push_back({v, v});
  return DiGraph(n, std::move(edges));
}

DiGraph build_complete(int n) {
  require_min_nodes(n, 2, "complete graph");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) edges.push_back({i, j});
  }
  return DiGraph(n, std::move(edges));
}

bool is_strongly_connected(const DiGraph& g) {
  // Node 0 reaches everyone and everyone reaches node 0.
  const auto forward = bfs_from(g, 0, -1);
  if (std::find(forward.begin(), forward.end(), -1) != forward.end()) return false;
  std::vector<Edge> reversed;
  reversed.reserve(g.edge_count());
  for (const Edge& e : g.edges()) reversed.push_back({e.to, e.from});
  const DiGraph transpose(g.size(), std::move(reversed));
  const auto backward = bfs_from(transpose, 0, -1);
  return std::find(backward.begin(), backward.end(), -1) == backward.end();
}

std::vector<std::vector<int>> shortest_path_lengths(const DiGraph& g) {
  std::vector<std::vector<int>> dist;
  dist.reserve(g.size());
  for (int v = 0; v < g.size(); ++v) dist.push_back(bfs_from(g, v, -1));
  return dist;
}

int diameter(const DiGraph& g) {
  int longest = 0;
  for (const auto& row : shortest_path_lengths(g)) {
    for (int d : row) {
      if (d < 0) throw Error(ErrorKind::kConnectivity, "graph is not strongly connected");
      longest = std::max(longest, d);
    }
  }
  return longest;
}

bool reachable_avoiding(const DiGraph& g, int from, int to, int blocked) {
  if (from == to) return true;
  if (from == blocked || to == blocked) return false;
  return bfs_from(g, from, blocked)[to] >= 0;
}

std::optional<int> leaf_neighbor(const DiGraph& g, int node) {
  std::optional<int> neighbor;
  for (int v = 0; v < g.size(); ++v) {
    if (v == node || !(g.has_edge(node, v) || g.has_edge(v, node))) continue;
    if (neighbor) return std::nullopt;
    neighbor = v;
  }
  if (neighbor && g.has_edge(node, *neighbor) && g.has_edge(*neighbor, node)) {
    return neighbor;
  }
  return std::nullopt;
}

bool is_labeled_line(const DiGraph& g) {
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const bool expected = (j == i + 1) || (i == j + 1);
      if (g.has_edge(i, j) != expected) return false;
    }
  }
  return true;
}

bool is_complete(const DiGraph& g) {
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i != j && !g.has_edge(i, j)) return false;
    }
  }
  return true;
}

ClosedWalk min_closed_spanning_walk(const DiGraph& g) {
  const int n = g.size();
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kConnectivity, "graph is not strongly connected");
  }
  if (n == 1) {
    // A walk must take at least one step.
    if (!g.has_self_loop(0)) {
      throw Error(ErrorKind::kInvalidDimension, "single node without self-loop");
    }
    return ClosedWalk{{0}, true};
  }
  if (is_complete(g)) {
    ClosedWalk walk{std::vector<int>(n), true};
    for (int v = 0; v < n; ++v) walk.nodes[v] = v;
    return walk;
  }
  const bool symmetric = is_symmetric(g);
  if (symmetric && undirected_edge_count(g) == static_cast<std::size_t>(n - 1)) {
    // Trees: every edge must be crossed in both directions.
    std::vector<int> parent;
    bfs_from(g, 0, -1, &parent);
    return ClosedWalk{tree_tour(n, 0, parent), true};
  }
  const auto dist = shortest_path_lengths(g);
  if (n <= kExactWalkLimit) return held_karp(g, dist);

  ClosedWalk best = greedy_walk(g, dist);
  if (symmetric) {
    std::vector<int> parent;
    bfs_from(g, 0, -1, &parent);
    ClosedWalk doubled{tree_tour(n, 0, parent), false};
    if (doubled.length() < best.length()) best = std::move(doubled);
  }
  return best;
}

const char* to_string(TauKind kind) {
  switch (kind) {
    case TauKind::kTrivialZero: return "TrivialZero";
    case TauKind::kNontrivial: return "Nontrivial";
    case TauKind::kTrivialOne: return "TrivialOne";
    case TauKind::kUnknown: return "Unknown";
  }
  return "Unknown";
}

TauClass classify_tau(const DiGraph& g, int tau) {
  if (tau < 1) {
    throw Error(ErrorKind::kDomain, "attack duration must be positive");
  }
  require_min_nodes(g.size(), 2, "classification");
  TauClass result;
  result.diameter = diameter(g);
  result.walk = min_closed_spanning_walk(g);
  result.closed_walk_bound = result.walk.length();
  if (tau < result.diameter) {
    result.kind = TauKind::kTrivialZero;
  } else if (result.walk.length() <= tau) {
    result.kind = TauKind::kTrivialOne;
  } else if (result.walk.exact || tau < g.size()) {
    // Any closed spanning walk has length >= n.
    result.kind = TauKind::kNontrivial;
  } else {
    result.kind = TauKind::kUnknown;
  }
  return result;
}

}  // namespace patrol
