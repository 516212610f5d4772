#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace patrol {

// Directed edge between 0-based node indices.
struct Edge {
  int from;
  int to;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Directed graph on nodes 0..n-1. Self-loops are ordinary edges. Immutable
// once constructed; membership queries go through a dense n*n bitmap.
class DiGraph {
 public:
  // Duplicate edges are collapsed. Throws on out-of-range endpoints or n < 1.
  DiGraph(int n, std::vector<Edge> edges);

  int size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_edge(int from, int to) const noexcept {
    return adjacency_[static_cast<std::size_t>(from) * n_ + to] != 0;
  }
  bool has_self_loop(int node) const noexcept { return has_edge(node, node); }

  // Edges sorted by (from, to).
  std::span<const Edge> edges() const noexcept { return edges_; }
  // Out-neighbors of `node` in increasing order, self-loop included.
  std::span<const int> out_neighbors(int node) const noexcept {
    return {out_.data() + out_offset_[node], out_.data() + out_offset_[node + 1]};
  }

  friend bool operator==(const DiGraph& a, const DiGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<int> out_;
  std::vector<std::size_t> out_offset_;
};

// Star with center 0 and leaves 1..n-1, bidirectional spokes, self-loops
// everywhere. n >= 3.
DiGraph build_star(int n);
// Path 0-1-...-(n-1), bidirectional, self-loops everywhere. n >= 3.
DiGraph build_line(int n);
// All n*n ordered pairs. n >= 2.
DiGraph build_complete(int n);

bool is_strongly_connected(const DiGraph& g);

// All-pairs shortest path lengths (BFS hops); -1 marks unreachable pairs.
// The diagonal is 0: self-loops never shorten anything.
std::vector<std::vector<int>> shortest_path_lengths(const DiGraph& g);

// Longest shortest path over ordered pairs. Throws kConnectivity when g is
// not strongly connected.
int diameter(const DiGraph& g);

// True iff `to` is reachable from `from` without passing through `blocked`
// (pass -1 to block nothing). A node always reaches itself.
bool reachable_avoiding(const DiGraph& g, int from, int to, int blocked);

// Leaves have exactly one neighbor other than themselves, with edges in both
// directions. Returns that neighbor.
std::optional<int> leaf_neighbor(const DiGraph& g, int node);

// Edge set without self-loops equals {(i,i+1),(i+1,i)}: the path labeled in
// order. Self-loops are allowed but not required.
bool is_labeled_line(const DiGraph& g);

// Every ordered pair of distinct nodes is an edge.
bool is_complete(const DiGraph& g);

// Closed walk that visits every node. `nodes` lists the walk without
// repeating the start at the end, so its length is nodes.size().
struct ClosedWalk {
  std::vector<int> nodes;
  bool exact = false;  // true when no shorter closed spanning walk exists

  int length() const noexcept { return static_cast<int>(nodes.size()); }
};

// Shortest closed spanning walk: closed form for complete graphs and trees,
// Held-Karp on the hop metric up to kExactWalkLimit nodes, otherwise a
// heuristic upper bound with exact == false.
inline constexpr int kExactWalkLimit = 16;
ClosedWalk min_closed_spanning_walk(const DiGraph& g);

enum class TauKind { kTrivialZero, kNontrivial, kTrivialOne, kUnknown };

const char* to_string(TauKind kind);

struct TauClass {
  TauKind kind = TauKind::kUnknown;
  int diameter = 0;
  std::optional<int> closed_walk_bound;
  ClosedWalk walk;
};

// Where the attack duration sits relative to the diameter and the shortest
// closed spanning walk. Requires a strongly connected graph with n >= 2.
TauClass classify_tau(const DiGraph& g, int tau);

}  // namespace patrol
