#include "patrol/game.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "patrol/error.hpp"
#include "patrol/hitting.hpp"

namespace patrol {

GameInstance GameInstance::make(DiGraph graph, int tau) {
  if (tau < 1) throw Error(ErrorKind::kDomain, "attack duration must be >= 1");
  if (!is_strongly_connected(graph)) {
    throw Error(ErrorKind::kConnectivity, "graph is not strongly connected");
  }
  return GameInstance{std::move(graph), tau};
}

BestResponse best_response_from_capture(const Matrix& capture) {
  BestResponse best{0, 0, capture(0, 0)};
  for (int i = 0; i < capture.rows(); ++i) {
    for (int j = 0; j < capture.cols(); ++j) {
      if (capture(i, j) < best.value) best = {i, j, capture(i, j)};
    }
  }
  return best;
}

BestResponse intruder_best_response(const MarkovChain& chain, int tau) {
  return best_response_from_capture(capture_matrix(chain.matrix(), tau));
}

double game_value(const MarkovChain& chain, int tau) {
  return game_value(chain.matrix(), tau);
}

double game_value(const Matrix& p, int tau) {
  return capture_matrix(p, tau).minCoeff();
}

double upper_bound(const GameInstance& instance) {
  return static_cast<double>(instance.tau) / instance.graph.size();
}

bool bound_applies(const GameInstance& instance) {
  if (instance.graph.size() < 2) return false;
  return classify_tau(instance.graph, instance.tau).kind == TauKind::kNontrivial;
}

const char* to_string(DominanceReason reason) {
  switch (reason) {
    case DominanceReason::kEntryCut: return "entry-cut";
    case DominanceReason::kExitCut: return "exit-cut";
    case DominanceReason::kLeaf: return "leaf";
  }
  return "unknown";
}

namespace {

// Nodes that can reach (reverse = true) or be reached from (reverse = false)
// `root` without touching `blocked`.
std::vector<bool> reach_avoiding(const DiGraph& g, int root, int blocked,
                                 bool reverse) {
  const int n = g.size();
  std::vector<bool> seen(n, false);
  seen[root] = true;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < n; ++v) {
      if (v == blocked || seen[v]) continue;
      if (reverse ? g.has_edge(v, u) : g.has_edge(u, v)) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<DominatedPair> dominated_pairs(const DiGraph& g, int tau) {
  const int n = g.size();
  if (n < 3) {
    throw Error(ErrorKind::kInvalidDimension, "dominance analysis needs n >= 3");
  }
  if (tau < 1) throw Error(ErrorKind::kDomain, "attack duration must be >= 1");
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kConnectivity, "graph is not strongly connected");
  }
  std::vector<DominatedPair> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto reaches_j = reach_avoiding(g, j, i, /*reverse=*/true);
      for (int k = 0; k < n; ++k) {
        if (k != i && k != j && !reaches_j[k]) {
          out.push_back({i, j, DominanceReason::kEntryCut, k});
        }
      }
      const auto from_i = reach_avoiding(g, i, j, /*reverse=*/false);
      for (int k = 0; k < n; ++k) {
        if (k != i && k != j && !from_i[k]) {
          out.push_back({i, j, DominanceReason::kExitCut, k});
        }
      }
    }
  }
  if (tau >= 2) {
    for (int i = 0; i < n; ++i) {
      if (const auto neighbor = leaf_neighbor(g, i)) {
        out.push_back({i, i, DominanceReason::kLeaf, *neighbor});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const DominatedPair& a, const DominatedPair& b) {
    return std::tie(a.from, a.to, a.reason, a.witness) <
           std::tie(b.from, b.to, b.reason, b.witness);
  });
  return out;
}

}  // namespace patrol
