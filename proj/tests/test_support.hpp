#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "patrol/graph.hpp"

namespace patrol::testing {

inline std::string fixture(const std::string& name) {
  return std::string(PATROL_FIXTURE_DIR) + "/" + name;
}

// Random digraph; each ordered pair (self-loops included) present with p.
inline DiGraph random_digraph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  return DiGraph(n, std::move(edges));
}

// Random strongly connected digraph: a directed Hamiltonian cycle in random
// order plus random extra edges.
inline DiGraph random_connected_digraph(int n, double extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> edges;
  for (int k = 0; k < n; ++k) edges.push_back({order[k], order[(k + 1) % n]});
  std::bernoulli_distribution coin(extra);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  return DiGraph(n, std::move(edges));
}

// Boolean Floyd-Warshall closure, reflexive.
inline std::vector<std::vector<bool>> closure(const DiGraph& g) {
  const int n = g.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    r[i][i] = true;
    for (int j : g.out_neighbors(i)) r[i][j] = true;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

}  // namespace patrol::testing
