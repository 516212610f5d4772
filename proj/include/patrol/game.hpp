#pragma once

#include <vector>

#include "patrol/chain.hpp"
#include "patrol/graph.hpp"

namespace patrol {

// Environment plus attack duration. make() rejects graphs that are not
// strongly connected and tau < 1.
struct GameInstance {
  DiGraph graph;
  int tau;

  static GameInstance make(DiGraph graph, int tau);
};

// The intruder's minimizing pair (0-based) and the capture probability there.
struct BestResponse {
  int from = 0;
  int to = 0;
  double value = 0.0;
};

// Minimum over all n^2 ordered pairs, diagonal included; ties go to the
// lexicographically smallest (from, to).
BestResponse best_response_from_capture(const Matrix& capture);
BestResponse intruder_best_response(const MarkovChain& chain, int tau);

double game_value(const MarkovChain& chain, int tau);
// Raw-matrix overload for search loops.
double game_value(const Matrix& p, int tau);

// tau / n. Valid as a bound when tau is nontrivial for the graph; see
// bound_applies().
double upper_bound(const GameInstance& instance);
bool bound_applies(const GameInstance& instance);

enum class DominanceReason {
  kEntryCut,  // every witness -> to path passes through from
  kExitCut,   // every from -> witness path passes through to
  kLeaf,      // (leaf, leaf) right after the agent leaves; witness = neighbor
};

const char* to_string(DominanceReason reason);

struct DominatedPair {
  int from;
  int to;
  DominanceReason reason;
  int witness;

  friend bool operator==(const DominatedPair&, const DominatedPair&) = default;
};

// Intruder pairs that some other pair weakly dominates on every conforming
// chain. One entry per (pair, reason, witness), sorted. Leaf entries only for
// tau >= 2. Requires a strongly connected graph with n >= 3.
std::vector<DominatedPair> dominated_pairs(const DiGraph& g, int tau);

}  // namespace patrol
