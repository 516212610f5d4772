#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "patrol/chain.hpp"
#include "patrol/game.hpp"

namespace patrol {

struct SolveConfig {
  int restarts = 8;
  int max_iters = 500;
  double initial_step = 0.25;
  double step_shrink = 0.5;
  double min_step = 1e-5;
  std::uint64_t seed = 0;
  // Proposals must beat the incumbent by more than this to be accepted.
  double tol = 1e-9;
  // Worker threads for restarts; 0 means hardware concurrency. Never changes
  // the result.
  int threads = 0;

  // Throws kConfigRange.
  void validate() const;
};

struct TracePoint {
  int iteration;
  double value;
};

struct SolveReport {
  MarkovChain best;
  double value;
  double bound;  // tau / n
  double gap;    // bound - value
  std::vector<TracePoint> trace;  // winning restart, nondecreasing
  std::uint64_t evaluations;      // summed over restarts
  TauKind classification;
  bool degenerate;  // answered from the classification, no search
  int restart;      // index of the winning restart, -1 when degenerate
  std::vector<double> line_params;  // x for solve_line, empty otherwise
};

// Multi-start pattern search for max_P min_{i,j} P(T_ij <= tau) over chains
// conforming to the graph.
//
// Restart 0 starts from the uniform out-neighbor chain, the others from
// random_chain with derived seeds; leaf rows are pinned to their neighbor
// throughout. One iteration polls, in order: pairwise mass transfers inside
// each free row, spread/gather moves (one entry to or from the rest of its
// row), and random directions across all free rows, each clipped back to the
// simplex. Improving proposals are accepted on the spot; an iteration with no
// acceptance shrinks the step. Stops at min_step or max_iters.
//
// tau below the diameter returns value 0 without searching. tau at or above a
// Hamiltonian cycle length returns the cycle permutation with value 1. Other
// trivial or unknown classifications still search and report the class.
SolveReport solve_maximin(const GameInstance& instance, const SolveConfig& config);

// min{P(T_1n <= tau), P(T_n1 <= tau)} for the line chain built from x. Entries
// of x may lie on the closed interval.
double line_objective(std::span<const double> x, int tau);

// Pattern search over x in [0,1]^(n-2) for line_objective, random starts for
// every restart. Requires n >= 3 and n-1 <= tau <= 2n-3.
SolveReport solve_line(int n, int tau, const SolveConfig& config);

// |P(T_1n <= tau) - P(T_n1 <= tau)|; zero at any optimum on a line. Throws
// kTopology unless the chain lives on a labeled line.
double necessary_residual_line(const MarkovChain& chain, int tau);

// Rows of leaf nodes become the unit vector into their neighbor. No-op for
// n < 3, where single-neighbor nodes are not leaves in any useful sense.
MarkovChain apply_leaf_dominance(const DiGraph& g, const MarkovChain& chain);

}  // namespace patrol
