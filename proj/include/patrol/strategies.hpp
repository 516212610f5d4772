#pragma once

#include <optional>
#include <span>
#include <vector>

#include "patrol/chain.hpp"

namespace patrol {

// Rightward probabilities x_1..x_{n-2} of the interior nodes of a line, each
// strictly inside (0, 1).
class LineParams {
 public:
  explicit LineParams(std::vector<double> x);

  std::span<const double> values() const noexcept { return x_; }
  int nodes() const noexcept { return static_cast<int>(x_.size()) + 2; }
  LineParams reflected() const;  // x -> 1 - x

 private:
  std::vector<double> x_;
};

// Center 0 moves uniformly to the leaves, leaves return to the center.
MarkovChain star_optimal(int n);
// Value of star_optimal(n) against the best intruder; tau >= 2.
double star_value(int n, int tau);

// Interior nodes split 1/2-1/2, ends step inward.
MarkovChain line_optimal(int n);
// Interior node i+1 moves right with x_i and left with 1 - x_i; ends step
// inward; no self-loops.
MarkovChain line_param(const LineParams& x);
// Unvalidated matrix for the same structure; x may touch the boundary.
Matrix line_param_matrix(std::span<const double> x);

// Block construction Pi0 (x) (tau/n) 11^T on the complete graph: nodes are cut
// into tau consecutive blocks of size n/tau and block b moves uniformly into
// block cycle[b]. Default cycle is b -> b+1 mod tau. For n == 2 returns the
// uniform chain when tau == 1 and the swap for tau >= 2. Throws
// kApplicability unless tau <= n and tau divides n.
MarkovChain complete_kron(int n, int tau,
                          std::optional<std::vector<int>> cycle = std::nullopt);

// Uniform over all n nodes, and its capture value 1 - (1 - 1/n)^tau.
MarkovChain random_walk(int n);
double random_walk_value(int n, int tau);

// (n^tau - (n-1)^tau) / (tau n^(tau-1)): fraction of the tau/n bound the
// uniform walk attains. Requires n >= 3 and 1 <= tau <= n - 1.
double suboptimality_factor(int n, int tau);

}  // namespace patrol
