#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "patrol/graph.hpp"

namespace patrol {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Stationary distribution, stored as a column vector.
using Distribution = Eigen::VectorXd;

inline constexpr double kDefaultRowTolerance = 1e-9;

// Row-stochastic transition matrix whose support lies inside the edge set of
// its graph. Only constructible through validation.
class MarkovChain {
 public:
  // Validates and returns a chain. Rows whose sums are within `tol` of one are
  // rescaled to sum to one. Throws kInvalidDimension, kDomain (negative or
  // non-finite entry), ConformanceError, or kStochasticity.
  static MarkovChain from_matrix(DiGraph g, Matrix rows,
                                 double tol = kDefaultRowTolerance);

  const DiGraph& graph() const noexcept { return graph_; }
  const Matrix& matrix() const noexcept { return p_; }
  int size() const noexcept { return graph_.size(); }
  double operator()(int from, int to) const { return p_(from, to); }

 private:
  MarkovChain(DiGraph g, Matrix p) : graph_(std::move(g)), p_(std::move(p)) {}

  DiGraph graph_;
  Matrix p_;
};

// Graph with an edge wherever the matrix is positive.
DiGraph support_graph(const Matrix& p);

bool is_irreducible(const MarkovChain& chain);

// Solves pi^T P = pi^T, pi^T 1 = 1 directly (one balance equation replaced by
// normalization), so periodic chains are fine. Throws kIrreducible.
Distribution stationary_distribution(const MarkovChain& chain);

// Each row drawn uniformly from the simplex over that node's out-neighbors.
// Deterministic in (g, seed). Throws kDanglingNode.
MarkovChain random_chain(const DiGraph& g, std::uint64_t seed);

// Uniform over out-neighbors.
MarkovChain uniform_chain(const DiGraph& g);

// Seed for the index-th independent sample under a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return master ^ index;
}

}  // namespace patrol
