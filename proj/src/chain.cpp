#include "patrol/chain.hpp"

#include <cmath>
#include <random>
#include <string>

#include "patrol/error.hpp"

namespace patrol {

MarkovChain MarkovChain::from_matrix(DiGraph g, Matrix rows, double tol) {
  const int n = g.size();
  if (rows.rows() != n || rows.cols() != n) {
    throw Error(ErrorKind::kInvalidDimension,
                "matrix is " + std::to_string(rows.rows()) + "x" +
                    std::to_string(rows.cols()) + ", graph has " +
                    std::to_string(n) + " nodes");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = rows(i, j);
      if (!std::isfinite(p) || p < 0.0) {
        throw Error(ErrorKind::kDomain,
                    "entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") is not a probability");
      }
      if (p > 0.0 && !g.has_edge(i, j)) throw ConformanceError(i + 1, j + 1);
    }
  }
  for (int i = 0; i < n; ++i) {
    const double sum = rows.row(i).sum();
    if (std::abs(sum - 1.0) > tol) {
      throw Error(ErrorKind::kStochasticity,
                  "row " + std::to_string(i + 1) + " sums to " +
                      std::to_string(sum));
    }
    rows.row(i) /= sum;
  }
  return MarkovChain(std::move(g), std::move(rows));
}

DiGraph support_graph(const Matrix& p) {
  std::vector<Edge> edges;
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      if (p(i, j) > 0.0) edges.push_back({i, j});
    }
  }
  return DiGraph(static_cast<int>(p.rows()), std::move(edges));
}

bool is_irreducible(const MarkovChain& chain) {
  return is_strongly_connected(support_graph(chain.matrix()));
}

Distribution stationary_distribution(const MarkovChain& chain) {
  if (!is_irreducible(chain)) {
    throw Error(ErrorKind::kIrreducible,
                "stationary distribution requires an irreducible chain");
  }
  const int n = chain.size();
  Matrix system = chain.matrix().transpose() - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Distribution pi = system.fullPivLu().solve(rhs);
  // Round-off can leave entries at -1e-17.
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  return pi;
}

MarkovChain random_chain(const DiGraph& g, std::uint64_t seed) {
  const int n = g.size();
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto targets = g.out_neighbors(i);
    if (targets.empty()) {
      throw Error(ErrorKind::kDanglingNode,
                  "node " + std::to_string(i + 1) + " has no out-edge");
    }
    // Normalized unit-rate exponentials are Dirichlet(1, ..., 1).
    double sum = 0.0;
    do {
      sum = 0.0;
      for (int j : targets) {
        p(i, j) = exponential(rng);
        sum += p(i, j);
      }
    } while (sum <= 0.0);
    for (int j : targets) p(i, j) /= sum;
  }
  return MarkovChain::from_matrix(g, std::move(p));
}

MarkovChain uniform_chain(const DiGraph& g) {
  const int n = g.size();
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto targets = g.out_neighbors(i);
    if (targets.empty()) {
      throw Error(ErrorKind::kDanglingNode,
                  "node " + std::to_string(i + 1) + " has no out-edge");
    }
    for (int j : targets) p(i, j) = 1.0 / static_cast<double>(targets.size());
  }
  return MarkovChain::from_matrix(g, std::move(p));
}

}  // namespace patrol
