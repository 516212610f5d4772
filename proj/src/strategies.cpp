#include "patrol/strategies.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "patrol/error.hpp"

namespace patrol {

namespace {

void require_nodes(int n, int min, const char* what) {
  if (n < min) {
    throw Error(ErrorKind::kInvalidDimension,
                std::string(what) + " needs n >= " + std::to_string(min) +
                    ", got " + std::to_string(n));
  }
}

}  // namespace

LineParams::LineParams(std::vector<double> x) : x_(std::move(x)) {
  if (x_.empty()) {
    throw Error(ErrorKind::kInvalidDimension, "line parameters need n >= 3");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] > 0.0 && x_[i] < 1.0)) {
      throw Error(ErrorKind::kDomain, "x_" + std::to_string(i + 1) + " = " +
                                          std::to_string(x_[i]) +
                                          " not in (0,1)");
    }
  }
}

LineParams LineParams::reflected() const {
  std::vector<double> flipped(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) flipped[i] = 1.0 - x_[i];
  return LineParams(std::move(flipped));
}

MarkovChain star_optimal(int n) {
  require_nodes(n, 3, "star");
  Matrix p = Matrix::Zero(n, n);
  for (int leaf = 1; leaf < n; ++leaf) {
    p(0, leaf) = 1.0 / (n - 1);
    p(leaf, 0) = 1.0;
  }
  return MarkovChain::from_matrix(build_star(n), std::move(p));
}

double star_value(int n, int tau) {
  require_nodes(n, 3, "star");
  if (tau < 2) {
    throw Error(ErrorKind::kDomain, "star value is defined for tau >= 2");
  }
  const int rounds = (tau % 2 == 1) ? (tau - 1) / 2 : tau / 2;
  return 1.0 - std::pow(1.0 - 1.0 / (n - 1), rounds);
}

Matrix line_param_matrix(std::span<const double> x) {
  const int n = static_cast<int>(x.size()) + 2;
  Matrix p = Matrix::Zero(n, n);
  p(0, 1) = 1.0;
  p(n - 1, n - 2) = 1.0;
  for (int i = 1; i + 1 < n; ++i) {
    p(i, i - 1) = 1.0 - x[i - 1];
    p(i, i + 1) = x[i - 1];
  }
  return p;
}

MarkovChain line_param(const LineParams& x) {
  return MarkovChain::from_matrix(build_line(x.nodes()), line_param_matrix(x.values()));
}

MarkovChain line_optimal(int n) {
  require_nodes(n, 3, "line");
  return line_param(LineParams(std::vector<double>(n - 2, 0.5)));
}

MarkovChain complete_kron(int n, int tau, std::optional<std::vector<int>> cycle) {
  require_nodes(n, 2, "complete graph");
  if (tau < 1) throw Error(ErrorKind::kDomain, "attack duration must be >= 1");
  if (n == 2 && tau >= 2) {
    Matrix swap{{0.0, 1.0}, {1.0, 0.0}};
    return MarkovChain::from_matrix(build_complete(2), std::move(swap));
  }
  if (tau > n || n % tau != 0) {
    throw Error(ErrorKind::kApplicability,
                "block construction needs tau <= n and tau | n (n=" +
                    std::to_string(n) + ", tau=" + std::to_string(tau) +
                    "); use the solver");
  }
  std::vector<int> next(tau);
  if (cycle) {
    next = *cycle;
    if (static_cast<int>(next.size()) != tau) {
      throw Error(ErrorKind::kInvalidDimension, "cycle must have tau entries");
    }
    // Must be a single tau-cycle: following it from block 0 visits all blocks.
    std::vector<bool> seen(tau, false);
    int b = 0;
    for (int step = 0; step < tau; ++step) {
      if (next[b] < 0 || next[b] >= tau || seen[b]) {
        throw Error(ErrorKind::kDomain, "cycle is not an irreducible permutation");
      }
      seen[b] = true;
      b = next[b];
    }
    if (b != 0) throw Error(ErrorKind::kDomain, "cycle is not an irreducible permutation");
  } else {
    for (int b = 0; b < tau; ++b) next[b] = (b + 1) % tau;
  }
  const int block = n / tau;
  Matrix p = Matrix::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    const int target = next[u / block];
    for (int v = target * block; v < (target + 1) * block; ++v) {
      p(u, v) = 1.0 / block;
    }
  }
  return MarkovChain::from_matrix(build_complete(n), std::move(p));
}

MarkovChain random_walk(int n) {
  require_nodes(n, 2, "random walk");
  return MarkovChain::from_matrix(build_complete(n),
                                  Matrix::Constant(n, n, 1.0 / n));
}

double random_walk_value(int n, int tau) {
  require_nodes(n, 2, "random walk");
  if (tau < 1) throw Error(ErrorKind::kDomain, "attack duration must be >= 1");
  return 1.0 - std::pow(1.0 - 1.0 / n, tau);
}

double suboptimality_factor(int n, int tau) {
  if (n < 3 || tau < 1 || tau > n - 1) {
    throw Error(ErrorKind::kDomain, "suboptimality factor needs n >= 3 and 1 <= tau <= n-1");
  }
  // Divide through by n^tau to stay in range for large n:
  // f = n (1 - (1 - 1/n)^tau) / tau.
  return static_cast<double>(n) * -std::expm1(tau * std::log1p(-1.0 / n)) / tau;
}

}  // namespace patrol
