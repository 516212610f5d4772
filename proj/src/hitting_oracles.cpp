// Reference computations for hitting probabilities that do not touch the
// matrix recursion: explicit trajectory enumeration and simulation.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "patrol/error.hpp"
#include "patrol/hitting.hpp"
#include "parallel.hpp"

namespace patrol {

namespace {

constexpr double kUnderflowFloor = 1e-300;

struct Enumerator {
  const Matrix& p;
  int target;
  int tau;
  double total = 0.0;

  // Walker sits at `node` after `steps` steps with probability `mass` and has
  // not yet visited the target.
  void extend(int node, int steps, double mass) {
    for (int next = 0; next < p.cols(); ++next) {
      const double q = p(node, next);
      if (q <= 0.0) continue;
      const double path = mass * q;
      if (path < kUnderflowFloor) continue;
      if (next == target) {
        total += path;
      } else if (steps + 1 < tau) {
        extend(next, steps + 1, path);
      }
    }
  }
};

void check_node(int node, int n) {
  if (node < 0 || node >= n) {
    throw Error(ErrorKind::kDomain, "node " + std::to_string(node + 1) +
                                        " outside 1.." + std::to_string(n));
  }
}

}  // namespace

double enumerate_hitting(const MarkovChain& chain, int from, int to, int tau) {
  const int n = chain.size();
  check_node(from, n);
  check_node(to, n);
  if (tau < 1) throw Error(ErrorKind::kDomain, "attack duration must be >= 1");
  if (tau * std::log(static_cast<double>(n)) > std::log(kEnumerationLimit)) {
    throw Error(ErrorKind::kSize, "n^tau = " + std::to_string(n) + "^" +
                                      std::to_string(tau) +
                                      " trajectories exceeds the enumeration limit");
  }
  Enumerator walk{chain.matrix(), to, tau};
  walk.extend(from, 0, 1.0);
  return walk.total;
}

HitEstimate simulate_hitting(const MarkovChain& chain, int from, int to,
                             int tau, std::uint64_t samples, std::uint64_t seed,
                             int threads) {
  const int n = chain.size();
  check_node(from, n);
  check_node(to, n);
  if (tau < 1) throw Error(ErrorKind::kDomain, "attack duration must be >= 1");
  if (samples < 1) throw Error(ErrorKind::kDomain, "need at least one sample");

  // Cumulative rows for inverse-transform sampling.
  std::vector<std::vector<double>> cumulative(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += chain(i, j);
      cumulative[i][j] = acc;
    }
  }
  const auto sample_next = [&](int node, double u) {
    const auto& row = cumulative[node];
    const double scaled = u * row.back();
    for (int j = 0; j < n; ++j) {
      if (scaled < row[j] && chain(node, j) > 0.0) return j;
    }
    // u * total landed on the final boundary; take the last positive entry.
    for (int j = n - 1; j >= 0; --j) {
      if (chain(node, j) > 0.0) return j;
    }
    return node;
  };

  const std::uint64_t blocks = (samples + kSimulationBlock - 1) / kSimulationBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  detail::parallel_for(blocks, threads, [&](std::size_t b) {
    std::mt19937_64 rng(derive_seed(seed, b));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const std::uint64_t begin = b * kSimulationBlock;
    const std::uint64_t end = std::min(samples, begin + kSimulationBlock);
    std::uint64_t count = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      int node = from;
      for (int step = 1; step <= tau; ++step) {
        node = sample_next(node, uniform(rng));
        if (node == to) {
          ++count;
          break;
        }
      }
    }
    hits[b] = count;
  });

  HitEstimate result;
  result.samples = samples;
  for (std::uint64_t h : hits) result.hits += h;
  result.estimate = static_cast<double>(result.hits) / static_cast<double>(samples);
  result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) /
                               static_cast<double>(samples));
  return result;
}

}  // namespace patrol
